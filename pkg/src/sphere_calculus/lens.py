"""Flat-connection combinatorics of the lens spaces L(p, 1).

Conjugacy classes of flat U(2) connections are labelled by an integer
m with 0 <= m <= p, taken modulo sign in Z_2p; which labels occur
depends on the parity of the determinant line.  A class is central --
its SO(3) image is trivial -- exactly for m = 0 or m = p, and those
classes carry isotropy summand s = 3 while the others have s = 1.

Relative charges k live in Z[1/p], and the moduli dimensions are the
exact rational formulas

    dim_cylinder(k, m -> m') = 8k + 2(m' - m) - 2((m')^2 - m^2)/p - s(m)
    dim_end(k, m)            = 8k - 3 + 2m - 2 m^2/p.

The minimal energy of a cylinder from m to m' is ((m')^2 - m^2)/(4p)
when m' > m and picks up an extra (m - m')/2 when m' < m; with this
normalization the minimal cylinder dimension is 2(m' - m) - s(m)
identically.  The poset J_n collects the charges whose end dimension
lands in (0, 2n], with an edge for every minimal-energy jump |dm| = 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import rat, rat_to_str


class PosetError(AssertionError):
    """A structural invariant of a charge poset failed to hold."""


def is_central(p: int, m: int) -> bool:
    """True for the two classes whose SO(3) holonomy is trivial."""
    return m == 0 or m == p


def isotropy(p: int, m: int) -> int:
    """Dimension summand s(m): 3 for the central classes, else 1."""
    return 3 if is_central(p, m) else 1


@dataclass(frozen=True)
class FlatClass:
    m: int
    trivial: bool
    s: int

    def __post_init__(self):
        if self.s != (3 if self.trivial else 1):
            raise ValueError("isotropy summand inconsistent with centrality")


def character_variety(p: int, parity: int):
    """Flat classes of L(p,1) for the given determinant parity.

    Even parity lists the even labels 0, 2, ..., odd parity the odd
    ones; the upper end depends on the parity of p.
    """
    if p < 1:
        raise ValueError("p must be positive")
    parity = int(parity) & 1
    labels = [m for m in range(parity, p + 1) if (m - parity) % 2 == 0]
    return [FlatClass(m, is_central(p, m), isotropy(p, m)) for m in labels]


def dim_cylinder(p: int, k, m: int, m_prime: int):
    """Expected dimension of the charge-k cylinder moduli from m to m'."""
    k = rat(k)
    return (
        8 * k
        + 2 * (m_prime - m)
        - rat(2 * (m_prime * m_prime - m * m), p)
        - isotropy(p, m)
    )


def dim_end(p: int, k, m: int):
    """Expected dimension of the charge-k end moduli limiting to m."""
    k = rat(k)
    return 8 * k - 3 + 2 * m - rat(2 * m * m, p)


def minimal_energy(p: int, m: int, m_prime: int):
    """Least action of a cylinder between the classes m and m'."""
    energy = rat(m_prime * m_prime - m * m, 4 * p)
    if m_prime < m:
        energy += rat(m - m_prime, 2)
    if m_prime > m:
        want = 2 * (m_prime - m) - isotropy(p, m)
        if dim_cylinder(p, energy, m, m_prime) != want:
            raise PosetError("minimal cylinder dimension law failed")
    return energy


def admissible_charges(p: int, m: int, cap):
    """Charges k for which the end moduli at m is nonempty, up to cap.

    Charges step by one instanton from the least k in Z[1/p] that is
    at least the flat action m^2/(4p) and makes dim_end an integer.
    The m = 0 end limits to the trivial connection, so its relative
    charge is a positive integer.
    """
    cap = rat(cap)
    if m == 0:
        k_min = rat(1)
    else:
        i = 0
        while True:
            k = rat(i, p)
            if 4 * p * k >= m * m and dim_end(p, k, m).denominator == 1:
                k_min = k
                break
            i += 1
    out = []
    k = k_min
    while k <= cap:
        out.append(k)
        k += 1
    return out


@dataclass(frozen=True)
class PosetJ:
    n: int
    p: int
    parity: int
    vertices: tuple  # of (m, k)
    edges: tuple  # of ((m, k), (m', k'), energy)


def build_poset(p: int, parity: int, n: int) -> PosetJ:
    """Charges with end dimension in (0, 2n], with minimal-energy edges."""
    chi = character_variety(p, parity)
    vertices = []
    for cls in chi:
        # dim_end grows by 8 per unit charge, so 2n bounds the search.
        cap = rat(2 * n + 3 + 2 * cls.m * cls.m, 8)
        for k in admissible_charges(p, cls.m, cap):
            dim = dim_end(p, k, cls.m) + cls.s
            if 0 < dim <= 2 * n:
                vertices.append((cls.m, k))
    vset = set(vertices)
    edges = []
    for m, k in vertices:
        for m2 in (m - 2, m + 2):
            if not any(c.m == m2 for c in chi):
                continue
            k2 = k + minimal_energy(p, m, m2)
            if (m2, k2) in vset:
                edges.append(((m, k), (m2, k2), k2 - k))
    vertices.sort()
    edges.sort()
    j = PosetJ(n=n, p=p, parity=int(parity) & 1,
               vertices=tuple(vertices), edges=tuple(edges))
    verify_poset(j)
    return j


def verify_poset(j: PosetJ):
    """Check dimension and energy invariants; raises PosetError."""
    for m, k in j.vertices:
        dim = dim_end(j.p, k, m) + isotropy(j.p, m)
        if dim.denominator != 1:
            raise PosetError("vertex dimension %s is not an integer" % dim)
        if not 0 < dim <= 2 * j.n:
            raise PosetError("vertex dimension %s outside (0, 2n]" % dim)
    for (m1, k1), (m2, k2), energy in j.edges:
        if abs(m1 - m2) != 2:
            raise PosetError("edge changes m by %d" % (m2 - m1))
        if energy != minimal_energy(j.p, m1, m2) or energy != k2 - k1:
            raise PosetError("edge energy is not the minimal energy")
    # Edge energies equal charge differences, so path sums telescope;
    # confirm path independence over all vertex pairs regardless.
    sums = {}
    adjacency = {}
    for a, b, energy in j.edges:
        adjacency.setdefault(a, []).append((b, energy))
    for start in j.vertices:
        seen = {start: rat(0)}
        stack = [start]
        while stack:
            v = stack.pop()
            for w, energy in adjacency.get(v, ()):
                total = seen[v] + energy
                if w in seen:
                    if seen[w] != total:
                        raise PosetError("path-dependent energy to %r" % (w,))
                else:
                    seen[w] = total
                    stack.append(w)
        sums[start] = seen
    return True


def _vertex_name(m, k):
    k = rat(k)
    return "m%d_k%d_%d" % (m, k.numerator, k.denominator)


def render_poset(j: PosetJ, format: str = "dot") -> str:
    """Deterministic DOT or ASCII rendering, rows by m, columns by k."""
    if format == "dot":
        lines = ["digraph J%d {" % j.n, "  rankdir=LR;"]
        for m, k in j.vertices:
            shape = "doublecircle" if is_central(j.p, m) else "circle"
            lines.append(
                '  %s [label="m=%d k=%s", shape=%s];'
                % (_vertex_name(m, k), m, rat_to_str(k), shape)
            )
        for (m1, k1), (m2, k2), energy in j.edges:
            lines.append(
                '  %s -> %s [label="%s"];'
                % (_vertex_name(m1, k1), _vertex_name(m2, k2),
                   rat_to_str(energy))
            )
        lines.append("}")
        return "\n".join(lines) + "\n"
    if format == "ascii":
        lines = ["J_%d  p=%d  parity=%s" % (j.n, j.p,
                                            "odd" if j.parity else "even")]
        by_m = {}
        for m, k in j.vertices:
            by_m.setdefault(m, []).append(k)
        for m in sorted(by_m, reverse=True):
            mark = "*" if is_central(j.p, m) else " "
            ks = ", ".join(rat_to_str(k) for k in sorted(by_m[m]))
            lines.append("m=%d%s | %s" % (m, mark, ks))
        lines.append("edges:")
        for (m1, k1), (m2, k2), energy in j.edges:
            lines.append(
                "  (%d, %s) -> (%d, %s)  energy %s"
                % (m1, rat_to_str(k1), m2, rat_to_str(k2),
                   rat_to_str(energy))
            )
        return "\n".join(lines) + "\n"
    raise ValueError("unknown poset format %r" % format)
