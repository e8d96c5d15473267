"""Structure equations for embedded spheres.

For a sphere of self-intersection -n the model sets sigma = e_1+...+e_n
and solves the triangular moment systems produced by admissible twists
(and, for the odd/even side opposite to the twist parity, by the
(e_i - e_j) insertion).  The solved coefficient series are then fitted
to the S/B/Delta monomial basis, giving relations in the style of the
explicit low-n formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .elliptic import blowup_functions
from .model import (
    moments,
    sigma_power_insertion_value,
    sigma_power_value,
    smb_insertion_series,
    smb_series,
)
from .rings import P_ONE, P_ZERO, PolyX, SeriesT, factorial, rat


class FitError(ValueError):
    """A series failed to lie in the span of the requested basis."""


class DerivationError(AssertionError):
    """The moment system contradicted the expected structure."""


@dataclass(frozen=True)
class EmbeddedRelation:
    """exp(t sigma) modulo the kernel, as basis-monomial data.

    Each term is (sigma_power, coeff, (s_exp, b_exp, delta_exp)) and the
    relation reads  exp(t sigma) == sum coeff * sigma^p * S^s B^b Delta^d.
    cosh_terms carry the even sigma powers, sinh_terms the odd ones.
    """

    n: int
    epsilon: int
    order: int
    cosh_terms: tuple
    sinh_terms: tuple

    def terms(self):
        return self.cosh_terms + self.sinh_terms

    def coefficient(self, sigma_power: int, monomial) -> PolyX:
        for p, c, mono in self.terms():
            if p == sigma_power and mono == monomial:
                return c
        return P_ZERO


def basis_monomials(n: int, epsilon: int, parity: int):
    """Case-table monomials (s_exp, b_exp, delta_exp), by leading order."""
    out = []
    if epsilon == 0 and parity == 0:
        i = 0
        while n - 2 * i >= 0:
            out.append((2 * i, n - 2 * i, 0))
            i += 1
    elif epsilon == 0 and parity == 1:
        i = 0
        while n - 2 * i - 3 >= 0:
            out.append((2 * i + 1, n - 2 * i - 3, 1))
            i += 1
    elif epsilon == 1 and parity == 0:
        i = 0
        while n - 2 * i - 2 >= 0:
            out.append((2 * i, n - 2 * i - 2, 1))
            i += 1
    else:
        i = 0
        while n - 2 * i - 1 >= 0:
            out.append((2 * i + 1, n - 2 * i - 1, 0))
            i += 1
    return out


@lru_cache(maxsize=None)
def basis_series(n: int, epsilon: int, parity: int, order: int):
    bf = blowup_functions(order + 1)
    out = []
    for s_exp, b_exp, d_exp in basis_monomials(n, epsilon, parity):
        f = bf.S**s_exp * bf.B**b_exp
        if d_exp:
            f = f * bf.Delta**d_exp
        out.append(((s_exp, b_exp, d_exp), f.truncate(order)))
    return tuple(out)


def sigma_powers(n: int, epsilon: int, parity: int):
    """Sigma powers present on one side, honoring the omitted hat terms."""
    if parity == 0:
        top = n - 2 if epsilon == 1 else 2 * (n // 2)
        if epsilon == 1 and n % 2 == 1:
            top = n - 3
        return list(range(0, top + 1, 2))
    if epsilon == 1:
        top = n - 1 if n % 2 == 0 else n
    else:
        top = n - 3 if n % 2 == 0 else n - 2
    return list(range(1, top + 1, 2))


def moment_matrix(n: int, epsilon: int, parity: str, order: int):
    """Taylor-moment matrix of the case-table basis functions.

    Entry (i, r) is (2r)! [t^(2r)] f_i for even parity, and the odd
    analogue otherwise.  Rows are basis functions; the matrix is upper
    triangular and, after dividing column r by its factorial, has
    determinant one.
    """
    par = 0 if parity == "even" else 1
    basis = basis_series(n, epsilon, par, order)
    size = len(basis)
    rows = []
    for _, f in basis:
        row = []
        for r in range(size):
            j = 2 * r + par
            row.append(f[j] * factorial(j))
        rows.append(row)
    return rows


def _solve_side(n: int, epsilon: int, parity: int, order: int):
    """Solve the moment system for the coefficient series C_p on one side.

    Returns a dict p -> SeriesT.  Uses plain twist equations when the
    side parity matches epsilon, and (e_i - e_j) insertion equations
    otherwise.
    """
    powers = sigma_powers(n, epsilon, parity)
    if not powers:
        return {}
    use_insertion = (parity % 2) != (epsilon % 2)
    solved = {}
    # Back-substitute from the highest twist count down: the equation
    # with m twisted classes only sees sigma powers p >= m (p >= m - 1
    # for insertions), by the t^n + O(t^(n+2)) order bound.
    for idx in range(len(powers) - 1, -1, -1):
        p_diag = powers[idx]
        m = p_diag + 1 if use_insertion else p_diag
        if use_insertion:
            lhs = smb_insertion_series(n, m, order)
            value = lambda p: sigma_power_insertion_value(n, m, p, order)
        else:
            lhs = smb_series(n, m, order)
            value = lambda p: sigma_power_value(n, m, p, order)
        rhs = lhs
        for p_above in powers[idx + 1 :]:
            rhs = rhs - solved[p_above] * value(p_above)
        diag = value(p_diag)
        if not diag.is_unit():
            raise DerivationError("moment system diagonal is not a unit")
        solved[p_diag] = rhs * (P_ONE / diag.constant())
    return solved


def fit_to_basis(f: SeriesT, basis):
    """Express f in a triangular basis of series; exact, no remainder.

    basis is a sequence of SeriesT with strictly increasing leading
    orders and unit leading coefficients.  Returns one PolyX per basis
    element; raises FitError when f is outside the span.
    """
    remainder = f
    coeffs = []
    for g in basis:
        v = g.valuation()
        if v < 0 or g[v] != P_ONE:
            raise FitError("basis element lacks a unit leading coefficient")
        c = remainder[v] if v < remainder.order else P_ZERO
        coeffs.append(c)
        if c:
            remainder = remainder - g * c
    for k, c in enumerate(remainder.coeffs):
        if c:
            raise FitError(
                "outside basis span: residual %r at t^%d" % (c, k)
            )
    return coeffs


@lru_cache(maxsize=None)
def derive_embedded(n: int, epsilon: int, order: int = None) -> EmbeddedRelation:
    """Derive the structure equation for an embedded sphere of square -n."""
    if n < 1:
        raise ValueError("n must be positive")
    epsilon &= 1
    if order is None:
        order = 2 * n + 8
    terms = {0: [], 1: []}
    for parity in (0, 1):
        solved = _solve_side(n, epsilon, parity, order)
        basis = basis_series(n, epsilon, parity, order)
        for p in sorted(solved):
            coeffs = fit_to_basis(solved[p], [f for _, f in basis])
            for (mono, _), c in zip(basis, coeffs):
                if c:
                    terms[parity].append((p, c, mono))
    return EmbeddedRelation(
        n=n,
        epsilon=epsilon,
        order=order,
        cosh_terms=tuple(terms[0]),
        sinh_terms=tuple(terms[1]),
    )


def relation_coefficient_series(rel: EmbeddedRelation, order: int):
    """The C_p(t, x) series of the relation, reconstructed from the fit."""
    out = {}
    for parity in (0, 1):
        basis = dict(basis_series(rel.n, rel.epsilon, parity, order))
        source = rel.cosh_terms if parity == 0 else rel.sinh_terms
        for p, c, mono in source:
            out[p] = out.get(p, SeriesT.zero(order)) + basis[mono] * c
    return out


def verify_embedded_relation(rel: EmbeddedRelation, order: int = None):
    """Check the relation against the blowup model for every admissible
    twist count, with and without the (e_i - e_j) insertion.

    Returns a list of (description, bool); raises nothing.
    """
    if order is None:
        order = rel.order
    n, eps = rel.n, rel.epsilon
    cps = relation_coefficient_series(rel, order)
    checks = []
    for m in range(eps, n + 1, 2):
        lhs = smb_series(n, m, order)
        rhs = SeriesT.zero(order)
        for p, series in cps.items():
            v = sigma_power_value(n, m, p, order)
            if v:
                rhs = rhs + series * v
        checks.append(("twists=%d" % m, (lhs - rhs).is_zero()))
        if 1 <= m <= n - 1:
            lhs_i = smb_insertion_series(n, m, order)
            rhs_i = SeriesT.zero(order)
            for p, series in cps.items():
                v = sigma_power_insertion_value(n, m, p, order)
                if v:
                    rhs_i = rhs_i + series * v
            checks.append(("twists=%d+insertion" % m, (lhs_i - rhs_i).is_zero()))
    return checks


def specialize_two_e(rel: EmbeddedRelation, twisted: bool, order: int):
    """Evaluate the relation at sigma = 2e on a single blowup.

    Every sigma^p becomes 2^p times the p-th B- or S-moment; the result
    should match B(2t) (untwisted e) or S(2t) (twisted e)."""
    kind = "S" if twisted else "B"
    cps = relation_coefficient_series(rel, order)
    total = SeriesT.zero(order)
    for p, series in cps.items():
        total = total + series * (rat(2) ** p * moments(kind, p))
    return total


_COR24 = {
    # (n, epsilon) -> {(sigma_power, (s,b,d)): coefficient}
    (2, 0): {
        (0, (0, 2, 0)): P_ONE,
        (2, (2, 0, 0)): PolyX.const(rat(1, 2)),
    },
    (2, 1): {
        (0, (0, 0, 1)): P_ONE,
        (1, (1, 1, 0)): P_ONE,
    },
    (3, 0): {
        (0, (0, 3, 0)): P_ONE,
        (1, (1, 0, 1)): P_ONE,
        (2, (2, 1, 0)): PolyX.const(rat(1, 2)),
    },
    (3, 1): {
        (0, (0, 1, 1)): P_ONE,
        (1, (1, 2, 0)): P_ONE,
        (1, (3, 0, 0)): PolyX.x() * rat(1, 6),
        (3, (3, 0, 0)): PolyX.const(rat(1, 6)),
    },
    (4, 0): {
        (0, (0, 4, 0)): P_ONE,
        (0, (4, 0, 0)): PolyX.const(rat(1, 3)),
        (1, (1, 1, 1)): P_ONE,
        (2, (2, 2, 0)): PolyX.const(rat(1, 2)),
        (2, (4, 0, 0)): PolyX.x() * rat(1, 6),
        (4, (4, 0, 0)): PolyX.const(rat(1, 24)),
    },
    (4, 1): {
        (0, (0, 2, 1)): P_ONE,
        (0, (2, 0, 1)): PolyX.x() * rat(1, 2),
        (1, (1, 3, 0)): P_ONE,
        (1, (3, 1, 0)): PolyX.x() * rat(1, 6),
        (2, (2, 0, 1)): PolyX.const(rat(1, 2)),
        (3, (3, 1, 0)): PolyX.const(rat(1, 6)),
    },
}


def corollary_24_table():
    """The printed low-n formulas, keyed by (n, epsilon)."""
    return _COR24


def verify_corollary_24(order: int = None) -> dict:
    """Re-derive n = 2, 3, 4 for both parities and compare term by term
    with the printed formulas; also re-check the double angle formulas by
    specializing the -4 sphere relation to sigma = 2e."""
    report = {}
    for (n, eps), table in _COR24.items():
        o = order or (2 * n + 8)
        rel = derive_embedded(n, eps, o)
        derived = {(p, mono): c for p, c, mono in rel.terms()}
        mismatches = []
        for key in set(table) | set(derived):
            want = table.get(key, P_ZERO)
            got = derived.get(key, P_ZERO)
            if want != got:
                mismatches.append((key, want, got))
        report["n=%d eps=%d" % (n, eps)] = mismatches
    o = order or 16
    rel4 = derive_embedded(4, 0, o)
    bf = blowup_functions(o)
    b_double = specialize_two_e(rel4, twisted=False, order=o) - bf.B.rescale(2)
    s_double = specialize_two_e(rel4, twisted=True, order=o) - bf.S.rescale(2)
    report["sigma=2e B(2t)"] = [] if b_double.is_zero() else [("B(2t)",)]
    report["sigma=2e S(2t)"] = [] if s_double.is_zero() else [("S(2t)",)]
    if any(report.values()):
        raise DerivationError("corollary mismatches: %r" % (report,))
    return report
