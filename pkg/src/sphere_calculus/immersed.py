"""Structure equations for immersed spheres in q-normal form.

A sphere with p positive double points, parameter s and square a
satisfies

    (x^2-4)^r cosh(t alpha) == B^(-a) (2-xq)^(-s) sum_i q^i Q' c_i(alpha)

together with a sinh twin carrying Q and d_i, where r, k (the top q
index) and k0 are fixed integer functions of (p, s, a).  The factor
(x^2-4)^r multiplies the cosh/sinh side; the stored coefficients are
the plain c_i, d_i of the right-hand side.

The equations are produced inductively from the embedded base case by
blowing up double points.  Each step transports the input coefficients
through the blowup (shift_reduce), combines the untwisted and twisted
copies of the input equation with fixed q-polynomial multipliers, and
compares the result against the canonical output coefficients.  The
comparison is an evaluation statement, not a polynomial identity: it
holds modulo the relations the structure equations themselves impose on
powers of alpha.  Comparing t-coefficients of a (p, s') equation
rewrites alpha^m, for m above that equation's degree bound, as a
lower-degree polynomial in alpha (after dividing by that equation's
(x^2-4)^r factor).  Every step residual is reduced through these
rewrite rules and must then vanish identically; a nonzero reduced
residual falsifies the step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .elliptic import blowup_functions
from .embedded import DerivationError, derive_embedded
from .model import moments
from .rings import (
    AlphaPoly,
    P_ONE,
    P_ZERO,
    PolyX,
    QPoly,
    factorial,
    rat,
)

X = PolyX.x()
X2M4 = X * X - 4

# The two resultant combinations used by the double-point steps; both
# reduce to the constant x^2 - 4.
BEZOUT_STEP2 = (
    QPoly((P_ONE, P_ZERO, -P_ONE)),                      # 1 - q^2
    QPoly((P_ONE, -X, P_ONE)),                           # 1 - xq + q^2
    QPoly((X * X - 2, -X)),                              # -2 - qx + x^2
    QPoly((PolyX.const(-2), -X)),                        # -2 - qx
)
BEZOUT_STEP3 = (
    QPoly((P_ONE, P_ZERO, -P_ONE)) ** 2,                 # (1 - q^2)^2
    QPoly((P_ONE, -X, P_ONE)),                           # 1 - xq + q^2
    QPoly((X * X - 1, -X)),                              # x^2 - 1 - qx
    QPoly((PolyX.const(-3), -2 * X, P_ONE, X)),          # -3 - 2qx + q^2 + q^3 x
)

ONE_MINUS_Q2 = QPoly((P_ONE, P_ZERO, -P_ONE))
TWO_MINUS_XQ = QPoly((PolyX.const(2), -X))


def r_index(p: int, s: int) -> int:
    return (p + 1 - s) // 2


def k_index(a: int, s: int) -> int:
    return s - ((a + 1) // 2) - 1


def k0_index(a: int, s: int) -> int:
    k = k_index(a, s)
    return k if a % 2 == 0 else k + 1


@dataclass(frozen=True)
class NormalForm:
    """One (p, s) structure equation pair in q-normal form."""

    p: int
    s: int
    a: int
    r: int
    k: int
    k0: int
    c: tuple  # AlphaPoly per q power, cosh side
    d: tuple  # AlphaPoly per q power, sinh side

    def __post_init__(self):
        validate_normal_form(self)


def validate_normal_form(nf: NormalForm):
    """Index laws and degree/parity bounds; raises on any violation."""
    if not (0 <= nf.s <= nf.p):
        raise DerivationError("s out of range")
    if nf.r != r_index(nf.p, nf.s):
        raise DerivationError("r index law violated")
    if nf.k != k_index(nf.a, nf.s) or nf.k0 != k0_index(nf.a, nf.s):
        raise DerivationError("k/k0 index law violated")
    if len(nf.c) != max(nf.k + 1, 0) or len(nf.d) != max(nf.k0 + 1, 0):
        raise DerivationError("coefficient list length mismatch")
    for i, ci in enumerate(nf.c):
        if ci.degree > 2 * i or not ci.alpha_parity_is(0):
            raise DerivationError("cosh coefficient %d degree/parity" % i)
    for i, di in enumerate(nf.d):
        if di.degree > 2 * i + 1 or not di.alpha_parity_is(1):
            raise DerivationError("sinh coefficient %d degree/parity" % i)


def shift_reduce(poly: AlphaPoly, mode: str) -> AlphaPoly:
    """Substitute alpha -> alpha + 2e and reduce e-powers to moments.

    Mode "B" (untwisted class) keeps the alpha parity; mode "S"
    (twisted) flips it, because only the opposite-parity moments of S
    survive.
    """
    if mode not in ("B", "S"):
        raise ValueError("mode must be 'B' or 'S'")
    out = [P_ZERO] * max(len(poly.coeffs), 1)
    for p, gamma in enumerate(poly.coeffs):
        if not gamma:
            continue
        for j in range(p + 1):
            mom = moments(mode, j)
            if not mom:
                continue
            w = gamma * (rat(math.comb(p, j)) * rat(2) ** j) * mom
            out[p - j] = out[p - j] + w
    return AlphaPoly(out)


def _sr(coeffs, mode, scale=None):
    out = [shift_reduce(c, mode) for c in coeffs]
    if scale is not None:
        out = [c * scale for c in out]
    return out


def _entry(lst, i):
    return lst[i] if 0 <= i < len(lst) else AlphaPoly()


def _qpoly_times_list(f: QPoly, lst):
    """Multiply a q-polynomial with PolyX coefficients into a list of
    AlphaPoly q-coefficients."""
    if not lst:
        return []
    out = [AlphaPoly() for _ in range(len(f.coeffs) + len(lst) - 1)]
    for i, fi in enumerate(f.coeffs):
        if not fi:
            continue
        for j, cj in enumerate(lst):
            out[i + j] = out[i + j] + cj * fi
    return out


def _list_sub(lhs, rhs):
    top = max(len(lhs), len(rhs))
    return [_entry(lhs, i) - _entry(rhs, i) for i in range(top)]


@lru_cache(maxsize=None)
def universal_coefficients(a: int, s: int, side: str):
    """The coefficient polynomials of the (a, s) q-normal form, without
    the (x^2-4)^r factor.

    Comparing t-coefficients of cosh(t alpha), resp. sinh(t alpha),
    with B^(-a) (2-xq)^(-s) sum_i q^i K c_i(alpha) through order 2k
    (resp. 2 k0 + 1) determines every coefficient by a triangular solve
    with unit diagonal.  The result depends only on (a, s)."""
    if side == "cosh":
        kern, top, par = "Qprime", k_index(a, s), 0
    else:
        kern, top, par = "Q", k0_index(a, s), 1
    if top < 0:
        return ()
    order = max(8, 2 * top + par + 2)
    bf = blowup_functions(order)
    bpow = bf.B ** (-a) if a <= 0 else bf.B.inverse() ** a
    base = bpow * (2 - bf.q * X).inverse() ** s * getattr(bf, kern)
    weights = []
    for _ in range(top + 1):
        weights.append(base)
        base = base * bf.q
    out = []
    for j in range(top + 1):
        tp = 2 * j + par
        acc = AlphaPoly.gen(tp) * (rat(1) / factorial(tp))
        for i in range(j):
            acc = acc - out[i] * weights[i][tp]
        out.append(acc * (rat(1) / weights[j][tp].constant()))
    return tuple(out)


@lru_cache(maxsize=None)
def _make_target(p: int, s: int, a: int) -> NormalForm:
    """The canonical (p, s, a) normal form built from the universal
    coefficients; the (x^2-4)^r factor multiplies both sides of the
    equation and is not folded into the coefficients."""
    return NormalForm(
        p=p, s=s, a=a, r=r_index(p, s),
        k=k_index(a, s), k0=k0_index(a, s),
        c=universal_coefficients(a, s, "cosh"),
        d=universal_coefficients(a, s, "sinh"),
    )


def _b_power(bf, e: int):
    return bf.B**e if e >= 0 else bf.B.inverse() ** (-e)


def _side_base(bf, a: int, s: int, side: str):
    bpow = _b_power(bf, -a)
    denom = (2 - bf.q * X).inverse() ** s
    kernel = bf.Qprime if side == "cosh" else bf.Q
    return bpow * denom * kernel


def expansion_coefficient(nf: NormalForm, side: str, tpow: int) -> AlphaPoly:
    """The t^tpow Taylor coefficient, times tpow!, of the q-normal-form
    series B^(-a) (2-xq)^(-s) sum_i q^i K c_i(alpha) with K = Q' on the
    cosh side and K = Q on the sinh side.  Alpha stays symbolic."""
    coeffs = nf.c if side == "cosh" else nf.d
    return _expansion_coefficients(
        nf.a, nf.s, side, tuple(coeffs), tpow + 1
    )[tpow] * factorial(tpow)


@lru_cache(maxsize=None)
def _expansion_coefficients(a, s, side, coeffs, order):
    """Plain Taylor coefficients (per power of t, alpha symbolic) of
    B^(-a)(2-xq)^(-s) K sum_i q^i coeffs[i]."""
    bf = blowup_functions(max(8, order + 4))
    base = _side_base(bf, a, s, side)
    out = [AlphaPoly() for _ in range(order)]
    for ci in coeffs:
        if ci:
            for j in range(order):
                bj = base[j]
                if bj:
                    out[j] = out[j] + ci * bj
        base = base * bf.q
    return tuple(out)


def normal_form_expansion(nf: NormalForm, order: int):
    """Taylor coefficients (per power of t, alpha symbolic) of the full
    right-hand side B^(-a)(2-xq)^(-s) sum_i q^i (Q' c_i + Q d_i)."""
    cosh = _expansion_coefficients(nf.a, nf.s, "cosh", tuple(nf.c), order)
    sinh = _expansion_coefficients(nf.a, nf.s, "sinh", tuple(nf.d), order)
    return [cosh[j] + sinh[j] for j in range(order)]


@lru_cache(maxsize=None)
def _chain_relation(p: int, s: int, a: int, chain, m: int):
    """The alpha-relation obtained from the t^m coefficient of the
    (p, s, a) structure equation, transported through the blowup modes
    in `chain`.

    The t^m coefficient reads (x^2-4)^r (alpha^m - rho) == 0 with
    rho the matching Taylor coefficient of the right-hand side; applying
    shift_reduce along the chain keeps it a relation, now on the class
    of the blown-down sphere.  Returns (r, relation) or None when m is
    within the equation's retained range (no rule available)."""
    eq = _make_target(p, s, a)
    side = "sinh" if m % 2 else "cosh"
    bound = eq.k0 if m % 2 else eq.k
    if m // 2 <= bound:
        return None
    rel = AlphaPoly.gen(m) - expansion_coefficient(eq, side, m)
    for mode in chain:
        rel = shift_reduce(rel, mode)
    return eq.r, rel


class ReductionContext:
    """Kernel relations from a family of structure equations and,
    optionally, from blown-down input equations, organised as an
    echelon basis indexed by top alpha-degree.

    Each source is a triple (p, a, chain): the (p, s', a) equations for
    every s', transported through the blowup modes in `chain`.  The t^m
    coefficient of such an equation gives the relation
    (x^2-4)^{r(p,s')} (alpha^m - rho) == 0 with rho the matching Taylor
    coefficient of the right-hand side.  Relations sharing a top degree
    are folded together by cross-multiplying their leading coefficients,
    which strictly lowers the degree; reduction against the resulting
    basis decides membership in the span of the relations over rational
    functions of x.  Cross-multiplication only ever scales a residual
    by a nonzero polynomial, so a zero result certifies vanishing.
    """

    def __init__(self, p: int, a: int, extra_sources=()):
        self.sources = [(p, a, ())] + list(extra_sources)
        self._basis = {}
        self._loaded = -1

    def _insert(self, rel: AlphaPoly):
        while rel:
            d = rel.degree
            lead = rel[d]
            if lead.degree == 0:
                rel = rel * (rat(1) / lead.constant())
            piv = self._basis.get(d)
            if piv is None:
                self._basis[d] = rel
                return
            rel = rel * piv[d] - piv * rel[d]

    def _load(self, mmax: int):
        for m in range(self._loaded + 1, mmax + 1):
            for p_src, a_src, chain in self.sources:
                for s in range(p_src, -1, -1):
                    got = _chain_relation(p_src, s, a_src, chain, m)
                    if got is None:
                        continue
                    need, rel = got
                    if need:
                        rel = rel * X2M4**need
                    self._insert(rel)
        self._loaded = max(self._loaded, mmax)

    def reduce(self, poly: AlphaPoly) -> AlphaPoly:
        if poly:
            # A twisted transport lowers the top degree, so relations
            # taken from t^m touch degrees down to m - 2; load a margin.
            self._load(poly.degree + 2)
        while poly:
            piv = self._basis.get(poly.degree)
            if piv is None:
                return poly
            d = poly.degree
            poly = poly * piv[d] - piv * poly[d]
        return poly


def base_case(a: int) -> NormalForm:
    """The embedded structure equation, rewritten through S = QB and
    Delta = Q'B^2 as a q-normal form with p = s = 0."""
    if a > -2:
        raise ValueError("no embedded base case")
    n = -a
    rel = derive_embedded(n, 1, n + 8)
    k, k0 = k_index(a, 0), k0_index(a, 0)
    c = [AlphaPoly() for _ in range(k + 1)]
    d = [AlphaPoly() for _ in range(k0 + 1)]
    for p, coeff, (s_exp, b_exp, d_exp) in rel.cosh_terms:
        # S^(2i) Delta B^(n-2i-2) = q^i Q' B^n
        i = s_exp // 2
        c[i] = c[i] + AlphaPoly.gen(p) * coeff
    for p, coeff, (s_exp, b_exp, d_exp) in rel.sinh_terms:
        # S^(2i+1) B^(n-2i-1) = q^i Q B^n
        i = s_exp // 2
        d[i] = d[i] + AlphaPoly.gen(p) * coeff
    return NormalForm(
        p=0, s=0, a=a, r=0, k=k, k0=k0, c=tuple(c), d=tuple(d)
    )


def _assert_kernel_zero(ctx, a, pieces, order, what):
    """Assert that a combination of q-normal-form sides evaluates to
    zero modulo the rewrite rules of the reduction context.

    `pieces` is a list of (qlist, s_den, side, scale) entries; the
    series sum_pieces scale * B^(-a)(2-xq)^(-s_den) K sum_i q^i
    qlist[i] is expanded in t and every Taylor coefficient must reduce
    to zero."""
    total = [AlphaPoly() for _ in range(order)]
    for qlist, s_den, side, scale in pieces:
        qlist = tuple(qlist)
        if not any(qlist):
            continue
        exp = _expansion_coefficients(a, s_den, side, qlist, order)
        for j in range(order):
            total[j] = total[j] + exp[j] * scale
    for j in range(order):
        res = ctx.reduce(total[j])
        if res:
            raise DerivationError(
                "%s falsified: t^%d residual reduces to %r" % (what, j, res)
            )


def _neg(lst):
    return [-c for c in lst]


def _check_order(nf: NormalForm) -> int:
    return max(12, 2 * max(nf.k, nf.k0, 0) + 10)


def step_raise_s(nf: NormalForm) -> NormalForm:
    """(p-1, s, a-4) implies (p, s+1, a): blow up one double point and
    add the untwisted and twisted equations, whose denominators 1-q^2
    and 1-xq+q^2 sum to 2-xq."""
    p, s, a = nf.p + 1, nf.s + 1, nf.a + 4
    k, k0 = k_index(a, s), k0_index(a, s)
    if nf.k != k + 1 or nf.k0 != k0 + 1:
        raise DerivationError("index bookkeeping failed entering step 1")
    if r_index(p, s) != nf.r:
        raise DerivationError("step 1 must preserve r")
    out = _make_target(p, s, a)
    order = _check_order(nf)

    # cosh: [1-q^2 weight] c~B  +  [1-xq+q^2 weight] d~S/2; the weights
    # sum to the new denominator factor 2-xq.  The retained coefficients
    # must match the canonical output exactly; the excess top
    # coefficients (the analogue of d_{k+2} = 0 and c_{k+1} = -d_{k+1})
    # vanish modulo the rewrite rules, which the residual check covers.
    c_b = _sr(nf.c, "B")
    d_s = _sr(nf.d, "S", rat(1, 2))
    combined = [_entry(c_b, i) + _entry(d_s, i)
                for i in range(max(len(c_b), len(d_s)))]
    for i in range(min(len(combined), k + 1)):
        if combined[i] - out.c[i]:
            raise DerivationError("step 1 cosh coefficient %d mismatch" % i)
    # Both sides times 2-xq live over the denominator (2-xq)^s, so the
    # canonical output enters the residual at exponent s, not s+1.  The
    # whole residual sits under the common factor (x^2-4)^r; the
    # reduction context knows the blown-down input equations as well.
    ctx = ReductionContext(p, a, [(nf.p, nf.a, ("B",)), (nf.p, nf.a, ("S",))])
    scale = X2M4**out.r
    _assert_kernel_zero(
        ctx, a,
        [(combined, s, "cosh", scale), (list(out.c), s, "cosh", -scale)],
        order, "step 1 (cosh)",
    )

    # sinh: [1-q^2 weight] d~B  +  [q weight] c~S/2; combine with the
    # multipliers 2 and 2q - x so the weights sum to 2-xq.
    d_b = _sr(nf.d, "B")
    c_s = _sr(nf.c, "S", rat(1, 2))
    combined_s = [
        2 * _entry(d_b, i) - _entry(c_s, i) * X + 2 * _entry(c_s, i - 1)
        for i in range(max(len(d_b), len(c_s)) + 1)
    ]
    for i in range(min(len(combined_s), k0 + 1)):
        if combined_s[i] - out.d[i]:
            raise DerivationError("step 1 sinh coefficient %d mismatch" % i)
    _assert_kernel_zero(
        ctx, a,
        [(combined_s, s, "sinh", scale), (list(out.d), s, "sinh", -scale)],
        order, "step 1 (sinh)",
    )
    return out


def step_p_odd(nf: NormalForm) -> NormalForm:
    """(p-1, 0, a-4) implies (p, 0, a) for odd p: the Bezout pair for
    1-q^2 and 1-xq+q^2 trades the double-angle denominators for one
    factor of x^2-4."""
    if nf.s != 0:
        raise DerivationError("step 2 requires s = 0 input")
    p, a = nf.p + 1, nf.a + 4
    if p % 2 != 1:
        raise DerivationError("step 2 requires odd target p")
    f, g, phi1, phi2 = BEZOUT_STEP2
    if f * phi1 + g * phi2 != QPoly.const(X2M4):
        raise DerivationError("step 2 resultant identity failed")
    out = _make_target(p, 0, a)
    if out.r != nf.r + 1:
        raise DerivationError("step 2 must increment r")
    order = _check_order(nf)

    # cosh: phi1 * [1-q^2 weight, c~B] + phi2 * [1-xq+q^2 weight, d~S/2]
    c_b = _sr(nf.c, "B")
    d_s = _sr(nf.d, "S", rat(1, 2))
    payload = _list_sub(
        _qpoly_times_list(phi1, c_b), _neg(_qpoly_times_list(phi2, d_s))
    )
    ctx = ReductionContext(p, a, [(nf.p, nf.a, ("B",)), (nf.p, nf.a, ("S",))])
    scale = X2M4**nf.r
    _assert_kernel_zero(
        ctx, a,
        [(payload, 0, "cosh", scale), (list(out.c), 0, "cosh", -scale * X2M4)],
        order, "step 2 (cosh)",
    )

    # sinh: (x^2-4) * [1-q^2 weight, d~B] + q(x^2-4) * [q weight, c~S/2];
    # the weights combine to (1-q^2) + q*q = 1, trading the denominators
    # for one factor of x^2-4.
    d_b = _sr(nf.d, "B")
    c_s = _sr(nf.c, "S", rat(1, 2))
    payload_s = _list_sub(
        [c * X2M4 for c in d_b],
        _neg(_qpoly_times_list(QPoly((P_ZERO, X2M4)), c_s)),
    )
    _assert_kernel_zero(
        ctx, a,
        [(payload_s, 0, "sinh", scale),
         (list(out.d), 0, "sinh", -scale * X2M4)],
        order, "step 2 (sinh)",
    )
    return out


def step_p_even(nf: NormalForm) -> NormalForm:
    """(p-2, 0, a-8) implies (p, 0, a) for even p: blow up two double
    points; the 0- and 2-twist equations combine through the
    degree-four Bezout pair after the free term of the 2-twist payload
    is shifted away."""
    if nf.s != 0:
        raise DerivationError("step 3 requires s = 0 input")
    p, a = nf.p + 2, nf.a + 8
    if p % 2 != 0 or p < 2:
        raise DerivationError("step 3 requires even target p >= 2")
    f, g, phi1, phi2 = BEZOUT_STEP3
    if f * phi1 + g * phi2 != QPoly.const(X2M4):
        raise DerivationError("step 3 resultant identity failed")
    out = _make_target(p, 0, a)
    if out.r != nf.r + 1:
        raise DerivationError("step 3 must increment r")
    order = _check_order(nf)

    # cosh: the twice-untwisted equation carries weight (1-q^2)^2; the
    # twice-twisted one carries q(1-xq+q^2), whose free term must vanish
    # so the index shift d_i = c_{i-1} leaves weight 1-xq+q^2.
    c_bb = _sr(_sr(nf.c, "B"), "B")
    c_ss = _sr(_sr(nf.c, "S"), "S", rat(1, 4))
    if c_ss and c_ss[0]:
        raise DerivationError("step 3 free term c_0 did not vanish")
    shifted = c_ss[1:]
    payload = _list_sub(
        _qpoly_times_list(phi1, c_bb), _neg(_qpoly_times_list(phi2, shifted))
    )
    ctx = ReductionContext(
        p, a,
        [(nf.p, nf.a, ("B", "B")), (nf.p, nf.a, ("B", "S")),
         (nf.p, nf.a, ("S", "S"))],
    )
    scale = X2M4**nf.r
    _assert_kernel_zero(
        ctx, a,
        [(payload, 0, "cosh", scale), (list(out.c), 0, "cosh", -scale * X2M4)],
        order, "step 3 (cosh)",
    )

    # sinh mirror: d~BB with weight (1-q^2)^2 and d~SS/4 with weight
    # q(1-xq+q^2); the free term vanishes just like on the cosh side,
    # and the shifted list combines through the same Bezout pair.
    d_bb = _sr(_sr(nf.d, "B"), "B")
    d_ss = _sr(_sr(nf.d, "S"), "S", rat(1, 4))
    if d_ss and d_ss[0]:
        raise DerivationError("step 3 sinh free term did not vanish")
    payload_s = _list_sub(
        _qpoly_times_list(phi1, d_bb),
        _neg(_qpoly_times_list(phi2, d_ss[1:])),
    )
    _assert_kernel_zero(
        ctx, a,
        [(payload_s, 0, "sinh", scale),
         (list(out.d), 0, "sinh", -scale * X2M4)],
        order, "step 3 (sinh)",
    )
    return out


_MEMO = {}


def derive_immersed(p: int, s: int, a: int) -> NormalForm:
    """Recursion driver for the (p, s) structure equations."""
    key = (p, s, a)
    cached = _MEMO.get(key)
    if cached is not None:
        return cached
    if not (0 <= s <= p):
        raise ValueError("need 0 <= s <= p")
    if a - 4 * p > -2:
        raise ValueError("base case outside embedded range")
    if p == 0:
        nf = base_case(a)
    elif s > 0:
        nf = step_raise_s(derive_immersed(p - 1, s - 1, a - 4))
    elif p % 2 == 1:
        nf = step_p_odd(derive_immersed(p - 1, 0, a - 4))
    else:
        nf = step_p_even(derive_immersed(p - 2, 0, a - 8))
    _MEMO[key] = nf
    return nf


def finite_type_order(p: int, a: int) -> int:
    """The exponent r with D((x^2-4)^r) = 0 for a p-double-point sphere
    of square a >= 0; odd squares reduce to a - 1 by a regular blowup."""
    if a < 0:
        raise ValueError("square must be nonnegative")
    if p < 0:
        raise ValueError("double point count must be nonnegative")
    if a % 2 == 1:
        a -= 1
    return (2 * p + 2 - a) // 4
