"""Blowup power series from Weierstrass data.

Builds the series B, S, Delta, Q, q used by the blowup calculus and
machine-checks the identities they satisfy.  The curve data is

    g2 = 4(x^2/3 - 1),      g3 = (8x^3 - 36x)/27,

the Weierstrass p-function is recovered from its Laurent recurrence, and

    S = exp(-t^2 x/6) * sigma(t),
    B = exp(-t^2 x/6) * sigma3(t),   sigma3 = sigma * sqrt(p - e3),

with e3 = -x/3 the rational root of 4y^3 - g2 y - g3.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .rings import (
    P_ONE,
    P_ZERO,
    PolyX,
    SeriesT,
    rat,
)

G2 = PolyX((rat(-4), rat(0), rat(4, 3)))
G3 = PolyX((rat(0), rat(-36, 27), rat(0), rat(8, 27)))
E3 = PolyX((rat(0), rat(-1, 3)))


class IdentityError(AssertionError):
    """A series identity the calculus relies on failed to hold."""

    def __init__(self, name, degree, coefficient):
        self.name = name
        self.degree = degree
        self.coefficient = coefficient
        super().__init__(
            "identity %r fails first at t^%d with coefficient %r"
            % (name, degree, coefficient)
        )


@dataclass(frozen=True)
class WeierstrassData:
    g2: PolyX
    g3: PolyX
    wp_times_z2: SeriesT


@dataclass(frozen=True)
class BlowupFunctions:
    B: SeriesT
    S: SeriesT
    Delta: SeriesT
    Q: SeriesT
    q: SeriesT
    Qprime: SeriesT
    order: int


def _wp_laurent_coeffs(order: int):
    """Coefficients c_k of p(z) = 1/z^2 + sum_{k>=2} c_k z^{2k-2}."""
    kmax = order // 2 + 2
    c = {2: G2 * rat(1, 20), 3: G3 * rat(1, 28)}
    for k in range(4, kmax + 1):
        acc = P_ZERO
        for m in range(2, k - 1):
            acc = acc + c[m] * c[k - m]
        c[k] = acc * rat(3, (2 * k + 1) * (k - 3))
    return c


def wp_series(order: int) -> WeierstrassData:
    """z^2 * p(z) as a series, verified against the Weierstrass ODE."""
    if order < 8:
        raise ValueError("order must be at least 8")
    c = _wp_laurent_coeffs(order)
    coeffs = [P_ZERO] * order
    coeffs[0] = P_ONE
    for k, ck in c.items():
        if 2 * k < order:
            coeffs[2 * k] = ck
    u = SeriesT(coeffs, order)
    _check_wp_ode(u, order)
    return WeierstrassData(g2=G2, g3=G3, wp_times_z2=u)


def _check_wp_ode(u: SeriesT, order: int):
    # With u = z^2 p, the ODE (p')^2 = 4p^3 - g2 p - g3 times z^6 reads
    # (z u' - 2u)^2 = 4u^3 - g2 u z^4 - g3 z^6.
    zu_prime = u.derivative().shift(1).truncate(order - 1)
    lhs = (zu_prime - 2 * u.truncate(order - 1)) ** 2
    rhs = 4 * u**3 - (u * G2).shift(4) - SeriesT.one(order).shift(6) * G3
    _require_zero(lhs - rhs, "weierstrass-ode")


def _require_zero(residual: SeriesT, name: str):
    for k, coeff in enumerate(residual.coeffs):
        if coeff:
            raise IdentityError(name, k, coeff)


@lru_cache(maxsize=None)
def blowup_functions(order: int) -> BlowupFunctions:
    """Construct B, S, Delta, Q, q, Q' at the given truncation order."""
    if order < 8:
        raise ValueError("order must be at least 8")
    # Work a little deeper internally so that derivatives and the two
    # formal integrations still deliver full precision at `order`.
    work = order + 4
    wp = wp_series(work)
    u = wp.wp_times_z2

    # p - 1/z^2 is an honest power series; integrate twice:
    # zeta = 1/z - int(p - 1/z^2),  log(sigma/z) = int(zeta - 1/z).
    p_reg = SeriesT(u.coeffs[2:], work - 2)  # p - 1/z^2, coefficient of z^k
    log_sigma_over_z = -p_reg.integral().integral()
    sigma_over_z = log_sigma_over_z.exp().truncate(work)

    # z^2 (p - e3) has constant term 1; principal square root.
    shifted = u - SeriesT.one(work).shift(2).truncate(work) * E3
    sqrt_part = shifted.sqrt()

    gauss = SeriesT((P_ZERO, P_ZERO, -PolyX.x() * rat(1, 6)), work).exp()

    s_over_t = gauss * sigma_over_z
    B = (gauss * sigma_over_z * sqrt_part).truncate(order)
    S = s_over_t.shift(1).truncate(order)

    Sp = S.derivative()
    Bp = B.derivative()
    Delta = (Sp * B - S * Bp).truncate(order - 1)
    Q = sqrt_part.inverse().shift(1).truncate(order)
    q = (Q * Q).truncate(order)
    Qprime = Q.derivative()
    bf = BlowupFunctions(B=B, S=S, Delta=Delta, Q=Q, q=q, Qprime=Qprime, order=order)
    _check_normalization(bf)
    return bf


def _check_normalization(bf: BlowupFunctions):
    if bf.B[0] != P_ONE or bf.B[1] or bf.B[2] or bf.B[3]:
        raise IdentityError("B-normalization", 0, bf.B[0])
    if bf.S[0] or bf.S[1] != P_ONE or bf.S[2]:
        raise IdentityError("S-normalization", 1, bf.S[1])
    for k in range(bf.order):
        if k % 2 == 1 and bf.B[k]:
            raise IdentityError("B-even", k, bf.B[k])
        if k % 2 == 0 and bf.S[k]:
            raise IdentityError("S-odd", k, bf.S[k])


def verify_elliptic_identities(bf: BlowupFunctions) -> dict:
    """Check every series identity of the calculus; raises on failure.

    Returns a report mapping identity names to the order through which
    the residual was confirmed to vanish.
    """
    report = {}
    x = PolyX.x()

    ode = bf.Qprime**2 - (1 - x * bf.q + bf.q**2)
    _require_zero(ode, "Qprime-ode")
    report["Qprime-ode"] = ode.order

    delta_sq = bf.Delta**2 - (bf.B**4 - x * bf.S**2 * bf.B**2 + bf.S**4)
    _require_zero(delta_sq, "Delta-squared")
    report["Delta-squared"] = delta_sq.order

    b_double = bf.B.rescale(2) - (bf.B**4 - bf.S**4)
    _require_zero(b_double, "B-double-angle")
    report["B-double-angle"] = b_double.order

    s_double = bf.S.rescale(2) - 2 * bf.Delta * bf.S * bf.B
    _require_zero(s_double, "S-double-angle")
    report["S-double-angle"] = s_double.order

    qb = bf.Q * bf.B - bf.S
    _require_zero(qb, "Q-times-B")
    report["Q-times-B"] = qb.order

    for n in range(0, 9):
        for r in range(0, 9):
            f = bf.B**r * bf.S**n
            for k in range(min(n + 2, f.order)):
                expected = P_ONE if k == n else P_ZERO
                if f[k] != expected:
                    raise IdentityError("BrSn-order(r=%d,n=%d)" % (r, n), k, f[k])
    report["BrSn-order"] = bf.order

    return report
