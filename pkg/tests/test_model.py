"""Formal evaluation of exceptional-class expressions under twists."""

import pytest

from sphere_calculus.elliptic import blowup_functions
from sphere_calculus.model import (
    FormalExpr,
    TwistPattern,
    evaluate,
    moments,
    sigma_power_insertion_value,
    sigma_power_value,
    verify_relation,
)
from sphere_calculus.rings import PolyX, SeriesT, factorial, rat

X = PolyX.x()


def test_moments_match_series():
    bf = blowup_functions(12)
    for j in range(10):
        assert moments("B", j) == bf.B[j] * factorial(j)
        assert moments("S", j) == bf.S[j] * factorial(j)
    assert moments("B", 0) == PolyX.const(1)
    assert moments("S", 1) == PolyX.const(1)
    assert not moments("S", 0)
    with pytest.raises(ValueError):
        moments("B", -1)


def test_moment_parity():
    for j in range(1, 10, 2):
        assert not moments("B", j)
    for j in range(0, 10, 2):
        assert not moments("S", j)


def test_exp_sigma_evaluates_to_product():
    order = 12
    bf = blowup_functions(order)
    expr = FormalExpr.exp_sigma(3, order)
    got = evaluate(expr, TwistPattern((0, 1, 0)), order)
    want = (bf.B * bf.S * bf.B).truncate(order)
    assert (got - want).is_zero()


def test_monomial_derivative_evaluation():
    order = 12
    bf = blowup_functions(order + 1)
    # e * exp(t e) evaluates to the derivative of the class series
    expr = FormalExpr.monomial((1,), (1,), SeriesT.one(order))
    got = evaluate(expr, TwistPattern((0,)), order)
    want = bf.B.derivative().truncate(order)
    assert (got - want).is_zero()


def test_sigma_power_values():
    order = 12
    bf = blowup_functions(order)
    f = bf.S * bf.S * bf.B
    for p in range(8):
        assert sigma_power_value(3, 2, p, order) == f[p] * factorial(p)


def test_insertion_values():
    order = 12
    bf = blowup_functions(order + 1)
    f = (-bf.Delta * bf.B).truncate(order)
    for p in range(8):
        assert sigma_power_insertion_value(3, 1, p, order) == f[p] * factorial(p)
    with pytest.raises(ValueError):
        sigma_power_insertion_value(2, 0, 1, order)


def test_verify_relation_detects_mismatch():
    order = 10
    lhs = FormalExpr.exp_sigma(2, order)
    rhs = FormalExpr.exp_sigma(2, order).scaled(SeriesT.one(order) * 2)
    twists = [TwistPattern((0, 0))]
    assert verify_relation(lhs, lhs, twists, order)
    report = verify_relation(lhs, rhs, twists, order)
    assert not report
    assert report.failures[0][1] == 0  # first failing t-power
