"""Embedded-sphere structure equations against printed and model oracles."""

import pytest

from sphere_calculus.embedded import (
    basis_monomials,
    corollary_24_table,
    derive_embedded,
    specialize_two_e,
    verify_corollary_24,
    verify_embedded_relation,
)
from sphere_calculus.rings import PolyX, rat


def test_printed_low_n_table():
    report = verify_corollary_24()
    assert {"n=2 eps=0", "n=3 eps=1", "n=4 eps=1"} <= set(report)
    assert all(not mismatches for mismatches in report.values())


def test_minus_two_sphere_formula():
    rel = derive_embedded(2, 0)
    derived = {(p, mono): c for p, c, mono in rel.terms()}
    # exp(t sigma) == B^2 + sigma^2 (1/2) S^2
    assert derived == {
        (0, (0, 2, 0)): PolyX.const(1),
        (2, (2, 0, 0)): PolyX.const(rat(1, 2)),
    }


def test_minus_three_sphere_formula():
    rel = derive_embedded(3, 1)
    table = corollary_24_table()[(3, 1)]
    derived = {(p, mono): c for p, c, mono in rel.terms()}
    assert derived == table


@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("epsilon", [0, 1])
def test_generality_and_model_verification(n, epsilon):
    rel = derive_embedded(n, epsilon)
    verify_embedded_relation(rel)
    # hat-term vanishing: the top sigma power of the opposite parity
    # is absent (sigma^(2k-1) for epsilon=0 n=2k; sigma^2k for
    # epsilon=1 n=2k+1)
    powers = {p for p, _, _ in rel.terms()}
    if epsilon == 0 and n % 2 == 0:
        assert n - 1 not in powers
    if epsilon == 1 and n % 2 == 1:
        assert n - 1 not in powers


@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("epsilon", [0, 1])
def test_order_stability(n, epsilon):
    low = derive_embedded(n, epsilon, 2 * n + 8)
    high = derive_embedded(n, epsilon, 2 * n + 12)
    key = lambda rel: {(p, mono): c for p, c, mono in rel.terms()}
    assert key(low) == key(high)


def test_basis_monomials_shape():
    for s_exp, b_exp, d_exp in basis_monomials(4, 1, 0):
        assert s_exp + b_exp + 2 * d_exp == 4
        assert d_exp in (0, 1)


def test_double_angle_specialization():
    # sigma = 2e reproduces the double-angle identities of the kernel
    rel = derive_embedded(4, 0)
    for twisted in (False, True):
        specialize_two_e(rel, twisted, 16)


def test_relation_shape():
    rel = derive_embedded(5, 0)
    assert all(p % 2 == 0 for p, _, _ in rel.cosh_terms)
    assert all(p % 2 == 1 for p, _, _ in rel.sinh_terms)
