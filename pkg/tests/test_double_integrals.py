from math import comb, prod

import pytest

from qbernstein.carlitz import carlitz_beta, carlitz_beta_qinv, integral_one_minus_x_pow
from qbernstein.double_integrals import (
    binomial_product_integral,
    double_integral_by_moments,
    double_integral_closed_form,
    double_integral_oracle,
    thm5_literal_lhs,
    thm5_rhs,
    thm6_rhs,
    thm7_rhs,
)
from qbernstein.field import MPoly, PolyQ, RatQ

q = PolyQ.monomial(1)


def test_moment_integral_of_monomials():
    X, Y = MPoly.var("X"), MPoly.var("Y")
    assert double_integral_by_moments(MPoly.const(1)) == RatQ.const(1)
    assert double_integral_by_moments(X ** 2 * Y) == carlitz_beta(2) * carlitz_beta(1)
    with pytest.raises(ValueError):
        double_integral_by_moments(MPoly.var("T"))


@pytest.mark.parametrize("n", range(11))
def test_double_integral_branches(n):
    for k in range(n + 2):
        value, branch = double_integral_closed_form(k, n)
        assert value == double_integral_oracle(k, n)
        if k > n:
            assert branch == "n<k" and value.is_zero()
        elif k == n:
            assert value == (RatQ.const(1) if n == 0 else carlitz_beta(k))


def test_double_integral_boundary_branch():
    value, branch = double_integral_closed_form(2, 3)
    assert branch == "n=k+1"
    assert value == carlitz_beta(2) * integral_one_minus_x_pow(1) * 3
    # the generic branch evaluated at n - k = 1 is a different number
    generic = carlitz_beta(2) * (RatQ(q ** 2) * carlitz_beta_qinv(1) + 2 - RatQ(q)) * 3
    assert generic != value


def test_rhs_equals_beta():
    for k in range(9):
        assert thm5_rhs(k) == carlitz_beta(k)
    for k in range(4):
        assert thm6_rhs(k) == thm5_rhs(2 * k) == carlitz_beta(2 * k)
    for s in range(1, 5):
        for k in range(3):
            assert thm7_rhs(s, k) == thm5_rhs(s * k)


def test_literal_witness():
    lhs = thm5_literal_lhs(3, 1)
    assert lhs == RatQ(PolyQ.const(-3), q + 1)
    assert thm5_rhs(1) == RatQ(PolyQ.const(-1), q + 1)


@pytest.mark.parametrize("ns,k", [((2, 3), 1), ((1, 1, 2), 1), ((2, 2), 2), ((3,), 0)])
def test_product_integral_factorises(ns, k):
    # int int prod B_(k,n_i) = prod C(n_i,k) beta_sk int [1-x]^(sum n_i - sk)
    s = len(ns)
    expected = carlitz_beta(s * k) * prod(comb(n, k) for n in ns) * integral_one_minus_x_pow(sum(ns) - s * k)
    assert binomial_product_integral(ns, k) == expected
