"""Double q-integrals of Bernstein products and the alternating-sum identities.

Integrating X^a Y^b against mu_q(x1) mu_q(x2) gives beta_a * beta_b, which
is the independent route used to check the closed forms below.
"""

from __future__ import annotations

from math import comb, prod

from .bernstein import basis
from .carlitz import carlitz_beta, carlitz_beta_qinv, integral_one_minus_x_pow
from .field import MPoly, PolyQ, RatQ
from .qcomb import q_int

Q = RatQ(PolyQ.monomial(1))


def double_integral_by_moments(expr: MPoly) -> RatQ:
    """Integral of a polynomial in X = [x1]_q, Y = [x2]_q over both variables."""
    total = RatQ.const(0)
    for (a, b, t), c in expr.terms.items():
        if t:
            raise ValueError("integrand must not involve T")
        total = total + c * carlitz_beta(a) * carlitz_beta(b)
    return total


def double_integral_closed_form(k: int, n: int) -> tuple[RatQ, str]:
    """Closed form of the double integral of B_{k,n}, with the branch used."""
    if n < k:
        return RatQ.const(0), "n<k"
    if n == k == 0:
        return RatQ.const(1), "n=k=0"
    if n == k:
        return carlitz_beta(k), "n=k"
    if n == k + 1:
        # the generic closed form needs n - k > 1; [1-x]_(1/q) integrates to 1 + 1/[2]_q
        return carlitz_beta(k) * integral_one_minus_x_pow(1) * comb(n, k), "n=k+1"
    m = n - k
    value = carlitz_beta(k) * (Q ** 2 * carlitz_beta_qinv(m) + (m + 1) - Q) * comb(n, k)
    return value, "n>k+1"


def double_integral_oracle(k: int, n: int) -> RatQ:
    return double_integral_by_moments(basis(k, n).expr)


def thm5_rhs(k: int) -> RatQ:
    """1 - k - k/[2]_q + sum_{l<=k-2} C(k,l) (-1)^(k+l) (q^2 beta_{k-l,1/q} + k-l+1-q)."""
    total = RatQ.const(1 - k) - RatQ.const(k) / RatQ(q_int(2))
    for l in range(k - 1):
        term = Q ** 2 * carlitz_beta_qinv(k - l) + (k - l + 1) - Q
        total = total + term * (comb(k, l) * (-1) ** (k + l))
    return total


def thm6_rhs(k: int) -> RatQ:
    """1 - 2k - 2k/[2]_q + sum_{l<=2k-2} C(2k,l) (-1)^(2k+l) (q^2 beta_{2k-l,1/q} + 2k-l+1-q)."""
    total = RatQ.const(1 - 2 * k) - RatQ.const(2 * k) / RatQ(q_int(2))
    for l in range(2 * k - 1):
        term = Q ** 2 * carlitz_beta_qinv(2 * k - l) + (2 * k - l + 1) - Q
        total = total + term * (comb(2 * k, l) * (-1) ** (2 * k + l))
    return total


def thm7_rhs(s: int, k: int) -> RatQ:
    sk = s * k
    total = RatQ.const(1 - sk) - RatQ.const(sk) / RatQ(q_int(2))
    for l in range(sk - 1):
        term = Q ** 2 * carlitz_beta_qinv(sk - l) + (sk - l + 1) - Q
        total = total + term * (comb(sk, l) * (-1) ** (sk + l))
    return total


def thm5_literal_lhs(n: int, k: int) -> RatQ:
    return carlitz_beta(k) * comb(n, k)


def thm6_literal_lhs(n: int, m: int, k: int) -> RatQ:
    return carlitz_beta(k) * (comb(n, k) * comb(m, k))


def thm7_literal_lhs(ns, k: int) -> RatQ:
    return carlitz_beta(len(ns) * k) * prod(comb(n, k) for n in ns)


def binomial_product_integral(ns, k: int) -> RatQ:
    """Double integral of prod_i B_{k,n_i}, by moments of the expanded product."""
    expr = MPoly.const(1)
    for n in ns:
        expr = expr * basis(k, n).expr
    return double_integral_by_moments(expr)
