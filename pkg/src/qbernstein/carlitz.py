"""Carlitz q-Bernoulli numbers and polynomials over Q(q).

Polynomials in x are carried in T = q^x, with [x]_q = (1 - T)/(1 - q), so
statements that hold for symbolic x become identities in Q(q)[T].
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb

from .field import FieldError, MPoly, PolyQ, RatQ, ratq_subst_qinv
from .qcomb import cyclotomic, q_int, qnum_T
from .report import Report, compare

__all__ = [
    "BetaTable",
    "BetaPoly",
    "carlitz_beta",
    "carlitz_beta_qinv",
    "beta_poly",
    "beta_poly_at_int",
    "beta_poly_moments",
    "integral_one_minus_x_pow",
    "integral_one_minus_x_pow_expansion",
    "reflection_pair",
    "beta_at_two_identity",
]

Q = PolyQ.monomial(1)


class BetaTable:
    """Grow-only memo of beta_{n,q} and beta_{n,1/q}.

    Extension happens under a lock; committed entries are never modified,
    so reads of ``betas[i]`` for ``i < len(betas)`` need no locking.
    """

    def __init__(self):
        self.betas: list[RatQ] = [RatQ.const(1)]
        self.betas_qinv: list[RatQ] = [RatQ.const(1)]
        self._numers: list[PolyQ] = [PolyQ.const(1)]
        self._lock = threading.Lock()

    def extend(self, n: int) -> None:
        if n < len(self.betas):
            return
        with self._lock:
            for k in range(len(self.betas), n + 1):
                b = self._solve(k)
                # qinv image first so a reader never sees betas longer than betas_qinv
                self.betas_qinv.append(ratq_subst_qinv(b))
                self.betas.append(b)

    def _solve(self, k: int) -> RatQ:
        # With P_k = prod_{j=2..k+1} (q^j - 1), N_k = beta_k * P_k is a polynomial:
        # N_k = [k == 1] P_{k-1} - q sum_i C(k,i) q^i N_i prod_{j=i+2..k} (q^j - 1)
        while len(self._numers) < k:
            self._numers.append(None)
        tail = PolyQ.const(1)
        acc = PolyQ()
        for i in range(k - 1, -1, -1):
            acc = acc + self._numers[i] * tail * (comb(k, i) * Q ** (i + 1))
            if i:
                tail = tail * (Q ** (i + 1) - 1)
        # tail is now P_{k-1}
        numer = (tail if k == 1 else PolyQ()) - acc
        self._numers.append(numer)
        num = numer
        den = []
        for j in range(2, k + 2):
            for d in range(1, j + 1):
                if j % d:
                    continue
                phi = cyclotomic(d)
                if not num.is_zero():
                    try:
                        num = num.exact_div(phi)
                        continue
                    except FieldError:
                        pass
                den.append(phi)
        den_poly = PolyQ.const(1)
        for phi in den:
            den_poly = den_poly * phi
        if num.is_zero():
            return RatQ.const(0)
        return RatQ(num, den_poly, _canonical=True)

    def beta(self, n: int) -> RatQ:
        if n < 0:
            raise ValueError("beta index must be >= 0")
        self.extend(n)
        return self.betas[n]

    def beta_qinv(self, n: int) -> RatQ:
        if n < 0:
            raise ValueError("beta index must be >= 0")
        self.extend(n)
        return self.betas_qinv[n]


TABLE = BetaTable()


def carlitz_beta(n: int) -> RatQ:
    """beta_{n,q} from q(q beta + 1)^k - beta_k = [k == 1], beta_0 = 1."""
    return TABLE.beta(n)


def carlitz_beta_qinv(n: int) -> RatQ:
    return TABLE.beta_qinv(n)


@dataclass(frozen=True)
class BetaPoly:
    n: int
    expr: MPoly

    def at_int(self, x: int) -> RatQ:
        return self.expr.subst("T", RatQ.q_pow(x)).const_term()


_beta_poly_cache: dict = {}


def beta_poly(n: int) -> BetaPoly:
    """beta_{n,q}(x) = sum_i C(n,i) q^(ix) beta_i [x]_q^(n-i), in T."""
    if n < 0:
        raise ValueError("beta_poly needs n >= 0")
    if n in _beta_poly_cache:
        return _beta_poly_cache[n]
    x = qnum_T()
    T = MPoly.var("T")
    expr = MPoly()
    for i in range(n + 1):
        expr = expr + (T ** i * x ** (n - i)).scale(carlitz_beta(i) * comb(n, i))
    bp = BetaPoly(n, expr)
    _beta_poly_cache[n] = bp
    return bp


def beta_poly_at_int(n: int, x: int) -> RatQ:
    if x < 0:
        raise ValueError("x must be a nonnegative integer")
    return beta_poly(n).at_int(x)


def beta_poly_moments(n: int, x: int) -> RatQ:
    """Same value as beta_poly_at_int, built from the integer q-number [x]_q."""
    qx = RatQ(q_int(x))
    total = RatQ.const(0)
    for m in range(n + 1):
        total = total + RatQ.q_pow(x * m) * carlitz_beta(m) * qx ** (n - m) * comb(n, m)
    return total


def integral_one_minus_x_pow(n: int) -> RatQ:
    """Integral of [1-x]_{1/q}^n against mu_q, in closed form."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return RatQ.const(1)
    if n == 1:
        return RatQ.const(1) - carlitz_beta(1)
    return RatQ(Q ** 2) * carlitz_beta_qinv(n) + (n + 1) - RatQ(Q)


def integral_one_minus_x_pow_expansion(n: int) -> RatQ:
    """sum_j C(n,j) (-1)^j beta_j, from [1-x]_{1/q} = 1 - [x]_q."""
    total = RatQ.const(0)
    for j in range(n + 1):
        total = total + carlitz_beta(j) * ((-1) ** j * comb(n, j))
    return total


def reflection_pair(n: int) -> tuple[MPoly, MPoly]:
    """Both sides of beta_{n,1/q}(1-x) = (-1)^n q^n beta_{n,q}(x) in T."""
    expr = beta_poly(n).expr
    # under q -> 1/q the T variable is (1/q)^(1-x) = T/q
    lhs = expr.map_coeffs(ratq_subst_qinv).subst("T", MPoly.var("T").scale(RatQ.q_pow(-1)))
    rhs = expr.scale(RatQ.q_pow(n) * (-1) ** n)
    return lhs, rhs


def beta_at_two_identity(n: int) -> Report:
    """beta_{n,q}(2) = (n+1) - 1/q + beta_{n,q}/q^2, stated for n > 1."""
    if n <= 1:
        raise ValueError("identity stated only for n>1")
    lhs = beta_poly_at_int(n, 2)
    rhs = RatQ.const(n + 1) - RatQ.q_pow(-1) + carlitz_beta(n) * RatQ.q_pow(-2)
    return compare("eq17", {"n": n}, lhs, rhs)
