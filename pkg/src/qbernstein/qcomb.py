"""q-integers, q-factorials, Gaussian binomials and q-Stirling numbers."""

from __future__ import annotations

from functools import lru_cache

from .field import MPoly, PolyQ, RatQ

__all__ = [
    "q_int",
    "q_factorial",
    "q_binomial",
    "q_binomial_symbolic",
    "q_stirling2",
    "qnum_T",
    "stirling_expansion",
    "cyclotomic",
]

Q = PolyQ.monomial(1)


@lru_cache(maxsize=None)
def q_int(n: int) -> PolyQ:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    return PolyQ([1] * n)


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> PolyQ:
    """d-th cyclotomic polynomial in q."""
    if d < 1:
        raise ValueError("cyclotomic needs d >= 1")
    out = PolyQ.monomial(d) - 1
    for e in range(1, d):
        if d % e == 0:
            out = out.exact_div(cyclotomic(e))
    return out


@lru_cache(maxsize=None)
def q_factorial(n: int) -> PolyQ:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = PolyQ.const(1)
    for i in range(2, n + 1):
        out = out * q_int(i)
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> PolyQ:
    """Gaussian binomial coefficient; zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return PolyQ()
    return q_factorial(n).exact_div(q_factorial(k) * q_factorial(n - k))


def qnum_T(shift: int = 0) -> MPoly:
    """[x - shift]_q written in T = q^x, i.e. (1 - T q^-shift) / (1 - q)."""
    inv = RatQ(1, 1 - Q)
    return (MPoly.const(1) - MPoly.var("T").scale(RatQ.q_pow(-shift))).scale(inv)


@lru_cache(maxsize=None)
def q_binomial_symbolic(k: int) -> MPoly:
    """Gaussian binomial with symbolic upper index x, as a polynomial in T = q^x."""
    if k < 0:
        raise ValueError("q_binomial_symbolic needs k >= 0")
    out = MPoly.const(1)
    for i in range(k):
        out = out * qnum_T(i)
    return out.scale(RatQ(1, q_factorial(k)))


@lru_cache(maxsize=None)
def q_stirling2(n: int, k: int) -> RatQ:
    """Carlitz q-Stirling numbers of the second kind.

    S(n, k) = S(n-1, k-1) + [k]_q S(n-1, k), S(0, 0) = 1, which makes
    [x]_q^n = sum_k q^C(k,2) [x choose k]_q [k]_q! S(n, k).
    """
    if n < 0 or k < 0:
        raise ValueError("q_stirling2 needs n, k >= 0")
    if n == 0:
        return RatQ.const(1 if k == 0 else 0)
    if k == 0 or k > n:
        return RatQ.const(0)
    return q_stirling2(n - 1, k - 1) + RatQ(q_int(k)) * q_stirling2(n - 1, k)


def stirling_expansion(n: int, index=None) -> MPoly:
    """sum_{k=0..n} q^C(k,2) [x choose k]_q [k]_q! S(...) in T.

    ``index(n, k)`` chooses the Stirling arguments; the default is
    ``(n, k)``.
    """
    index = index or (lambda n_, k_: (n_, k_))
    out = MPoly()
    for k in range(n + 1):
        a, b = index(n, k)
        if a < 0 or b < 0:
            continue
        s = q_stirling2(a, b)
        if s.is_zero():
            continue
        coeff = RatQ.q_pow(k * (k - 1) // 2) * RatQ(q_factorial(k)) * s
        out = out + q_binomial_symbolic(k).scale(coeff)
    return out
