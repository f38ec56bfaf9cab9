"""Two-variable q-Bernstein polynomials, exactly and in floating point.

Exact forms live in Q(q)[X, Y] with X = [x1]_q and Y = [x2]_q, using
[1 - x]_{1/q} = 1 - [x]_q so that the second factor is (1 - Y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .field import MPoly, RatQ, ratq_subst_qinv

__all__ = [
    "BernsteinBasis",
    "NumericCtx",
    "basis",
    "basis_eval_real",
    "qnum_real",
    "operator_apply",
    "genfun_coefficients",
    "moments_symbolic",
    "moments_closed",
    "thm1_pair",
    "eq10_pair",
    "eq14_pair",
    "derivative_pairs",
    "derivative_numeric",
    "thm3_pair",
    "lincomb_pair",
]

X = MPoly.var("X")
Y = MPoly.var("Y")
ONE = MPoly.const(1)


@dataclass(frozen=True)
class BernsteinBasis:
    k: int
    n: int
    expr: MPoly


@dataclass(frozen=True)
class NumericCtx:
    q: float
    x1: float
    x2: float

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise ValueError(f"q must lie in (0, 1), got {self.q}")
        for name in ("x1", "x2"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")


_basis_cache: dict = {}


def basis(k: int, n: int) -> BernsteinBasis:
    """C(n,k) X^k (1-Y)^(n-k); zero when k > n or k < 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    key = (k, n)
    if key not in _basis_cache:
        if k < 0 or k > n:
            expr = MPoly()
        else:
            expr = (X ** k * (ONE - Y) ** (n - k)).scale(comb(n, k))
        _basis_cache[key] = BernsteinBasis(k, n, expr)
    return _basis_cache[key]


def _b(k, n) -> MPoly:
    return basis(k, n).expr


def qnum_real(x: float, q: float) -> float:
    return (1 - q ** x) / (1 - q)


def basis_eval_real(k: int, n: int, ctx: NumericCtx) -> float:
    if k < 0 or k > n:
        return 0.0
    a = qnum_real(ctx.x1, ctx.q)
    b = 1 - qnum_real(ctx.x2, ctx.q)
    return comb(n, k) * a ** k * b ** (n - k)


def operator_apply(samples: Sequence[float], n: int, ctx: NumericCtx) -> float:
    """sum_k f(k/n) B_{k,n}(x1, x2 | q) given samples[k] = f(k/n)."""
    if n < 1:
        raise ValueError("operator order n must be >= 1")
    if len(samples) != n + 1:
        raise ValueError(f"expected {n + 1} samples, got {len(samples)}")
    return math.fsum(f * basis_eval_real(k, n, ctx) for k, f in enumerate(samples))


def _series_mul(a: list, b: list, order: int) -> list:
    out = [MPoly() for _ in range(order + 1)]
    for i, u in enumerate(a[: order + 1]):
        if u.is_zero():
            continue
        for j, v in enumerate(b[: order + 1 - i]):
            if not v.is_zero():
                out[i + j] = out[i + j] + u * v
    return out


def genfun_coefficients(k: int, N: int) -> list[MPoly]:
    """n! [t^n] of (t X)^k exp(t (1-Y)) / k!, for n = 0..N."""
    if k < 0 or N < 0:
        raise ValueError("k and N must be >= 0")
    head = [MPoly() for _ in range(N + 1)]
    if k <= N:
        head[k] = (X ** k).scale(RatQ.const(1) / math.factorial(k))
    u = ONE - Y
    expo = [(u ** m).scale(RatQ.const(1) / math.factorial(m)) for m in range(N + 1)]
    prod = _series_mul(head, expo, N)
    return [c.scale(math.factorial(n)) for n, c in enumerate(prod)]


def moments_symbolic(n: int) -> tuple[MPoly, MPoly, MPoly]:
    """sum_k (k/n)^m B_{k,n} for m = 0, 1, 2."""
    if n < 2:
        raise ValueError("moments need n >= 2")
    out = []
    for m in range(3):
        total = MPoly()
        for k in range(n + 1):
            w = RatQ.const(k ** m) / n ** m
            if not w.is_zero():
                total = total + _b(k, n).scale(w)
        out.append(total)
    return tuple(out)


def moments_closed(n: int) -> tuple[MPoly, MPoly, MPoly]:
    if n < 2:
        raise ValueError("moments need n >= 2")
    s = ONE + X - Y
    m0 = s ** n
    m1 = X * s ** (n - 1)
    m2 = (X ** 2 * s ** (n - 2)).scale(RatQ.const(n - 1) / n) + (X * s ** (n - 1)).scale(RatQ.const(1) / n)
    return m0, m1, m2


def thm1_pair(k: int, n: int) -> tuple[MPoly, MPoly]:
    lhs = (ONE - Y) * _b(k, n) + X * _b(k - 1, n)
    return lhs, _b(k, n + 1)


def eq10_pair(k: int, n: int) -> tuple[MPoly, MPoly]:
    """B_{n-k,n}(1-x2, 1-x1 | 1/q) against B_{k,n}(x1, x2 | q).

    For the swapped arguments, [1-x2]_{1/q} = 1 - Y and [1-x1]_{1/q} = 1 - X.
    """
    flipped = _b(n - k, n).map_coeffs(ratq_subst_qinv)
    lhs = flipped.subst({"X": ONE - Y, "Y": ONE - X})
    return lhs, _b(k, n)


def eq14_pair(k: int, n: int) -> tuple[MPoly, MPoly]:
    lhs = _b(k, n).scale(RatQ.const(n - k) / n) + _b(k + 1, n).scale(RatQ.const(k + 1) / n)
    return lhs, (ONE + X - Y) * _b(k, n - 1)


def derivative_pairs(k: int, n: int) -> list[tuple[MPoly, MPoly]]:
    """Polynomial core of the derivative formulas, one pair per variable."""
    if n < 1:
        raise ValueError("derivative formulas need n >= 1")
    b = _b(k, n)
    return [
        (b.deriv("X"), _b(k - 1, n - 1).scale(n)),
        (b.deriv("Y"), _b(k, n - 1).scale(-n)),
    ]


def derivative_numeric(k: int, n: int, ctx: NumericCtx, h: float = 1e-6) -> dict:
    """Central differences against the full derivative formulas with log q."""
    q, x1, x2 = ctx.q, ctx.x1, ctx.x2

    def at(a, b):
        return basis_eval_real(k, n, NumericCtx(q, a, b))

    fd1 = (at(x1 + h, x2) - at(x1 - h, x2)) / (2 * h)
    fd2 = (at(x1, x2 + h) - at(x1, x2 - h)) / (2 * h)
    lq = math.log(q)
    f1 = lq / (q - 1) * n * ((q - 1) * qnum_real(x1, q) + 1) * basis_eval_real(k - 1, n - 1, ctx)
    f2 = lq / (1 - q) * n * ((q - 1) * qnum_real(x2, q) + 1) * basis_eval_real(k, n - 1, ctx)
    return {"fd_x1": fd1, "formula_x1": f1, "fd_x2": fd2, "formula_x2": f2}


def thm3_pair(j: int, n: int) -> tuple[MPoly, MPoly]:
    """Degree-evaluation identity with (1+X-Y)^(n-j) multiplied through."""
    lhs = MPoly()
    for k in range(j, n + 1):
        lhs = lhs + _b(k, n).scale(RatQ.const(comb(k, j)) / comb(n, j))
    return lhs, X ** j * (ONE + X - Y) ** (n - j)


def lincomb_pair(k: int, n: int, shift: int = 0) -> tuple[MPoly, MPoly]:
    """Y^k B_{k,n} against X^k sum_{l=k..n} C(l,k) C(n,l) (-1)^(l-k) Y^(l+shift)."""
    total = MPoly()
    for l in range(k, n + 1):
        total = total + (Y ** (l + shift)).scale(comb(l, k) * comb(n, l) * (-1) ** (l - k))
    return Y ** k * _b(k, n), X ** k * total
