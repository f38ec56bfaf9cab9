"""Fixed-precision p-adic integers and Riemann sums for the q-integral on Z_p.

The integral of f against mu_q is the limit of

    S_N / D_N,   S_N = sum_{x < p^N} f(x) q^x,   D_N = [p^N]_q,

and for an integer q0 = 1 (mod p), q0 != 1, the normaliser has valuation
exactly N.  Sums are accumulated modulo p^(M+N) so the quotient carries
M digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .carlitz import carlitz_beta, integral_one_minus_x_pow
from .field import FieldError, RatQ
from .qcomb import cyclotomic
from .report import FAILED, VERIFIED, Report

__all__ = [
    "PadicError",
    "PadicInt",
    "IntegralSpec",
    "padic_arith",
    "padic_div",
    "valuation",
    "padic_from_fraction",
    "riemann_parts",
    "riemann_sum_integral",
    "beta_padic_value",
    "convergence_report",
    "difference_valuation",
    "check_eq4_padic",
    "check_eq15_padic",
    "check_eq18_padic",
]


class PadicError(ArithmeticError):
    pass


def valuation(x: int, p: int, cap: int | None = None) -> int:
    """v_p(x); zero maps to ``cap`` (or raises when no cap is given)."""
    if x == 0:
        if cap is None:
            raise PadicError("valuation of zero")
        return cap
    v = 0
    while x % p == 0:
        x //= p
        v += 1
        if cap is not None and v >= cap:
            return cap
    return v


@dataclass(frozen=True)
class PadicInt:
    p: int
    precision: int
    residue: int

    def __post_init__(self):
        if self.precision < 0:
            raise PadicError("negative precision")
        object.__setattr__(self, "residue", self.residue % self.p ** self.precision)

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    @property
    def valuation(self) -> int:
        """Valuation, equal to the precision when indistinguishable from zero."""
        return valuation(self.residue, self.p, cap=self.precision)

    def is_zero(self) -> bool:
        return self.residue == 0

    def _check(self, other):
        if not isinstance(other, PadicInt):
            return PadicInt(self.p, self.precision, other)
        if other.p != self.p:
            raise PadicError(f"mixed primes {self.p} and {other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return PadicInt(self.p, min(self.precision, other.precision), self.residue + other.residue)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return PadicInt(self.p, min(self.precision, other.precision), self.residue - other.residue)

    def __neg__(self):
        return PadicInt(self.p, self.precision, -self.residue)

    def __mul__(self, other):
        other = self._check(other)
        return PadicInt(self.p, min(self.precision, other.precision), self.residue * other.residue)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return padic_div(self, self._check(other))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.residue == other % self.modulus
        if not isinstance(other, PadicInt):
            return NotImplemented
        return (self.p, self.precision, self.residue) == (other.p, other.precision, other.residue)

    def __hash__(self):
        return hash((self.p, self.precision, self.residue))

    def digits(self) -> list[int]:
        out, r = [], self.residue
        for _ in range(self.precision):
            r, d = divmod(r, self.p)
            out.append(d)
        return out

    def __str__(self):
        return f"{self.residue} + O({self.p}^{self.precision})"


def padic_arith(a: PadicInt, b: PadicInt, op: str) -> PadicInt:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def padic_div(a: PadicInt, b: PadicInt) -> PadicInt:
    """a / b; dividing by b of valuation v costs v digits of precision."""
    if a.p != b.p:
        raise PadicError(f"mixed primes {a.p} and {b.p}")
    p = a.p
    prec = min(a.precision, b.precision)
    if b.residue % p ** prec == 0:
        raise PadicError("division by a value indistinguishable from 0")
    v = valuation(b.residue, p)
    if a.valuation < v:
        raise PadicError("not a p-adic integer")
    out_prec = prec - v
    m = p ** out_prec
    unit = (b.residue // p ** v) % m
    num = (a.residue % p ** prec) // p ** v
    return PadicInt(p, out_prec, num * pow(unit, -1, m))


def padic_from_fraction(x: Fraction, p: int, precision: int) -> PadicInt:
    x = Fraction(x)
    if x.denominator % p == 0:
        raise PadicError(f"{x} is not a {p}-adic integer")
    m = p ** precision
    return PadicInt(p, precision, x.numerator * pow(x.denominator, -1, m))


# ---------------------------------------------------------------------------


INTEGRANDS = ("constant_one", "power_of_qnum", "power_of_one_minus", "shifted_power")
MEASURES = ("mu_q", "mu_qinv")


@dataclass(frozen=True)
class IntegralSpec:
    integrand: str
    n: int = 0
    x0: int = 0
    measure: str = "mu_q"

    def __post_init__(self):
        if self.integrand not in INTEGRANDS:
            raise ValueError(f"unknown integrand {self.integrand!r}")
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")
        if self.n < 0:
            raise ValueError("integrand power must be >= 0")


def _check_base(p: int, q0: int, N: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    if q0 == 1 or (q0 - 1) % p:
        raise ValueError(f"q0 = {q0} must satisfy q0 = 1 (mod {p}) and q0 != 1")
    if N < 1:
        raise ValueError("level N must be >= 1")


def _qnums(start: int, count: int, r: int, r_inv: int, mod: int) -> Iterator[int]:
    """[start + i]_r mod ``mod`` for i < count, using [y+1] = 1 + r [y]."""
    y, val = 0, 0
    while y > start:
        # [y-1] = ([y] - 1) / r
        val = (val - 1) * r_inv % mod
        y -= 1
    while y < start:
        val = (1 + r * val) % mod
        y += 1
    for _ in range(count):
        yield val
        val = (1 + r * val) % mod


def riemann_parts(spec: IntegralSpec, p: int, q0: int, N: int, K: int) -> tuple[int, int]:
    """(S_N mod p^K, D_N mod p^K) for the given integrand and measure."""
    _check_base(p, q0, N)
    mod = p ** K
    q = q0 % mod
    q_inv = pow(q, -1, mod)
    # the measure weight base is q or 1/q
    w, w_inv = (q, q_inv) if spec.measure == "mu_q" else (q_inv, q)
    count = p ** N
    n = spec.n
    if spec.integrand == "constant_one":
        values = (1 for _ in range(count))
    elif spec.integrand == "power_of_qnum":
        values = (v ** n for v in _qnums(0, count, q, q_inv, mod))
    elif spec.integrand == "power_of_one_minus":
        # [1 - x]_{1/q} = 1 - [x]_q
        values = ((1 - v) ** n for v in _qnums(0, count, q, q_inv, mod))
    else:
        # shifted power: [x0 + x]_q under mu_q, [1 - x0 + x]_{1/q} under mu_qinv
        if spec.measure == "mu_q":
            values = (v ** n for v in _qnums(spec.x0, count, q, q_inv, mod))
        else:
            values = (v ** n for v in _qnums(1 - spec.x0, count, q_inv, q, mod))
    S = 0
    D = 0
    wx = 1
    for f in values:
        S = (S + f * wx) % mod
        D += wx
        wx = wx * w % mod
    return S, D % mod


def riemann_sum_integral(spec: IntegralSpec, p: int, q0: int, N: int, M: int) -> PadicInt:
    """S_N / [p^N] as a p-adic integer with M digits."""
    S, D = riemann_parts(spec, p, q0, N, M + N)
    v = valuation(D, p, cap=M + N)
    if v != N:
        raise PadicError(f"normaliser has valuation {v}, expected {N}")
    return padic_div(PadicInt(p, M + N, S), PadicInt(p, M + N, D))


def _offending_factor(value: RatQ, p: int, q0: int) -> str:
    den = value.den
    for d in range(1, int(den.degree) + 2):
        phi = cyclotomic(d)
        try:
            den.exact_div(phi)
        except FieldError:
            continue
        if phi.eval(q0) % p == 0:
            return phi.render()
    return den.render()


def beta_padic_value(n: int, p: int, q0: int, M: int) -> PadicInt:
    """beta_{n,q} at q = q0 as an element of Z_p mod p^M."""
    value = carlitz_beta(n)
    x = value.eval(q0)
    if x.denominator % p == 0:
        raise PadicError(
            f"denominator factor {_offending_factor(value, p, q0)} of beta_{n} "
            f"is not a {p}-adic unit at q = {q0}"
        )
    return padic_from_fraction(x, p, M)


def difference_valuation(S: int, D: int, target: Fraction, p: int, K: int) -> tuple[int, bool]:
    """v_p(S/D - target) from residues S, D known mod p^K, D exact in valuation.

    Returns (valuation, exact) where ``exact`` means the difference vanished
    at the working precision and the valuation is the precision cap.
    """
    a, b = target.numerator, target.denominator
    vb = valuation(b, p)
    vD = valuation(D, p, cap=K)
    num = (S * b - a * D) % p ** K
    cap = K - vD - vb
    if num == 0:
        return cap, True
    return min(valuation(num, p) - vD - vb, cap), False


def _levels(p, q0, n_max, M, parts, target) -> list[dict]:
    out = []
    for N in range(1, n_max + 1):
        S, D = parts(N, M + N)
        v, exact = difference_valuation(S, D, target, p, M + N)
        out.append({"N": N, "valuation": v, "exact": exact})
    return out


def convergence_report(n: int, p: int, q0: int, N_max: int = 5, M: int = 12) -> list[tuple[int, int]]:
    """(N, v_p(Riemann sum - beta_{n,q0})) for N = 1..N_max."""
    return [(lv["N"], lv["valuation"]) for lv in _eq4_levels(n, p, q0, N_max, M)]


def _eq4_levels(n, p, q0, N_max, M):
    spec = IntegralSpec("power_of_qnum", n)
    target = carlitz_beta(n).eval(q0)
    return _levels(p, q0, N_max, M, lambda N, K: riemann_parts(spec, p, q0, N, K), target)


def _verdict(levels: list[dict]) -> tuple[bool, str]:
    vals = [lv["valuation"] for lv in levels]
    if all(lv["exact"] for lv in levels):
        return True, "difference is exactly zero at every level"
    mono = all(a <= b for a, b in zip(vals, vals[1:]))
    rises = sum(1 for a, b in zip(vals, vals[1:]) if b > a)
    ok = mono and rises >= 1
    return ok, f"valuations {vals}: non-decreasing={mono}, strict increases={rises}"


def _padic_report(check_id, params, levels, lhs, rhs) -> Report:
    ok, note = _verdict(levels)
    return Report(
        id=check_id,
        params=params,
        status=VERIFIED if ok else FAILED,
        lhs=lhs,
        rhs=rhs,
        notes=note,
        data={"levels": levels},
    )


def check_eq4_padic(n: int, p: int, q0: int, N_max: int = 5, M: int = 12) -> Report:
    levels = _eq4_levels(n, p, q0, N_max, M)
    params = {"n": n, "p": p, "q0": q0, "N_max": N_max, "M": M}
    return _padic_report("eq4-padic", params, levels,
                         f"Riemann sums of [x]_q^{n} at q={q0}", f"beta_{n} at q={q0} = {carlitz_beta(n).eval(q0)}")


def check_eq15_padic(n: int, x0: int, p: int, q0: int, N: int = 5, M: int = 12) -> Report:
    """Riemann sums of both sides of the q -> 1/q reflection, levels 1..N."""
    if x0 < 0:
        raise ValueError("x0 must be a nonnegative integer")
    left = IntegralSpec("shifted_power", n, x0, "mu_qinv")
    right = IntegralSpec("shifted_power", n, x0, "mu_q")
    c = (-1) ** n * q0 ** n
    levels = []
    for level in range(1, N + 1):
        K = M + 2 * level
        S1, D1 = riemann_parts(left, p, q0, level, K)
        S2, D2 = riemann_parts(right, p, q0, level, K)
        num = (S1 * D2 - c * S2 * D1) % p ** K
        vd = valuation(D1, p, cap=K) + valuation(D2, p, cap=K)
        cap = K - vd
        if num == 0:
            levels.append({"N": level, "valuation": cap, "exact": True})
        else:
            levels.append({"N": level, "valuation": min(valuation(num, p) - vd, cap), "exact": False})
    params = {"n": n, "x0": x0, "p": p, "q0": q0, "N_max": N, "M": M}
    return _padic_report("eq15-padic", params, levels,
                         f"int [1-{x0}+y]_(1/q)^{n} dmu_(1/q)(y)", f"(-1)^{n} q^{n} int [{x0}+y]_q^{n} dmu_q(y)")


def check_eq18_padic(n: int, p: int, q0: int, N: int = 5, M: int = 12) -> Report:
    if n <= 1:
        raise ValueError("identity stated only for n>1")
    spec = IntegralSpec("power_of_one_minus", n)
    target = integral_one_minus_x_pow(n).eval(q0)
    levels = _levels(p, q0, N, M, lambda lv, K: riemann_parts(spec, p, q0, lv, K), target)
    params = {"n": n, "p": p, "q0": q0, "N_max": N, "M": M}
    return _padic_report("eq18-padic", params, levels,
                         f"Riemann sums of [1-x]_(1/q)^{n} at q={q0}", f"q^2 beta_(n,1/q) + (n+1) - q = {target}")

