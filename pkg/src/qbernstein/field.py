"""Exact arithmetic over Q(q) and sparse polynomials in X, Y, T over Q(q).

``PolyQ`` stores a univariate polynomial as a tuple of integer coefficients
(lowest degree first) over one positive integer denominator, with the content
of the coefficients coprime to the denominator.  That form is unique, so
equality is tuple comparison, and it keeps the inner loops in machine-friendly
``int`` arithmetic instead of ``Fraction``.

``RatQ`` is a reduced fraction of two ``PolyQ`` with a monic denominator.
``MPoly`` maps exponent triples ``(i, j, k)`` of ``X^i Y^j T^k`` to nonzero
``RatQ`` coefficients.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

__all__ = [
    "FieldError",
    "PolyQ",
    "RatQ",
    "MPoly",
    "ratq_make",
    "ratq_arith",
    "ratq_subst_qinv",
    "ratq_eval",
    "mpoly_arith",
    "mpoly_deriv",
    "mpoly_subst",
    "parse_ratq",
    "parse_mpoly",
    "VARS",
]

Scalar = Union[int, Fraction]
VARS = ("X", "Y", "T")


class FieldError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# integer coefficient-list helpers (lowest degree first, no trailing zeros)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _content(c):
    return reduce(math.gcd, c, 0)


def _primitive(c):
    """Primitive part with positive leading coefficient."""
    g = _content(c)
    if c[-1] < 0:
        g = -g
    return [x // g for x in c]


def _mul(a, b):
    if not a or not b:
        return []
    if len(a) == 1:
        x = a[0]
        return [x * y for y in b]
    if len(b) == 1:
        y = b[0]
        return [x * y for x in a]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _prem(a, b):
    """Pseudo-remainder of a by b, up to a rational unit, in integer arithmetic."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    unit = lb in (1, -1)
    steps = 0
    while len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        if unit:
            f = lr * lb
            for i in range(db):
                r[i + shift] -= f * b[i]
        else:
            for i in range(len(r) - 1):
                r[i] *= lb
            for i in range(db):
                r[i + shift] -= lr * b[i]
            steps += 1
            if steps % 8 == 0:
                g = _content(r[:-1])
                if g > 1:
                    r = [x // g for x in r]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    if r:
        g = _content(r)
        if g > 1:
            r = [x // g for x in r]
    return r


def _gcd_prim(a, b):
    """Primitive gcd of two nonzero integer polynomials.

    This is the Euclidean algorithm over Q with each remainder rescaled to
    its primitive part; the rescaling only changes remainders by units of Q.
    """
    a = _primitive(a)
    b = _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            return b
        a, b = b, _primitive(r)
    if len(b) == 1:
        return [1]
    return a


def _exact_div_int(a, b):
    """Exact quotient a / b in Z[q]; raises if b does not divide a."""
    if not b:
        raise FieldError("division by zero polynomial")
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    out = [0] * max(len(a) - db, 0)
    while r and len(r) - 1 >= db:
        qc, rem = divmod(r[-1], lb)
        if rem:
            raise FieldError("inexact polynomial division")
        shift = len(r) - 1 - db
        out[shift] = qc
        for i, y in enumerate(b):
            r[i + shift] -= qc * y
        r = _trim(r)
    if r:
        raise FieldError("inexact polynomial division")
    return out


# ---------------------------------------------------------------------------


class PolyQ:
    """Univariate polynomial in q with rational coefficients."""

    __slots__ = ("_c", "_d", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = (), _raw=None):
        if _raw is not None:
            c, d = _raw
        else:
            fr = [Fraction(x) for x in coeffs]
            d = reduce(lambda u, v: u * v // math.gcd(u, v), (f.denominator for f in fr), 1)
            c = [int(f * d) for f in fr]
        c = _trim(c)
        if not c:
            d = 1
        else:
            g = math.gcd(_content(c), d)
            if g > 1:
                c = [x // g for x in c]
                d //= g
        self._c = tuple(c)
        self._d = d
        self._hash = None

    @classmethod
    def _from(cls, c, d=1) -> PolyQ:
        return cls(_raw=(c, d))

    @classmethod
    def const(cls, value: Scalar) -> PolyQ:
        f = Fraction(value)
        return cls._from([f.numerator], f.denominator)

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> PolyQ:
        f = Fraction(coeff)
        return cls._from([0] * degree + [f.numerator], f.denominator)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._d) for x in self._c)

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return Fraction(self._c[i], self._d)
        return Fraction(0)

    @property
    def degree(self) -> float:
        # -inf for the zero polynomial
        return len(self._c) - 1 if self._c else -math.inf

    def is_zero(self) -> bool:
        return not self._c

    def is_const(self) -> bool:
        return len(self._c) <= 1

    def leading(self) -> Fraction:
        return Fraction(self._c[-1], self._d) if self._c else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyQ.const(other)
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self._c == other._c and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._c, self._d))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        da, db = self._d, other._d
        n = max(len(a), len(b))
        out = [0] * n
        for i, x in enumerate(a):
            out[i] = x * db
        for i, y in enumerate(b):
            out[i] += y * da
        return PolyQ._from(out, da * db)

    __radd__ = __add__

    def __neg__(self):
        return PolyQ._from([-x for x in self._c], self._d)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return PolyQ._from(_mul(self._c, other._c), self._d * other._d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = PolyQ.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def divmod(self, other: PolyQ) -> tuple[PolyQ, PolyQ]:
        if other.is_zero():
            raise FieldError("division by zero in Q(q)")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        out = [Fraction(0)] * max(len(r) - db, 0)
        while len(r) - 1 >= db and r:
            qc = r[-1] / b[-1]
            shift = len(r) - 1 - db
            out[shift] = qc
            for i, y in enumerate(b):
                r[i + shift] -= qc * y
            r = _trim(r)
        return PolyQ(out), PolyQ(r)

    def exact_div(self, other: PolyQ) -> PolyQ:
        """Quotient when ``other`` divides ``self``; raises otherwise."""
        if other.is_zero():
            raise FieldError("division by zero in Q(q)")
        if self.is_zero():
            return self
        ca = _content(self._c)
        cb = _content(other._c)
        quo = _exact_div_int([x // ca for x in self._c], [x // cb for x in other._c])
        return PolyQ._from([x * ca * other._d for x in quo], self._d * cb)

    def gcd(self, other: PolyQ) -> PolyQ:
        """Monic gcd (zero if both are zero)."""
        if self.is_zero():
            return other.monic() if other else other
        if other.is_zero():
            return self.monic()
        return PolyQ._from(_gcd_prim(list(self._c), list(other._c))).monic()

    def monic(self) -> PolyQ:
        if self.is_zero():
            return self
        lc = self._c[-1]
        return PolyQ._from(list(self._c), lc) if lc > 0 else PolyQ._from([-x for x in self._c], -lc)

    def eval(self, x: Scalar) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc / self._d

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc / self._d

    def reverse(self, n: int | None = None) -> PolyQ:
        """q^n * p(1/q); n defaults to the degree."""
        if self.is_zero():
            return self
        deg = len(self._c) - 1
        if n is None:
            n = deg
        if n < deg:
            raise ValueError("reversal degree below polynomial degree")
        return PolyQ._from([0] * (n - deg) + list(reversed(self._c)), self._d)

    def low_order(self) -> int:
        """Largest power of q dividing self."""
        for i, c in enumerate(self._c):
            if c:
                return i
        return 0

    def shift_down(self, k: int) -> PolyQ:
        return PolyQ._from(list(self._c[k:]), self._d)

    def render(self) -> str:
        return _render_poly(self, "q")

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"PolyQ({self.render()!r})"


def _as_poly(x):
    if isinstance(x, PolyQ):
        return x
    if isinstance(x, (int, Fraction)):
        return PolyQ.const(x)
    return NotImplemented


def _fmt_scalar(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _render_poly(p: PolyQ, var: str) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p._c) - 1, -1, -1):
        c = p.coeff(i)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = _fmt_scalar(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{_fmt_scalar(a)}*{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


# ---------------------------------------------------------------------------


class RatQ:
    """Element of Q(q) as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _canonical=False):
        num = _as_poly(num) if not isinstance(num, PolyQ) else num
        if den is None:
            den = PolyQ.const(1)
            _canonical = True
        elif not isinstance(den, PolyQ):
            den = _as_poly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatQ needs polynomial or rational parts")
        if not _canonical:
            if den.is_zero():
                raise FieldError("division by zero in Q(q)")
            if num.is_zero():
                den = PolyQ.const(1)
            elif not den.is_const():
                g = num.gcd(den)
                if not g.is_const():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lc = den.leading()
            if lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, value: Scalar) -> RatQ:
        return cls(PolyQ.const(value))

    @classmethod
    def q_pow(cls, k: int) -> RatQ:
        if k >= 0:
            return cls(PolyQ.monomial(k))
        return cls(PolyQ.const(1), PolyQ.monomial(-k), _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_const() and self.num == 1

    def is_poly(self) -> bool:
        return self.den.is_const()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PolyQ)):
            other = RatQ(other)
        if not isinstance(other, RatQ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = _as_ratq(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_const() and d.is_const():
            return RatQ(a + c)
        if b == d:
            return RatQ(a + c, b)
        # Henrici: only the gcd of the combined numerator with g needs reducing
        g = b.gcd(d)
        if g.is_const():
            return RatQ(a * d + c * b, b * d, _canonical=True)
        b1 = b.exact_div(g)
        d1 = d.exact_div(g)
        n = a * d1 + c * b1
        if n.is_zero():
            return RatQ(n)
        h = n.gcd(g)
        if not h.is_const():
            n = n.exact_div(h)
            g = g.exact_div(h)
        return RatQ(n, b1 * d1 * g, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return RatQ(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _as_ratq(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratq(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatQ(PolyQ())
        a, b, c, d = self.num, self.den, other.num, other.den
        if not d.is_const():
            g = a.gcd(d)
            if not g.is_const():
                a, d = a.exact_div(g), d.exact_div(g)
        if not b.is_const():
            g = c.gcd(b)
            if not g.is_const():
                c, b = c.exact_div(g), b.exact_div(g)
        # monic divided by monic stays monic
        return RatQ(a * c, b * d, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> RatQ:
        if self.is_zero():
            raise FieldError("division by zero in Q(q)")
        return RatQ(self.den, self.num)

    def __truediv__(self, other):
        other = _as_ratq(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_ratq(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatQ(self.num ** e, self.den ** e, _canonical=True)

    def subst_qinv(self) -> RatQ:
        return ratq_subst_qinv(self)

    def eval(self, q0: Scalar) -> Fraction:
        return ratq_eval(self, q0)

    def eval_float(self, q0: float) -> float:
        return self.num.eval_float(q0) / self.den.eval_float(q0)

    def render(self) -> str:
        n = self.num.render()
        if self.den.is_const():
            return n
        d = self.den.render()
        if len(self.num._c) - sum(1 for c in self.num._c if c == 0) > 1 or "/" in n:
            n = f"({n})"
        if not re.fullmatch(r"q(\^\d+)?", d):
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RatQ({self.render()!r})"


def _as_ratq(x):
    if isinstance(x, RatQ):
        return x
    if isinstance(x, (int, Fraction, PolyQ)):
        return RatQ(x)
    return NotImplemented


def ratq_make(num: PolyQ, den: PolyQ) -> RatQ:
    return RatQ(num, den)


def ratq_arith(a: RatQ, b: RatQ, op: str) -> RatQ:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def ratq_subst_qinv(a: RatQ) -> RatQ:
    """Replace q by 1/q and clear the negative powers."""
    if a.is_zero():
        return a
    dn = len(a.num._c) - 1
    dd = len(a.den._c) - 1
    m = max(dn, dd)
    num, den = a.num.reverse(m), a.den.reverse(m)
    # reversal keeps coprime parts coprime (at most one side gains powers of q)
    lc = den.leading()
    if lc != 1:
        num, den = num * (1 / lc), den * (1 / lc)
    return RatQ(num, den, _canonical=True)


def ratq_eval(a: RatQ, q0: Scalar) -> Fraction:
    q0 = Fraction(q0)
    d = a.den.eval(q0)
    if d == 0:
        raise FieldError(f"pole at q = {q0}")
    return a.num.eval(q0) / d


# ---------------------------------------------------------------------------


Exp = tuple  # (i, j, k) exponents of X, Y, T
_ZERO = RatQ(PolyQ())
_ONE = RatQ(PolyQ.const(1))


class MPoly:
    """Sparse polynomial in X, Y, T with Q(q) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exp, object] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = _as_ratq(c)
            if c is NotImplemented:
                raise TypeError("MPoly coefficients must be rational functions of q")
            if not c.is_zero():
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def var(cls, name: str) -> MPoly:
        e = [0, 0, 0]
        e[VARS.index(name)] = 1
        return cls({tuple(e): _ONE})

    @classmethod
    def const(cls, c) -> MPoly:
        return cls({(0, 0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(e == (0, 0, 0) for e in self.terms)

    def const_term(self) -> RatQ:
        return self.terms.get((0, 0, 0), _ZERO)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        other = _as_mpoly(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = _as_mpoly(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_mpoly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_mpoly(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def scale(self, c) -> MPoly:
        c = _as_ratq(c)
        return MPoly({e: v * c for e, v in self.terms.items()})

    def map_coeffs(self, fn) -> MPoly:
        return MPoly({e: fn(c) for e, c in self.terms.items()})

    def deriv(self, var: str) -> MPoly:
        return mpoly_deriv(self, var)

    def subst(self, var_or_map, value=None) -> MPoly:
        if value is not None:
            return mpoly_subst(self, var_or_map, value)
        return _subst_many(self, var_or_map)

    def eval_float(self, q: float, X: float = 0.0, Y: float = 0.0, T: float = 0.0) -> float:
        total = 0.0
        for (i, j, k), c in self.terms.items():
            total += c.eval_float(q) * X ** i * Y ** j * T ** k
        return total

    def render(self) -> str:
        return _render_mpoly(self)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MPoly({self.render()!r})"


def _as_mpoly(x):
    if isinstance(x, MPoly):
        return x
    c = _as_ratq(x)
    if c is NotImplemented:
        return c
    return MPoly.const(c)


def mpoly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def mpoly_deriv(a: MPoly, var: str) -> MPoly:
    idx = VARS.index(var)
    out = {}
    for e, c in a.terms.items():
        if e[idx]:
            ne = list(e)
            ne[idx] -= 1
            out[tuple(ne)] = c * e[idx]
    return MPoly(out)


def mpoly_subst(a: MPoly, var: str, value) -> MPoly:
    return _subst_many(a, {var: value})


def _subst_many(a: MPoly, values: Mapping[str, object]) -> MPoly:
    """Simultaneous substitution of variables by MPoly or RatQ values."""
    idx = {VARS.index(v): _as_mpoly(val) for v, val in values.items()}
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = idx[i] ** k
        return powers[key]

    out = MPoly()
    for e, c in a.terms.items():
        kept = [0 if i in idx else e[i] for i in range(3)]
        term = MPoly({tuple(kept): c})
        for i in idx:
            if e[i]:
                term = term * power(i, e[i])
        out = out + term
    return out


def _coeff_text(c: RatQ) -> tuple[str, str]:
    """(sign, body) for a coefficient, body parenthesised when compound."""
    s = c.render()
    neg = s.startswith("-")
    body = s[1:] if neg else s
    if re.search(r"[+\-/]", body):
        neg = False
        body = f"({s})"
    return ("-" if neg else "+"), body


def _render_mpoly(a: MPoly) -> str:
    if a.is_zero():
        return "0"
    if a.is_const():
        return a.const_term().render()
    parts = []
    for e in sorted(a.terms, reverse=True):
        sign, body = _coeff_text(a.terms[e])
        mono = [n if p == 1 else f"{n}^{p}" for n, p in zip(VARS, e) if p]
        if mono:
            if body == "1":
                text = "*".join(mono)
            else:
                text = "*".join([body] + mono)
        else:
            text = body
        parts.append((sign, text))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out


# ---------------------------------------------------------------------------
# parser for the rendered text form

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


def _tokenize(s: str):
    pos = 0
    toks = []
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("name", name))
        else:
            toks.append(("op", op))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ValueError(f"expected {op!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> MPoly:
        v = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                v = v * rhs
            else:
                if not rhs.is_const():
                    raise ValueError("division by a non-constant in X, Y, T")
                v = v.scale(rhs.const_term().inverse())
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError(f"exponent must be a nonnegative integer in {self.text!r}")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MPoly.const(val)
        if kind == "name":
            if val == "q":
                return MPoly.const(RatQ(PolyQ.monomial(1)))
            if val in VARS:
                return MPoly.var(val)
            raise ValueError(f"unknown symbol {val!r}")
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.take(")")
            return v
        raise ValueError(f"unexpected token {val!r} in {self.text!r}")


def parse_mpoly(text: str) -> MPoly:
    return _Parser(text).parse()


def parse_ratq(text: str) -> RatQ:
    v = parse_mpoly(text)
    if not v.is_const():
        raise ValueError(f"{text!r} is not an element of Q(q)")
    return v.const_term()
