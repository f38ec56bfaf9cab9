"""Identity registry and check runner.

Every entry names one statement, the parameter points it is checked at, and
a builder that returns a ``Report`` for a single point.  Expected statuses
for points that are not plain ``verified`` ship in ``expected_status.json``.
"""

from __future__ import annotations

import fnmatch
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from itertools import combinations_with_replacement
from typing import Callable

from . import bernstein as bern
from . import carlitz, double_integrals as dbl, padic
from .field import MPoly, RatQ
from .qcomb import qnum_T, stirling_expansion
from .report import CORRECTED, ERROR, FAILED, VERIFIED, Report, compare

__all__ = [
    "IdentityEntry",
    "REGISTRY",
    "run_check",
    "run_suite",
    "expected_status",
    "params_key",
    "UnknownCheck",
]


class UnknownCheck(KeyError):
    pass


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    mode: str  # exact-mpoly, exact-ratq, numeric-real, numeric-padic
    statement: str
    points: Callable[[], list]
    build: Callable[..., Report]


def params_key(params: dict) -> str:
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


def _pairs_report(id, params, pairs, notes="") -> Report:
    reports = [compare(id, params, a, b) for a, b in pairs]
    if len(reports) == 1:
        r = reports[0]
        r.notes = notes
        return r
    status = VERIFIED if all(r.status == VERIFIED for r in reports) else FAILED
    return Report(id, dict(params), status,
                  lhs=" ; ".join(r.lhs for r in reports),
                  rhs=" ; ".join(r.rhs for r in reports), notes=notes)


# ---------------------------------------------------------------------------
# builders


def _thm1(k, n):
    return _pairs_report("thm1", {"k": k, "n": n}, [bern.thm1_pair(k, n)])


def _deriv_sym(k, n):
    return _pairs_report("lemma2-sym", {"k": k, "n": n}, bern.derivative_pairs(k, n),
                         notes="d/dX and d/dY of the polynomial form; chain-rule factors checked numerically")


DERIV_RTOL = 1e-5
EQ13_TOL = 1e-12


def _deriv_num(k, n, q, x1, x2):
    d = bern.derivative_numeric(k, n, bern.NumericCtx(q, x1, x2))
    errs = []
    for var in ("x1", "x2"):
        fd, f = d[f"fd_{var}"], d[f"formula_{var}"]
        errs.append(abs(fd - f) / max(abs(f), 1e-300))
    ok = max(errs) <= DERIV_RTOL
    return Report("lemma2-num", {"k": k, "n": n, "q": q, "x1": x1, "x2": x2},
                  VERIFIED if ok else FAILED,
                  lhs=f"{d['fd_x1']:.12e} ; {d['fd_x2']:.12e}",
                  rhs=f"{d['formula_x1']:.12e} ; {d['formula_x2']:.12e}",
                  notes=f"central differences h=1e-6, max relative error {max(errs):.3e} (tolerance {DERIV_RTOL:g})")


def _eq10(k, n):
    return _pairs_report("eq10", {"k": k, "n": n}, [bern.eq10_pair(k, n)])


def _moment_sum(n, m):
    total = MPoly()
    for k in range(n + 1):
        w = RatQ.const(k ** m) / n ** m if n else RatQ.const(1 if m == 0 else 0)
        total = total + bern.basis(k, n).expr.scale(w)
    return total


def _eq12(n):
    return _pairs_report("eq12", {"n": n}, [(_moment_sum(n, 0), (bern.ONE + bern.X - bern.Y) ** n)])


def _moment1(n):
    rhs = bern.X * (bern.ONE + bern.X - bern.Y) ** (n - 1)
    return _pairs_report("moment1", {"n": n}, [(_moment_sum(n, 1), rhs)])


def _eq13(n):
    lhs = bern.moments_symbolic(n)[2]
    rhs = bern.moments_closed(n)[2]
    diag = (bern.X ** 2).scale(RatQ.const(n - 1) / n) + bern.X.scale(RatQ.const(1) / n)
    return _pairs_report("eq13", {"n": n}, [(lhs, rhs), (lhs.subst("Y", bern.X), diag)],
                         notes="general two-variable form ; diagonal x1 = x2")


def _eq13_num(n, q, x):
    ctx = bern.NumericCtx(q, x, x)
    samples = [(k / n) ** 2 for k in range(n + 1)]
    value = bern.operator_apply(samples, n, ctx)
    qx = bern.qnum_real(x, q)
    closed = (n - 1) / n * qx ** 2 + qx / n
    err = abs(value - closed)
    ok = err <= EQ13_TOL * max(1.0, abs(closed))
    return Report("eq13-num", {"n": n, "q": q, "x": x}, VERIFIED if ok else FAILED,
                  lhs=repr(value), rhs=repr(closed),
                  notes=f"abs error {err:.3e}; distance to [x]_q^2 = {abs(value - qx * qx):.3e}")


def _eq14(k, n):
    return _pairs_report("eq14", {"k": k, "n": n}, [bern.eq14_pair(k, n)])


def _thm3(j, n):
    return _pairs_report("thm3", {"j": j, "n": n}, [bern.thm3_pair(j, n)],
                         notes="multiplied through by (1+X-Y)^(n-j)")


def _lincomb(k, n):
    params = {"k": k, "n": n}
    lhs, rhs = bern.lincomb_pair(k, n)
    if lhs == rhs:
        return compare("lincomb", params, lhs, rhs, notes="literal display holds after clearing Y^k")
    for shift in (-k, k):
        l2, r2 = bern.lincomb_pair(k, n, shift)
        if l2 == r2:
            return Report("lincomb", params, CORRECTED, l2.render(), r2.render(),
                          notes=f"literal display fails; holds with Y^(l{shift:+d})")
    return compare("lincomb", params, lhs, rhs, notes="no l-shift variant holds")


def _stirling(j):
    params = {"j": j}
    target = qnum_T() ** j
    literal = stirling_expansion(j, lambda n, k: (k, n - k))
    if literal == target:
        return compare("stirling", params, literal, target,
                       notes="literal indexing S_q(k, j-k) holds at this j")
    standard = stirling_expansion(j)
    status = CORRECTED if standard == target else FAILED
    return Report("stirling", params, status, standard.render(), target.render(),
                  notes=f"literal indexing S_q(k, j-k) fails (gives {literal.render()}); "
                        "standard S_q(j, k) expansion checked")


def _genfun(k, N=8):
    coeffs = bern.genfun_coefficients(k, N)
    pairs = [(coeffs[n], bern.basis(k, n).expr) for n in range(N + 1)]
    return _pairs_report("genfun", {"k": k, "N": N}, pairs)


def _eq16(n):
    return _pairs_report("eq16", {"n": n}, [carlitz.reflection_pair(n)],
                         notes="identity in T = q^x; same content as the integral reflection")


def _eq17(n):
    return carlitz.beta_at_two_identity(n)


def _eq18(n):
    closed = carlitz.integral_one_minus_x_pow(n)
    expansion = carlitz.integral_one_minus_x_pow_expansion(n)
    notes = ""
    if n <= 1:
        Q = RatQ.q_pow(1)
        stated = Q * Q * carlitz.carlitz_beta_qinv(n) + (n + 1) - Q
        holds = stated == expansion
        notes = (f"n<=1 is outside the stated range; closed form from direct moments; "
                 f"large-n closed form {'holds' if holds else 'does not hold'} here ({stated.render()})")
    return compare("eq18", {"n": n}, closed, expansion, notes=notes)


def _thm4(k, n):
    value, branch = dbl.double_integral_closed_form(k, n)
    oracle = dbl.double_integral_oracle(k, n)
    notes = f"branch {branch}; oracle integrates the expanded B_(k,n) term by term"
    if branch == "n=k+1":
        notes += "; boundary case outside the generic closed form, uses 1 + 1/[2]_q"
    if branch not in ("n<k", "n=k=0"):
        notes += "; factorisation uses [x1]_q^k (literal exponent n)"
    return compare("thm4", {"k": k, "n": n}, oracle, value, notes=notes)


def _thm5_literal(k, n):
    return compare("thm5-literal", {"k": k, "n": n}, dbl.thm5_literal_lhs(n, k), dbl.thm5_rhs(k),
                   notes="C(n,k) beta_k = RHS(k) as stated")


def _thm5_corrected(k):
    return compare("thm5-corrected", {"k": k}, carlitz.carlitz_beta(k), dbl.thm5_rhs(k),
                   notes="beta_k = RHS(k)")


def _thm6_literal(k, n, m):
    return compare("thm6-literal", {"k": k, "m": m, "n": n}, dbl.thm6_literal_lhs(n, m, k), dbl.thm6_rhs(k),
                   notes="C(n,k) C(m,k) beta_k = RHS(2k) as stated")


def _structural(rhs, reduced, label) -> str:
    if rhs != reduced:
        raise AssertionError(f"RHS builder does not reduce to {label}")
    return f"RHS coincides with the k-form at {label}"


def _thm6_corrected(k):
    rhs = dbl.thm6_rhs(k)
    notes = _structural(rhs, dbl.thm5_rhs(2 * k), f"k={2 * k}")
    return compare("thm6-corrected", {"k": k}, carlitz.carlitz_beta(2 * k), rhs, notes=f"beta_2k = RHS(2k); {notes}")


def _thm7_literal(s, k, ns):
    ns = tuple(ns)
    return compare("thm7-literal", {"k": k, "ns": list(ns), "s": s}, dbl.thm7_literal_lhs(ns, k),
                   dbl.thm7_rhs(s, k), notes="prod C(n_i,k) beta_sk = RHS(sk) as stated")


def _thm7_corrected(s, k):
    rhs = dbl.thm7_rhs(s, k)
    notes = _structural(rhs, dbl.thm5_rhs(s * k), f"k={s * k}")
    return compare("thm7-corrected", {"k": k, "s": s}, carlitz.carlitz_beta(s * k), rhs,
                   notes=f"beta_sk = RHS(sk); {notes}")


def _eq4_padic(n, p, q0, N_max=5, M=12):
    return padic.check_eq4_padic(n, p, q0, N_max, M)


def _eq15_padic(n, x0, p, q0, N_max=5, M=12):
    return padic.check_eq15_padic(n, x0, p, q0, N_max, M)


def _eq18_padic(n, p, q0, N_max=5, M=12):
    return padic.check_eq18_padic(n, p, q0, N_max, M)


# ---------------------------------------------------------------------------
# parameter ranges


def _kn(n_range, k_of_n):
    return lambda: [{"k": k, "n": n} for n in n_range for k in k_of_n(n)]


def _thm7_points():
    out = []
    for s in range(1, 5):
        for k in range(3):
            for ns in combinations_with_replacement((k, k + 1), s):
                out.append({"s": s, "k": k, "ns": list(ns)})
    return out


_E = IdentityEntry
_ENTRIES = [
    _E("thm1", "exact-mpoly", "(1-Y) B_(k,n) + X B_(k-1,n) = B_(k,n+1)",
       _kn(range(12), lambda n: range(n + 2)), _thm1),
    _E("lemma2-sym", "exact-mpoly", "dB_(k,n)/dX = n B_(k-1,n-1), dB_(k,n)/dY = -n B_(k,n-1)",
       _kn(range(1, 11), lambda n: range(n + 1)), _deriv_sym),
    _E("lemma2-num", "numeric-real", "finite differences vs derivative formulas with log q",
       lambda: [{"k": k, "n": n, "q": 0.5, "x1": 0.3, "x2": 0.7} for k, n in ((1, 3), (2, 5))], _deriv_num),
    _E("eq10", "exact-mpoly", "B_(n-k,n)(1-x2, 1-x1 | 1/q) = B_(k,n)(x1, x2 | q)",
       _kn(range(11), lambda n: range(n + 1)), _eq10),
    _E("eq12", "exact-mpoly", "sum_k B_(k,n) = (1+X-Y)^n", lambda: [{"n": n} for n in range(11)], _eq12),
    _E("moment1", "exact-mpoly", "sum_k (k/n) B_(k,n) = X (1+X-Y)^(n-1)",
       lambda: [{"n": n} for n in range(1, 11)], _moment1),
    _E("eq13", "exact-mpoly", "sum_k (k/n)^2 B_(k,n) = (n-1)/n X^2 (1+X-Y)^(n-2) + X/n (1+X-Y)^(n-1)",
       lambda: [{"n": n} for n in range(2, 11)], _eq13),
    _E("eq13-num", "numeric-real", "operator on t^2 at x1 = x2 = x equals (n-1)/n [x]^2 + [x]/n",
       lambda: [{"n": n, "q": 0.9, "x": 0.5} for n in (10, 100, 1000)], _eq13_num),
    _E("eq14", "exact-mpoly", "(n-k)/n B_(k,n) + (k+1)/n B_(k+1,n) = (1+X-Y) B_(k,n-1)",
       _kn(range(1, 13), lambda n: range(n)), _eq14),
    _E("thm3", "exact-mpoly", "sum_(k>=j) C(k,j)/C(n,j) B_(k,n) = X^j (1+X-Y)^(n-j)",
       lambda: [{"j": j, "n": n} for n in range(11) for j in range(n + 1)], _thm3),
    _E("lincomb", "exact-mpoly", "Y^k B_(k,n) = X^k sum_l C(l,k) C(n,l) (-1)^(l-k) Y^l",
       _kn(range(9), lambda n: range(n + 1)), _lincomb),
    _E("stirling", "exact-mpoly", "[x]_q^j = sum_k q^C(k,2) [x choose k]_q [k]_q! S_q(j,k)",
       lambda: [{"j": j} for j in range(7)], _stirling),
    _E("genfun", "exact-mpoly", "n! [t^n] (tX)^k exp(t(1-Y))/k! = B_(k,n)",
       lambda: [{"k": k, "N": 8} for k in range(5)], _genfun),
    _E("eq16", "exact-mpoly", "beta_(n,1/q)(1-x) = (-1)^n q^n beta_(n,q)(x)",
       lambda: [{"n": n} for n in range(11)], _eq16),
    _E("eq17", "exact-ratq", "beta_(n,q)(2) = (n+1) - 1/q + beta_(n,q)/q^2",
       lambda: [{"n": n} for n in range(2, 11)], _eq17),
    _E("eq18", "exact-ratq", "int [1-x]_(1/q)^n dmu_q = q^2 beta_(n,1/q) + (n+1) - q",
       lambda: [{"n": n} for n in range(13)], _eq18),
    _E("thm4", "exact-ratq", "double integral of B_(k,n), all branches",
       _kn(range(11), lambda n: range(n + 2)), _thm4),
    _E("thm5-literal", "exact-ratq", "C(n,k) beta_k = RHS(k)",
       lambda: [{"k": k, "n": n} for k in range(9) for n in (k, k + 2, k + 3)], _thm5_literal),
    _E("thm5-corrected", "exact-ratq", "beta_k = RHS(k)", lambda: [{"k": k} for k in range(9)], _thm5_corrected),
    _E("thm6-literal", "exact-ratq", "C(n,k) C(m,k) beta_k = RHS(2k)",
       lambda: [{"k": k, "n": n, "m": m} for k in range(4) for n in (k, k + 2) for m in (k, k + 2)],
       _thm6_literal),
    _E("thm6-corrected", "exact-ratq", "beta_2k = RHS(2k)", lambda: [{"k": k} for k in range(4)], _thm6_corrected),
    _E("thm7-literal", "exact-ratq", "prod C(n_i,k) beta_sk = RHS(sk)", _thm7_points, _thm7_literal),
    _E("thm7-corrected", "exact-ratq", "beta_sk = RHS(sk)",
       lambda: [{"s": s, "k": k} for s in range(1, 5) for k in range(3)], _thm7_corrected),
    _E("eq4-padic", "numeric-padic", "Riemann sums of [x]_q^n converge to beta_n",
       lambda: [{"n": n, "p": p, "q0": 1 + p} for p in (3, 5) for n in range(4)], _eq4_padic),
    _E("eq15-padic", "numeric-padic", "reflection of shifted integrals under q -> 1/q",
       lambda: [{"n": n, "x0": x0, "p": 5, "q0": 6} for n in range(3) for x0 in range(3)], _eq15_padic),
    _E("eq18-padic", "numeric-padic", "Riemann sums of [1-x]_(1/q)^n converge to the closed form",
       lambda: [{"n": n, "p": p, "q0": 1 + p} for n, p in ((2, 5), (3, 5), (3, 3))], _eq18_padic),
]

REGISTRY: dict[str, IdentityEntry] = {e.id: e for e in _ENTRIES}


# ---------------------------------------------------------------------------


_expected_cache: dict | None = None


def expected_status(id: str, params: dict) -> str:
    global _expected_cache
    if _expected_cache is None:
        text = resources.files("qbernstein").joinpath("expected_status.json").read_text()
        _expected_cache = json.loads(text)
    return _expected_cache.get(id, {}).get(params_key(params), VERIFIED)


def run_check(id: str, params: dict | None = None) -> Report:
    try:
        entry = REGISTRY[id]
    except KeyError:
        raise UnknownCheck(f"unknown check {id!r}") from None
    params = dict(params or {})
    points = entry.points()
    if params_key(params) not in {params_key(p) for p in points}:
        raise ValueError(f"parameters {params} outside the declared range of {id!r}")
    start = time.perf_counter()
    try:
        report = entry.build(**params)
    except Exception as exc:  # reported, never raised, so one bad point cannot stop a suite
        report = Report(id, params, ERROR, notes=f"{type(exc).__name__}: {exc}")
    report.params = params
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def _is_unexpected(report: Report) -> bool:
    if report.status == ERROR:
        return True
    return report.status == FAILED and expected_status(report.id, report.params) != FAILED


def run_suite(filter: str | None = None, jobs: int = 1) -> tuple[list[Report], int]:
    """Run every matching entry over its full range; reports in registry order."""
    pattern = filter or "*"
    tasks = [(e.id, p) for e in _ENTRIES if fnmatch.fnmatchcase(e.id, pattern) for p in e.points()]
    if jobs > 1:
        # fill the memo tables before fanning out
        carlitz.carlitz_beta(24)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda t: run_check(*t), tasks))
    else:
        reports = [run_check(i, p) for i, p in tasks]
    code = 1 if any(_is_unexpected(r) for r in reports) else 0
    return reports, code
