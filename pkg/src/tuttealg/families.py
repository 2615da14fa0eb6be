"""Families of binomial type: A_q(x) = exp[q C(x)] = sum a_n(q) x^n / n!.

Indices are tuples (multi-indices); one-dimensional families use 1-tuples
but accept plain ints wherever an index or cap is expected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from math import comb, factorial
from typing import Callable, Iterable, Mapping

from .errors import DomainError, InternalConsistencyError, StructuralError
from .exactalg import (
    MultiPoly,
    TruncatedSeries,
    as_poly,
    falling_factorial,
    implicit_knuth_solve,
    rising_factorial,
)
from .partitions import stirling2
from .report import CheckReport

Q = MultiPoly.var("q")
Q1 = MultiPoly.var("q1")
Q2 = MultiPoly.var("q2")
T = MultiPoly.var("t")
ZERO = MultiPoly.zero()
ONE = MultiPoly.one()


# -- multi-index helpers -------------------------------------------------------

def as_index(n) -> tuple[int, ...]:
    if isinstance(n, int):
        return (n,)
    return tuple(int(k) for k in n)


def indices_upto(cap) -> list[tuple[int, ...]]:
    """All multi-indices n <= cap, ordered by |n| then lexicographically."""
    cap = as_index(cap)
    out = list(product(*(range(c + 1) for c in cap)))
    out.sort(key=lambda n: (sum(n), n))
    return out


def _le(k, n) -> bool:
    return all(a <= b for a, b in zip(k, n))


def _sub(n, k) -> tuple[int, ...]:
    return tuple(a - b for a, b in zip(n, k))


def multi_binom(n, k) -> int:
    out = 1
    for a, b in zip(n, k):
        if b < 0 or b > a:
            return 0
        out *= comb(a, b)
    return out


def multi_factorial(n) -> int:
    out = 1
    for a in n:
        out *= factorial(a)
    return out


def _delta(dim: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(dim))


def index_key(n) -> str:
    return ",".join(str(k) for k in n)


def _series_vars(dim: int) -> tuple[str, ...]:
    return ("x",) if dim == 1 else tuple(f"x:{i + 1}" for i in range(dim))


def t_vars(dim: int) -> list[MultiPoly]:
    """Shift parameters: ``t`` in one dimension, ``t:1, t:2, ...`` otherwise."""
    if dim == 1:
        return [T]
    return [MultiPoly.var(f"t:{i + 1}") for i in range(dim)]


# -- data types ----------------------------------------------------------------

@dataclass(frozen=True)
class CoeffSequence:
    """Connected coefficients c_n for 0 < n <= cap (c_0 is absent)."""

    cap: tuple[int, ...]
    c: Mapping[tuple, MultiPoly]

    def __post_init__(self) -> None:
        cap = as_index(self.cap)
        clean = {}
        for n, v in self.c.items():
            n = as_index(n)
            if len(n) != len(cap):
                raise StructuralError(f"index {n} does not match cap {cap}")
            if not any(n):
                raise DomainError("c_0 is not part of a connected sequence")
            if not _le(n, cap):
                continue
            v = as_poly(v)
            if v:
                clean[n] = v
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "c", clean)

    @property
    def dim(self) -> int:
        return len(self.cap)

    def __getitem__(self, n) -> MultiPoly:
        return self.c.get(as_index(n), ZERO)

    def indices(self) -> list[tuple[int, ...]]:
        return [n for n in indices_upto(self.cap) if any(n)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffSequence):
            return NotImplemented
        return self.cap == other.cap and self.c == other.c

    @classmethod
    def from_function(cls, cap, fn: Callable[[tuple], object]) -> "CoeffSequence":
        cap = as_index(cap)
        return cls(cap, {n: as_poly(fn(n)) for n in indices_upto(cap) if any(n)})


@dataclass(frozen=True)
class BinomialFamily:
    """a_n(q) for n <= cap together with a-hat_n(q) = a_n(q) / q."""

    cap: tuple[int, ...]
    a: Mapping[tuple, MultiPoly]
    name: str = ""
    ahat: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        cap = as_index(self.cap)
        table = {}
        for n in indices_upto(cap):
            table[n] = ZERO
        for n, v in self.a.items():
            n = as_index(n)
            if len(n) != len(cap):
                raise StructuralError(f"index {n} does not match cap {cap}")
            if _le(n, cap):
                table[n] = as_poly(v)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "a", table)
        zero = (0,) * len(cap)
        if table[zero] != 1:
            raise DomainError("a binomial family needs a_0 = 1")
        hats = {}
        for n, v in table.items():
            if n == zero:
                continue
            if v.subs({"q": 0}):
                raise DomainError(f"a_{index_key(n)}(0) must vanish")
            if v.degree("q") > sum(n):
                raise DomainError(f"a_{index_key(n)} has q-degree above |n|")
            hats[n] = v.div_var("q")
        object.__setattr__(self, "ahat", hats)

    @property
    def dim(self) -> int:
        return len(self.cap)

    def indices(self) -> list[tuple[int, ...]]:
        return indices_upto(self.cap)

    def __getitem__(self, n) -> MultiPoly:
        return self.a[as_index(n)]

    def a_at(self, n, q) -> MultiPoly:
        return self.a[as_index(n)].subs({"q": q})

    def ahat_at(self, n, q) -> MultiPoly:
        return self.ahat[as_index(n)].subs({"q": q})

    def connected(self) -> CoeffSequence:
        """c_n = a-hat_n(0)."""
        return CoeffSequence(self.cap, {n: h.subs({"q": 0}) for n, h in self.ahat.items()})

    def egf(self, at=None) -> TruncatedSeries:
        """sum a_n(q) x^n / n! (optionally with q specialised)."""
        vals = self.a if at is None else {n: v.subs({"q": at}) for n, v in self.a.items()}
        return TruncatedSeries.from_egf(_series_vars(self.dim), self.cap,
                                        lambda n: vals[tuple(n)])

    def to_json(self) -> dict:
        return {index_key(n): self.a[n].to_text() for n in self.indices()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


# -- constructions -------------------------------------------------------------

def family_from_connected(c: CoeffSequence, name: str = "") -> BinomialFamily:
    """a_n(q) = q sum_{k >= delta_i} binom(n - delta_i, k - delta_i) c_k a_{n-k}(q).

    The pivot i is the first coordinate with n_i >= 1.
    """
    cap, dim = c.cap, c.dim
    zero = (0,) * dim
    a: dict[tuple, MultiPoly] = {zero: ONE}
    for n in indices_upto(cap):
        if n == zero:
            continue
        i = next(j for j, k in enumerate(n) if k)
        a[n] = _pivot_recursion(c, a, n, i)
    return BinomialFamily(cap, a, name)


def _pivot_recursion(c: CoeffSequence, a: Mapping, n: tuple, i: int) -> MultiPoly:
    delta = _delta(len(n), i)
    n_minus = _sub(n, delta)
    acc = ZERO
    for k, ck in c.c.items():
        if k[i] >= 1 and _le(k, n):
            acc = acc + ck * a[_sub(n, k)] * multi_binom(n_minus, _sub(k, delta))
    return acc * Q


def pivot_independence(c: CoeffSequence, family: BinomialFamily) -> CheckReport:
    """The recursion gives the same a_n whichever admissible pivot is used."""
    report = CheckReport("recursion_pivot_independence")
    for n in family.indices():
        for i, ni in enumerate(n):
            if ni >= 1:
                report.expect_equal(_pivot_recursion(c, family.a, n, i), family.a[n],
                                    n=index_key(n), i=i)
    return report


def _composition_powers(values: Mapping[tuple, MultiPoly], cap: tuple, lmax: int) -> list[dict]:
    """P_l(n) = sum over ordered (n_1..n_l), n_j != 0, of multinomial * prod values.

    Computed as n! [x^n] V(x)^l with V = sum values_n x^n / n!.
    """
    dim = len(cap)
    zero = (0,) * dim
    base = TruncatedSeries.from_egf(_series_vars(dim), cap,
                                    lambda n: values.get(tuple(n), ZERO) if any(n) else ZERO)
    out = []
    power = TruncatedSeries.one(_series_vars(dim), cap)
    for _ in range(lmax + 1):
        out.append({n: power[n] * multi_factorial(n) for n in indices_upto(cap)})
        power = power * base
    out[0][zero] = ONE
    return out


def connected_from_family(f: BinomialFamily) -> CoeffSequence:
    """c_n = sum_l (-q)^(l-1)/l * P_l(n) with a-hat(q); the q-dependence must cancel."""
    lmax = sum(f.cap)
    powers = _composition_powers(f.ahat, f.cap, lmax)
    c = {}
    for n in f.indices():
        if not any(n):
            continue
        acc = ZERO
        for ell in range(1, sum(n) + 1):
            term = powers[ell].get(n, ZERO)
            if term:
                acc = acc + term * ((-Q) ** (ell - 1)) / ell
        if "q" in acc.variables():
            raise InternalConsistencyError(
                f"connected coefficient {index_key(n)} still depends on q: {acc}")
        c[n] = acc
    return CoeffSequence(f.cap, c)


def family_from_values(values: Mapping, cap, name: str = "") -> BinomialFamily:
    """Family with A(x) = sum values_n x^n / n! (values_0 = 1), i.e. a_n(1) = values_n."""
    cap = as_index(cap)
    vals = {as_index(n): as_poly(v) for n, v in values.items()}
    zero = (0,) * len(cap)
    if vals.get(zero, ONE) != 1:
        raise DomainError("A(x) must have constant term 1")
    vals[zero] = ONE
    series = TruncatedSeries.from_egf(_series_vars(len(cap)), cap,
                                      lambda n: vals.get(tuple(n), ZERO))
    log = series.log()
    c = CoeffSequence(cap, {n: log[n] * multi_factorial(n) for n in indices_upto(cap) if any(n)})
    return family_from_connected(c, name)


def family_from_closed_form(cap, fn: Callable[[int], MultiPoly], name: str = "") -> BinomialFamily:
    cap = as_index(cap)
    if len(cap) != 1:
        raise StructuralError("closed forms are one-dimensional")
    return BinomialFamily(cap, {(n,): fn(n) for n in range(cap[0] + 1)}, name)


def _laguerre(n: int) -> MultiPoly:
    if n == 0:
        return ONE
    return sum(((-Q) ** k * (factorial(n) // factorial(k) * comb(n - 1, n - k))
                for k in range(1, n + 1)), ZERO)


def _bell_poly(n: int) -> MultiPoly:
    return sum((Q ** k * stirling2(n, k) for k in range(n + 1)), ZERO)


CLASSIC_NAMES = ("exp", "1+x", "geometric", "affine", "bell", "laguerre", "complete")


def classic_family(name: str, cap: int, alpha=1, beta=1, v="v") -> BinomialFamily:
    """Closed-form families: exp, 1+x, geometric, affine(alpha, beta), bell,
    laguerre, and the complete-graph family a_n(1) = (1+v)^(n(n-1)/2)."""
    if cap < 1:
        raise DomainError("cap must be >= 1")
    if name == "exp":
        return family_from_closed_form(cap, lambda n: Q ** n, "exp")
    if name == "1+x":
        return family_from_closed_form(cap, lambda n: falling_factorial(Q, n), "1+x")
    if name == "geometric":
        return family_from_closed_form(cap, lambda n: rising_factorial(Q, n), "geometric")
    if name == "affine":
        al, be = as_poly(alpha), as_poly(beta)
        return family_from_closed_form(
            cap, lambda n: al ** n * falling_factorial(be * Q, n), f"affine({al},{be})")
    if name == "bell":
        return family_from_closed_form(cap, _bell_poly, "bell")
    if name == "laguerre":
        return family_from_closed_form(cap, _laguerre, "laguerre")
    if name == "complete":
        w = 1 + (MultiPoly.var(v) if isinstance(v, str) else as_poly(v))
        return family_from_values({(n,): w ** (n * (n - 1) // 2) for n in range(cap + 1)},
                                  cap, "complete")
    raise DomainError(f"unknown family {name!r}; choose from {', '.join(CLASSIC_NAMES)}")


def classic_connected(name: str, cap: int, alpha=1, beta=1) -> CoeffSequence:
    """The connected coefficients c_n behind each closed-form family."""
    al, be = as_poly(alpha), as_poly(beta)
    table: dict[str, Callable[[int], MultiPoly]] = {
        "exp": lambda n: ONE if n == 1 else ZERO,
        "1+x": lambda n: as_poly((-1) ** (n - 1) * factorial(n - 1)),
        "geometric": lambda n: as_poly(factorial(n - 1)),
        "affine": lambda n: be * al ** n * ((-1) ** (n - 1) * factorial(n - 1)),
        "bell": lambda n: ONE,
        "laguerre": lambda n: as_poly(-factorial(n)),
    }
    if name not in table:
        raise DomainError(f"no closed-form connected sequence for {name!r}")
    return CoeffSequence.from_function(cap, lambda n: table[name](n[0]))


def symbolic_connected(cap) -> CoeffSequence:
    """Generic sequence: each c_n is its own indeterminate ``c:n``."""
    return CoeffSequence.from_function(cap, lambda n: MultiPoly.var(f"c:{index_key(n)}"))


# -- power expansion ---------------------------------------------------------------

def family_power_expand(f: BinomialFamily, q1, q2) -> dict[tuple, MultiPoly]:
    """RHS_n = sum_l (1/l!) prod_{j<l}(q2 - j q1) P_l(n) with a-hat(q1)."""
    q1, q2 = as_poly(q1), as_poly(q2)
    hats = {n: h.subs({"q": q1}) for n, h in f.ahat.items()}
    lmax = sum(f.cap)
    powers = _composition_powers(hats, f.cap, lmax)
    prefactor = [ONE]
    for ell in range(1, lmax + 1):
        prefactor.append(prefactor[-1] * (q2 - q1 * (ell - 1)))
    out = {}
    for n in f.indices():
        acc = ZERO
        for ell in range(sum(n) + 1):
            term = powers[ell].get(n, ZERO)
            if term:
                acc = acc + term * prefactor[ell] / factorial(ell)
        out[n] = acc
    return out


def _partition_sum(values: Mapping, cap, weight: Callable[[int], MultiPoly]) -> dict:
    """sum_l weight(l) P_l(n) for every n."""
    lmax = sum(cap)
    powers = _composition_powers(values, cap, lmax)
    out = {}
    for n in indices_upto(cap):
        acc = ZERO
        for ell in range(sum(n) + 1):
            term = powers[ell].get(n, ZERO)
            if term:
                acc = acc + term * weight(ell)
        out[n] = acc
    return out


def check_power_expand(f: BinomialFamily, q1=Q1, q2=Q2, report: CheckReport | None = None) -> CheckReport:
    """The q1/q2 expansion of a_n(q2) plus its classical special cases."""
    report = report or CheckReport("power_expand")
    report.add_member(f.name)
    zero = (0,) * f.dim
    rhs = family_power_expand(f, q1, q2)
    for n in f.indices():
        report.expect_equal(rhs[n], f.a_at(n, q2), graph=f.name, form="q1,q2", n=index_key(n))
    # q1 = 0: a_n(q) from c_n
    c = f.connected()
    direct = _partition_sum(c.c, f.cap, lambda l: Q ** l / factorial(l))
    for n in f.indices():
        report.expect_equal(direct[n], f.a[n], graph=f.name, form="q1=0", n=index_key(n))
    # q2 = 0: q c_n from a(q), and c_n from a-hat(q)
    inv1 = _partition_sum({n: v for n, v in f.a.items() if n != zero}, f.cap,
                          lambda l: as_poly((-1) ** (l - 1)) / l if l else ZERO)
    inv2 = _partition_sum(f.ahat, f.cap,
                          lambda l: (-Q) ** (l - 1) / l if l else ZERO)
    for n in f.indices():
        if n == zero:
            continue
        report.expect_equal(inv1[n], Q * c[n], graph=f.name, form="inverse", n=index_key(n))
        report.expect_equal(inv2[n], c[n], graph=f.name, form="inverse-hat", n=index_key(n))
    # q2 = -q1 and the r-scaling laws
    r = MultiPoly.var("r")
    nonzero = {n: v for n, v in f.a.items() if n != zero}
    minus = _partition_sum(nonzero, f.cap, lambda l: as_poly((-1) ** l))
    scaled = _partition_sum(nonzero, f.cap, lambda l: falling_factorial(r, l) / factorial(l))
    neg_scaled = _partition_sum(nonzero, f.cap,
                                lambda l: rising_factorial(r, l) * (-1) ** l / factorial(l))
    for n in f.indices():
        report.expect_equal(minus[n], f.a_at(n, -Q), graph=f.name, form="-q", n=index_key(n))
        report.expect_equal(scaled[n], f.a_at(n, r * Q), graph=f.name, form="rq", n=index_key(n))
        report.expect_equal(neg_scaled[n], f.a_at(n, -r * Q), graph=f.name, form="-rq",
                            n=index_key(n))
    return report


# -- identity checks -----------------------------------------------------------------

def _within(f: BinomialFamily, n_max) -> list[tuple]:
    if n_max is None:
        return f.indices()
    if isinstance(n_max, int):
        return [n for n in f.indices() if sum(n) <= n_max]
    bound = as_index(n_max)
    return [n for n in f.indices() if _le(n, bound)]


def _at_table(f: BinomialFamily, qv: MultiPoly, hat: bool) -> dict:
    src = f.ahat if hat else f.a
    return {n: v.subs({"q": qv}) for n, v in src.items()}


def check_convolutions(f: BinomialFamily, n_max=None, report: CheckReport | None = None) -> CheckReport:
    """Binomial convolutions and the q1/q2 recursions, every pivot coordinate."""
    report = report or CheckReport("convolutions")
    report.add_member(f.name)
    a1, a2 = _at_table(f, Q1, False), _at_table(f, Q2, False)
    h1 = _at_table(f, Q1, True)
    s = Q1 + Q2
    for n in _within(f, n_max):
        lower = [k for k in indices_upto(n)]
        lhs = sum((a1[k] * a2[_sub(n, k)] * multi_binom(n, k) for k in lower), ZERO)
        report.expect_equal(lhs, f.a_at(n, s), graph=f.name, identity="id1", n=index_key(n))
        if not any(n):
            continue
        hat_sum = f.ahat_at(n, s)
        for i, ni in enumerate(n):
            if ni == 0:
                continue
            delta = _delta(f.dim, i)
            nm = _sub(n, delta)
            id2 = ZERO
            rec = ZERO
            bis = ZERO
            for k in lower:
                if not any(k):
                    continue
                base = h1[k] * a2[_sub(n, k)]
                id2 = id2 + base * (multi_binom(n, k) * k[i])
                inner = multi_binom(nm, _sub(k, delta)) if k[i] else 0
                rec = rec + base * (s * inner - Q1 * multi_binom(n, k))
                if inner:
                    bis = bis + base * inner
            report.expect_equal(id2, hat_sum * ni, graph=f.name, identity="id2",
                                n=index_key(n), i=i)
            report.expect_equal(rec, a2[n], graph=f.name, identity="recursion_q1q2",
                                n=index_key(n), i=i)
            report.expect_equal(bis, hat_sum, graph=f.name, identity="id2_hat",
                                n=index_key(n), i=i)
    return report


def _dot(k, ts) -> MultiPoly:
    return sum((t * kk for kk, t in zip(k, ts) if kk), ZERO)


class _Shifted:
    """Memoised q-substitutions a_n(expr), a-hat_n(expr) for one family."""

    def __init__(self, f: BinomialFamily) -> None:
        self.f = f
        self._cache: dict = {}

    def a(self, n, expr: MultiPoly) -> MultiPoly:
        key = ("a", n, expr)
        if key not in self._cache:
            self._cache[key] = self.f.a_at(n, expr)
        return self._cache[key]

    def ahat(self, n, expr: MultiPoly) -> MultiPoly:
        key = ("h", n, expr)
        if key not in self._cache:
            self._cache[key] = self.f.ahat_at(n, expr)
        return self._cache[key]

    def qa(self, n, qv: MultiPoly, shift: MultiPoly) -> MultiPoly:
        """q a-hat_n(q + shift), read as 1 when n = 0."""
        if not any(n):
            return ONE
        return qv * self.ahat(n, qv + shift)


def check_abel(f: BinomialFamily, n_max=None, report: CheckReport | None = None) -> CheckReport:
    """Abel-type extensions in (q1, q2, t); all four forms in one dimension."""
    report = report or CheckReport("abel")
    report.add_member(f.name)
    ts = t_vars(f.dim)
    sh = _Shifted(f)
    for n in _within(f, n_max):
        lower = indices_upto(n)
        nt = _dot(n, ts)
        total = Q1 + Q2
        lhs1 = sum((sh.qa(k, Q1, _dot(k, ts)) * sh.qa(_sub(n, k), Q2, _dot(_sub(n, k), ts))
                    * multi_binom(n, k) for k in lower), ZERO)
        rhs1 = ONE if not any(n) else total * sh.ahat(n, total + nt)
        report.expect_equal(lhs1, rhs1, graph=f.name, identity="abel1", n=index_key(n))
        for i, ni in enumerate(n):
            if ni == 0:
                continue
            lhs2 = sum((sh.ahat(k, Q1 + _dot(k, ts)) * sh.qa(_sub(n, k), Q2, _dot(_sub(n, k), ts))
                        * (multi_binom(n, k) * k[i]) for k in lower if k[i]), ZERO)
            report.expect_equal(lhs2, sh.ahat(n, total + nt) * ni, graph=f.name,
                                identity="abel2", n=index_key(n), i=i)
        if f.dim != 1:
            continue
        lhs3 = sum((sh.a(k, Q1 + _dot(k, ts)) * sh.qa(_sub(n, k), Q2, _dot(_sub(n, k), ts))
                    * multi_binom(n, k) for k in lower), ZERO)
        report.expect_equal(lhs3, sh.a(n, total + nt), graph=f.name, identity="abel3",
                            n=index_key(n))
        lhs4 = sum((sh.qa(k, Q1, _dot(k, ts)) * sh.a(_sub(n, k), Q2 - _dot(k, ts))
                    * multi_binom(n, k) for k in lower), ZERO)
        report.expect_equal(lhs4, sh.a(n, total), graph=f.name, identity="abel4", n=index_key(n))
    return report


def knuth_transform(f: BinomialFamily, t: str = "t", n_max: int | None = None,
                    report: CheckReport | None = None) -> BinomialFamily:
    """Family a_n(q; t) from the implicit series A(x;t) = A(x A(x;t)^t).

    Each entry is compared with q a-hat_n(q + n t); a mismatch is recorded
    in ``report`` if one is given and raised otherwise.
    """
    if f.dim != 1:
        raise StructuralError("the implicit transform is one-dimensional")
    cap = f.cap[0] if n_max is None else min(n_max, f.cap[0])
    tv = MultiPoly.var(t)
    base = TruncatedSeries.from_egf(("x",), cap, lambda n: f.a_at(n, 1))
    solved = implicit_knuth_solve(base, tv, cap)
    powered = solved.pow(Q)
    table = {(n,): powered.egf_coefficient(n) for n in range(cap + 1)}
    for n in range(cap + 1):
        expected = ONE if n == 0 else Q * f.ahat_at(n, Q + tv * n)
        if report is not None:
            report.add_member(f.name)
            report.expect_equal(table[(n,)], expected, graph=f.name, n=n)
        elif table[(n,)] != expected:
            raise InternalConsistencyError(
                f"transform coefficient {n} differs from the shifted family: "
                f"{table[(n,)] - expected}")
    return BinomialFamily((cap,), table, f"{f.name}[{t}]")


def check_roundtrip(c: CoeffSequence, report: CheckReport | None = None) -> CheckReport:
    report = report or CheckReport("connected_roundtrip")
    f = family_from_connected(c)
    back = connected_from_family(f)
    for n in c.indices():
        report.expect_equal(back[n], c[n], n=index_key(n))
    return report


def check_generating_function(f: BinomialFamily, report: CheckReport | None = None) -> CheckReport:
    """Coefficients of (sum a_n(1) x^n/n!)^q reproduce a_n(q)."""
    report = report or CheckReport("generating_function")
    report.add_member(f.name)
    powered = f.egf(at=1).pow(Q)
    for n in f.indices():
        report.expect_equal(powered[n] * multi_factorial(n), f.a[n], graph=f.name, n=index_key(n))
    return report


def default_families(cap: int = 6) -> list[BinomialFamily]:
    """The closed-form families used by the identity suite."""
    return [
        classic_family("exp", cap),
        classic_family("1+x", cap),
        classic_family("geometric", cap),
        classic_family("affine", cap, 1, 1),
        classic_family("affine", cap, MultiPoly.var("alpha"), MultiPoly.var("beta")),
        classic_family("bell", cap),
        classic_family("laguerre", cap),
        classic_family("complete", cap),
    ]


def default_multi_families() -> list[BinomialFamily]:
    """Two-index families: a generic symbolic one and exp(q log(e^x + e^y - 1))."""
    generic = family_from_connected(symbolic_connected((2, 2)), "generic(2,2)")
    cap = (3, 3)
    vals = {n: (1 if n[0] == 0 or n[1] == 0 else 0) for n in indices_upto(cap)}
    bip = family_from_values(vals, cap, "e^x+e^y-1")
    return [generic, bip]


def iter_checks(families: Iterable[BinomialFamily], n_max=None) -> list[CheckReport]:
    conv = CheckReport("convolutions")
    abel = CheckReport("abel")
    for f in families:
        check_convolutions(f, n_max, conv)
        check_abel(f, n_max, abel)
    return [conv, abel]
