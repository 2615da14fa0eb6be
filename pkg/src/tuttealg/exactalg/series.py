"""Truncated formal power series with polynomial coefficients.

A series lives in one or more *series variables* (``x`` or ``x:1, x:2``)
that are kept apart from the polynomial variables of its coefficients.
Truncation is either by total degree (``cap`` an int) or per variable
(``cap`` a tuple), and every stored exponent respects the cap.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

from ..errors import DomainError, RangeError, StructuralError
from .poly import MultiPoly, as_poly

Exponent = tuple


@lru_cache(maxsize=None)
def _exponents(nvars: int, cap) -> tuple[Exponent, ...]:
    if isinstance(cap, int):
        out: list[Exponent] = [()]
        for _ in range(nvars):
            out = [e + (k,) for e in out for k in range(cap + 1 - sum(e))]
    else:
        out = [()]
        for c in cap:
            out = [e + (k,) for e in out for k in range(c + 1)]
    out.sort(key=lambda e: (sum(e), e))
    return tuple(out)


def _within(e: Exponent, cap) -> bool:
    if isinstance(cap, int):
        return sum(e) <= cap
    return all(k <= c for k, c in zip(e, cap))


def _le(k: Exponent, n: Exponent) -> bool:
    return all(a <= b for a, b in zip(k, n))


def _sub(n: Exponent, k: Exponent) -> Exponent:
    return tuple(a - b for a, b in zip(n, k))


def _normalise_cap(cap, nvars: int):
    if isinstance(cap, int):
        if cap < 0:
            raise DomainError("truncation cap must be >= 0")
        return cap
    cap = tuple(int(c) for c in cap)
    if len(cap) != nvars or any(c < 0 for c in cap):
        raise StructuralError(f"per-variable cap {cap} does not fit {nvars} variables")
    return cap


def _min_cap(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return min(a, b)
    if isinstance(a, tuple) and isinstance(b, tuple):
        return tuple(min(x, y) for x, y in zip(a, b))
    raise StructuralError("cannot combine a total-degree cap with per-variable caps")


class TruncatedSeries:
    """Immutable truncated power series ``sum_n coeff[n] * x^n``."""

    __slots__ = ("variables", "cap", "_coeffs")

    def __init__(self, variables: Sequence[str], cap, coeffs: Mapping | None = None) -> None:
        self.variables = tuple(variables)
        if not self.variables:
            raise StructuralError("a series needs at least one series variable")
        self.cap = _normalise_cap(cap, len(self.variables))
        clean: dict[Exponent, MultiPoly] = {}
        for e, c in (coeffs or {}).items():
            if isinstance(e, int):
                e = (e,)
            e = tuple(e)
            if len(e) != len(self.variables) or any(k < 0 for k in e):
                raise StructuralError(f"bad series exponent {e}")
            if not _within(e, self.cap):
                continue
            c = as_poly(c)
            if c:
                clean[e] = clean[e] + c if e in clean else c
        self._coeffs = {e: c for e, c in clean.items() if c}

    @classmethod
    def _make(cls, variables, cap, coeffs) -> "TruncatedSeries":
        s = object.__new__(cls)
        s.variables = variables
        s.cap = cap
        s._coeffs = coeffs
        return s

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_egf(cls, variables: Sequence[str], cap,
                 coeff: Callable[[Exponent], MultiPoly | Rational]) -> "TruncatedSeries":
        """Series with coefficient ``coeff(n) / n!`` at every ``n`` within the cap."""
        variables = tuple(variables)
        cap = _normalise_cap(cap, len(variables))
        out = {}
        for n in _exponents(len(variables), cap):
            c = as_poly(coeff(n))
            if c:
                denom = 1
                for k in n:
                    denom *= factorial(k)
                out[n] = c / denom if denom != 1 else c
        return cls._make(variables, cap, out)

    @classmethod
    def one(cls, variables: Sequence[str], cap) -> "TruncatedSeries":
        return cls(variables, cap, {(0,) * len(tuple(variables)): 1})

    @classmethod
    def variable(cls, variables: Sequence[str], cap, which: int = 0) -> "TruncatedSeries":
        variables = tuple(variables)
        e = tuple(1 if i == which else 0 for i in range(len(variables)))
        return cls(variables, cap, {e: 1})

    # -- access -------------------------------------------------------------

    def exponents(self) -> tuple[Exponent, ...]:
        return _exponents(len(self.variables), self.cap)

    def within(self, e: Exponent) -> bool:
        return _within(tuple(e), self.cap)

    def __getitem__(self, e) -> MultiPoly:
        if isinstance(e, int):
            e = (e,)
        e = tuple(e)
        if len(e) != len(self.variables):
            raise StructuralError(f"exponent {e} does not match {len(self.variables)} variables")
        if not _within(e, self.cap):
            raise RangeError(f"exponent {e} lies beyond the truncation cap {self.cap}")
        c = self._coeffs.get(e)
        return c if c is not None else MultiPoly.zero()

    def egf_coefficient(self, e) -> MultiPoly:
        """``n! * [x^n]``: the coefficient read as an exponential generating function."""
        if isinstance(e, int):
            e = (e,)
        c = self[e]
        mult = 1
        for k in e:
            mult *= factorial(k)
        return c * mult

    def items(self):
        return sorted(self._coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def constant(self) -> MultiPoly:
        return self[(0,) * len(self.variables)]

    def truncate(self, cap) -> "TruncatedSeries":
        cap = _min_cap(self.cap, _normalise_cap(cap, len(self.variables)))
        return self._make(self.variables, cap,
                          {e: c for e, c in self._coeffs.items() if _within(e, cap)})

    def map_coefficients(self, fn: Callable[[MultiPoly], MultiPoly]) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, self.cap, {e: fn(c) for e, c in self._coeffs.items()})

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "TruncatedSeries"):
        if other.variables != self.variables:
            raise StructuralError(f"series variables differ: {self.variables} vs {other.variables}")
        return _min_cap(self.cap, other.cap)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries(self.variables, self.cap,
                                          {(0,) * len(self.variables): as_poly(other)})
        cap = self._check(other)
        out = {e: c for e, c in self._coeffs.items() if _within(e, cap)}
        for e, c in other._coeffs.items():
            if _within(e, cap):
                s = out[e] + c if e in out else c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return self._make(self.variables, cap, out)

    __radd__ = __add__

    def __neg__(self):
        return self._make(self.variables, self.cap, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            p = as_poly(other)
            return self._make(self.variables, self.cap,
                              {e: c * p for e, c in self._coeffs.items() if c * p})
        cap = self._check(other)
        out: dict[Exponent, MultiPoly] = {}
        for a, ca in self._coeffs.items():
            for b, cb in other._coeffs.items():
                e = tuple(x + y for x, y in zip(a, b))
                if _within(e, cap):
                    prod = ca * cb
                    out[e] = out[e] + prod if e in out else prod
        return self._make(self.variables, cap, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.variables != self.variables:
            return False
        cap = _min_cap(self.cap, other.cap)
        mine = {e: c for e, c in self._coeffs.items() if _within(e, cap)}
        theirs = {e: c for e, c in other._coeffs.items() if _within(e, cap)}
        return mine == theirs

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {c}" for e, c in self.items())
        return f"TruncatedSeries({self.variables}, cap={self.cap}, {{{body}}})"

    # -- transcendental operations -------------------------------------------

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term (Euler-operator recursion)."""
        zero = (0,) * len(self.variables)
        if self.constant():
            raise DomainError("exp needs a series with zero constant term")
        g = [(k, c * sum(k)) for k, c in self.items() if k != zero]
        out: dict[Exponent, MultiPoly] = {zero: MultiPoly.one()}
        for n in self.exponents():
            size = sum(n)
            if size == 0:
                continue
            acc = MultiPoly.zero()
            for k, wk in g:
                if _le(k, n):
                    rest = out.get(_sub(n, k))
                    if rest is not None:
                        acc = acc + wk * rest
            if acc:
                out[n] = acc / size
        return self._make(self.variables, self.cap, out)

    def log(self) -> "TruncatedSeries":
        """log of a series with constant term 1."""
        zero = (0,) * len(self.variables)
        if self.constant() != 1:
            raise DomainError("log needs a series with constant term 1")
        s = {k: c for k, c in self._coeffs.items() if k != zero}
        out: dict[Exponent, MultiPoly] = {}
        for n in self.exponents():
            size = sum(n)
            if size == 0:
                continue
            acc = s.get(n, MultiPoly.zero()) * size
            for k, gk in out.items():
                if k != n and _le(k, n):
                    rest = s.get(_sub(n, k))
                    if rest is not None:
                        acc = acc - gk * rest * sum(k)
            if acc:
                out[n] = acc / size
        return self._make(self.variables, self.cap, out)

    def pow(self, exponent) -> "TruncatedSeries":
        """``self ** exponent := exp(exponent * log self)`` for symbolic exponents."""
        return (self.log() * as_poly(exponent)).exp()

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Substitute a zero-constant-term series into this univariate series."""
        if len(self.variables) != 1:
            raise StructuralError("only univariate series can be composed into")
        if inner.constant():
            raise DomainError("inner series must have zero constant term")
        need = max(sum(e) for e in inner.exponents())
        top = self.cap if isinstance(self.cap, int) else self.cap[0]
        if need > top:
            raise StructuralError(f"outer series truncated at {top} but inner cap needs {need}")
        result = TruncatedSeries(inner.variables, inner.cap, {})
        for n in range(top, -1, -1):
            result = result * inner + self[(n,)]
        return result


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    return s.exp()


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    return s.log()


def series_pow_symbolic(s: TruncatedSeries, exponent) -> TruncatedSeries:
    return s.pow(exponent)


def extract_coeff(s: TruncatedSeries, expvec) -> MultiPoly:
    return s[expvec]


def implicit_knuth_solve(a: TruncatedSeries, t, cap: int) -> TruncatedSeries:
    """The series W with W(0) = 1 and ``W = A(x * W^t)``, truncated at ``cap``.

    Fixed-point iteration from ``W = A``; coefficient n is final after n
    rounds because ``x * W^t`` has valuation one, so cap + 1 rounds suffice.
    """
    if len(a.variables) != 1:
        raise StructuralError("the implicit equation is univariate")
    if a.constant() != 1:
        raise DomainError("A must have constant term 1")
    a = a.truncate(cap)
    x = TruncatedSeries.variable(a.variables, a.cap)
    w = a
    for _ in range(cap + 1):
        w = a.compose(x * w.pow(t))
    return w


def series_from_sequence(values: Iterable, var: str = "x") -> TruncatedSeries:
    """Univariate EGF ``sum values[n] x^n / n!`` truncated at ``len(values) - 1``."""
    values = [as_poly(v) for v in values]
    return TruncatedSeries.from_egf((var,), len(values) - 1, lambda n: values[n[0]])


__all__ = [
    "TruncatedSeries",
    "series_exp",
    "series_log",
    "series_pow_symbolic",
    "extract_coeff",
    "implicit_knuth_solve",
    "series_from_sequence",
]
