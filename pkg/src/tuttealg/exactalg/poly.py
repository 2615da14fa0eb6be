"""Sparse multivariate polynomials over the rationals.

A polynomial is a map from monomials to nonzero exact coefficients
(``int`` or ``fractions.Fraction``).  Monomials are stored as tuples of
``(variable_index, exponent)`` pairs sorted by index, where the index is
handed out by a :class:`VariableRegistry`.  The registry also fixes the
display order used by the canonical text and JSON renderings.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from ..errors import DomainError, StructuralError

Scalar = Union[int, Fraction]

# Variables that always sort first, in this order; everything else sorts by name.
PRIORITY_VARIABLES = ("q", "q1", "q2", "q3", "t", "y", "r", "s", "lambda")
_PRIORITY_RANK = {name: i for i, name in enumerate(PRIORITY_VARIABLES)}


class VariableRegistry:
    """Interns variable names and defines their total order."""

    def __init__(self) -> None:
        self._names: list[str] = []
        self._index: dict[str, int] = {}
        self._lock = threading.Lock()

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            pass
        if not isinstance(name, str) or not name:
            raise StructuralError(f"invalid variable name {name!r}")
        with self._lock:
            if name not in self._index:
                self._index[name] = len(self._names)
                self._names.append(name)
            return self._index[name]

    def name(self, index: int) -> str:
        return self._names[index]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @staticmethod
    def order_key(name: str) -> tuple:
        if name in _PRIORITY_RANK:
            return (0, _PRIORITY_RANK[name], "")
        return (1, 0, name)

    def sorted_names(self, names: Iterable[str]) -> list[str]:
        return sorted(names, key=self.order_key)


DEFAULT_REGISTRY = VariableRegistry()


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    if a[-1][0] < b[0][0]:
        return a + b
    if b[-1][0] < a[0][0]:
        return b + a
    merged = dict(a)
    for i, e in b:
        merged[i] = merged.get(i, 0) + e
    return tuple(sorted(merged.items()))


def _format_scalar(c: Scalar) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``p/q`` or a finite decimal into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not an exact rational: {text!r}") from exc


class MultiPoly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_registry", "_hash")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None,
                 registry: VariableRegistry | None = None) -> None:
        """Build from ``{((name, exp), ...): coefficient}``; zero terms are dropped."""
        self._registry = registry or DEFAULT_REGISTRY
        self._hash = None
        clean: dict[tuple, Scalar] = {}
        for mono, c in (terms or {}).items():
            c = _check_scalar(c)
            key = self._intern(mono)
            total = clean.get(key, 0) + c
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self._terms = clean

    @classmethod
    def _make(cls, terms: dict, registry: VariableRegistry) -> "MultiPoly":
        p = object.__new__(cls)
        p._terms = terms
        p._registry = registry
        p._hash = None
        return p

    def _intern(self, mono) -> tuple:
        if isinstance(mono, Mapping):
            mono = mono.items()
        acc: dict[int, int] = {}
        for name, e in mono:
            if not isinstance(e, int) or e < 0:
                raise DomainError(f"exponent must be a nonnegative int, got {e!r}")
            if e:
                i = self._registry.index(name)
                acc[i] = acc.get(i, 0) + e
        return tuple(sorted(acc.items()))

    # -- constructors -------------------------------------------------------

    @classmethod
    def var(cls, name: str, registry: VariableRegistry | None = None) -> "MultiPoly":
        registry = registry or DEFAULT_REGISTRY
        return cls._make({((registry.index(name), 1),): 1}, registry)

    @classmethod
    def const(cls, c: Scalar, registry: VariableRegistry | None = None) -> "MultiPoly":
        c = _check_scalar(c)
        return cls._make({(): c} if c else {}, registry or DEFAULT_REGISTRY)

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff: Scalar = 1,
                 registry: VariableRegistry | None = None) -> "MultiPoly":
        return cls({tuple(exponents.items()): coeff}, registry)

    @classmethod
    def zero(cls, registry: VariableRegistry | None = None) -> "MultiPoly":
        return cls._make({}, registry or DEFAULT_REGISTRY)

    @classmethod
    def one(cls, registry: VariableRegistry | None = None) -> "MultiPoly":
        return cls._make({(): 1}, registry or DEFAULT_REGISTRY)

    # -- basic queries ------------------------------------------------------

    @property
    def registry(self) -> VariableRegistry:
        return self._registry

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> Scalar:
        return self._terms.get((), 0)

    def to_scalar(self) -> Scalar:
        if not self.is_constant():
            raise DomainError(f"polynomial {self} is not constant")
        return self.constant_term()

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self._terms.values())

    def terms(self) -> dict[tuple, Scalar]:
        """``{((name, exp), ...): coefficient}`` with names in registry order."""
        out = {}
        for mono, c in self._terms.items():
            named = [(self._registry.name(i), e) for i, e in mono]
            named.sort(key=lambda ne: VariableRegistry.order_key(ne[0]))
            out[tuple(named)] = c
        return out

    def variables(self) -> list[str]:
        idx = {i for mono in self._terms for i, _ in mono}
        return self._registry.sorted_names(self._registry.name(i) for i in idx)

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in ``name``; the zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if name is None:
            return max(sum(e for _, e in mono) for mono in self._terms)
        if name not in self._registry:
            return 0
        i = self._registry.index(name)
        return max(dict(mono).get(i, 0) for mono in self._terms)

    def coefficient(self, name: str, k: int) -> "MultiPoly":
        """Coefficient of ``name**k`` viewed as a polynomial in the other variables."""
        if name not in self._registry:
            return self if k == 0 else self.zero(self._registry)
        i = self._registry.index(name)
        out = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            if d.get(i, 0) == k:
                d.pop(i, None)
                out[tuple(sorted(d.items()))] = c
        return self._make(out, self._registry)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other._registry is not self._registry:
                raise StructuralError("polynomials belong to different variable registries")
            return other
        if isinstance(other, Rational):
            return MultiPoly.const(other, self._registry)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for mono, c in small.items():
            total = out.get(mono, 0) + c
            if total:
                out[mono] = total
            else:
                del out[mono]
        return self._make(out, self._registry)

    __radd__ = __add__

    def __neg__(self):
        return self._make({m: -c for m, c in self._terms.items()}, self._registry)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            total = out.get(mono, 0) - c
            if total:
                out[mono] = total
            else:
                del out[mono]
        return self._make(out, self._registry)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return self._make({}, self._registry)
        if len(b) == 1 and () in b:
            c = b[()]
            return self._make({m: x * c for m, x in a.items()}, self._registry)
        if len(a) == 1 and () in a:
            c = a[()]
            return self._make({m: x * c for m, x in b.items()}, self._registry)
        out: dict[tuple, Scalar] = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                out[m] = get(m, 0) + c1 * c2
        return self._make({m: c for m, c in out.items() if c}, self._registry)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise DomainError("division by a non-constant polynomial is not supported")
            other = other.constant_term()
        if not isinstance(other, Rational):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("polynomial division by zero")
        inv = Fraction(1) / Fraction(other)
        return self * inv

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError(f"power must be a nonnegative int, got {k!r}")
        result = self.one(self._registry)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            if other._registry is not self._registry:
                return False
            return self._terms == other._terms
        if isinstance(other, Rational):
            return self._terms == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus / substitution -------------------------------------------

    def diff(self, name: str) -> "MultiPoly":
        if name not in self._registry:
            return self.zero(self._registry)
        i = self._registry.index(name)
        out = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            e = d.get(i, 0)
            if e:
                if e == 1:
                    del d[i]
                else:
                    d[i] = e - 1
                out[tuple(sorted(d.items()))] = c * e
        return self._make(out, self._registry)

    def div_var(self, name: str) -> "MultiPoly":
        """Exact division by the variable ``name``; every term must contain it."""
        i = self._registry.index(name)
        out = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            e = d.get(i, 0)
            if not e:
                raise DomainError(f"{self} is not divisible by {name}")
            if e == 1:
                del d[i]
            else:
                d[i] = e - 1
            out[tuple(sorted(d.items()))] = c
        return self._make(out, self._registry)

    def subs(self, mapping: Mapping[str, "MultiPoly | Scalar"]) -> "MultiPoly":
        """Simultaneous substitution of variables by polynomials or scalars."""
        reg = self._registry
        targets: dict[int, MultiPoly] = {}
        for name, value in mapping.items():
            if name in reg:
                value = self._coerce(value)
                if value is NotImplemented:
                    raise StructuralError(f"cannot substitute {name} by {value!r}")
                targets[reg.index(name)] = value
        if not targets:
            return self
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            key = (i, e)
            if key not in powers:
                powers[key] = targets[i] ** e
            return powers[key]

        factors: dict[tuple, MultiPoly] = {}
        out: dict[tuple, Scalar] = {}
        for mono, c in self._terms.items():
            kept = tuple((i, e) for i, e in mono if i not in targets)
            hit = tuple((i, e) for i, e in mono if i in targets)
            f = factors.get(hit)
            if f is None:
                f = self.one(reg)
                for i, e in hit:
                    f = f * power(i, e)
                factors[hit] = f
            for m2, c2 in f._terms.items():
                m = _mono_mul(kept, m2)
                out[m] = out.get(m, 0) + c * c2
        return self._make({m: c for m, c in out.items() if c}, reg)

    def evaluate(self, mapping: Mapping[str, Scalar]) -> Scalar:
        return self.subs(mapping).to_scalar()

    # -- rendering ------------------------------------------------------------

    def _ordered(self) -> tuple[list[str], list[tuple[list[int], Scalar]]]:
        names = self.variables()
        pos = {self._registry.index(n): k for k, n in enumerate(names)}
        rows = []
        for mono, c in self._terms.items():
            vec = [0] * len(names)
            for i, e in mono:
                vec[pos[i]] = e
            rows.append((vec, c))
        rows.sort(key=lambda r: (-sum(r[0]), [-e for e in r[0]]))
        return names, rows

    def to_text(self) -> str:
        """Canonical text: graded-lex descending, ``3/2*q^2*v:0 - q + 1``."""
        if not self._terms:
            return "0"
        names, rows = self._ordered()
        pieces = []
        for vec, c in rows:
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, vec) if e]
            mag = abs(Fraction(c))
            if not factors:
                body = _format_scalar(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = _format_scalar(mag) + "*" + "*".join(factors)
            pieces.append((c < 0, body))
        neg, body = pieces[0]
        out = ("-" if neg else "") + body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    __str__ = to_text

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r})"

    def to_json(self) -> dict:
        names, rows = self._ordered()
        return {"vars": names,
                "terms": [{"c": _format_scalar(c), "e": vec} for vec, c in rows]}

    @classmethod
    def from_json(cls, data: Mapping, registry: VariableRegistry | None = None) -> "MultiPoly":
        names = list(data["vars"])
        terms = {}
        for t in data["terms"]:
            e = t["e"]
            if len(e) != len(names):
                raise StructuralError("exponent vector length does not match vars")
            terms[tuple(zip(names, e))] = parse_rational(str(t["c"]))
        return cls(terms, registry)

    @classmethod
    def parse(cls, text: str, registry: VariableRegistry | None = None) -> "MultiPoly":
        """Parse infix text (``+ - * / ^`` and parentheses) into a polynomial."""
        return _Parser(text, registry or DEFAULT_REGISTRY).parse()

    def __reduce__(self):
        # Registry indices are process-local; pickle by variable name.
        return (_from_named_terms, (self.terms(),))


def _from_named_terms(terms):
    return MultiPoly(terms)


def _check_scalar(c) -> Scalar:
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise DomainError(f"coefficient must be an exact rational, got {c!r}")
    if isinstance(c, int):
        return c
    return Fraction(c)


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_:#.]*)|(.))")


class _Parser:
    def __init__(self, text: str, registry: VariableRegistry) -> None:
        self.text = text
        self.registry = registry
        self.tokens: list[tuple[str, str]] = []
        for num, name, op in _TOKEN.findall(text):
            if num:
                self.tokens.append(("num", num))
            elif name:
                self.tokens.append(("name", name))
            elif op.strip():
                self.tokens.append(("op", op))
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _take(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def _fail(self, msg: str):
        raise DomainError(f"cannot parse polynomial {self.text!r}: {msg}")

    def parse(self) -> MultiPoly:
        if not self.tokens:
            self._fail("empty input")
        p = self._expr()
        if self.pos != len(self.tokens):
            self._fail(f"unexpected token {self._peek()[1]!r}")
        return p

    def _expr(self) -> MultiPoly:
        sign = 1
        if self._peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self._take()[1] == "-" else 1
        p = self._term() * sign
        while self._peek() in (("op", "+"), ("op", "-")):
            op = self._take()[1]
            t = self._term()
            p = p + t if op == "+" else p - t
        return p

    def _term(self) -> MultiPoly:
        p = self._power()
        while self._peek() in (("op", "*"), ("op", "/")):
            op = self._take()[1]
            f = self._power()
            if op == "*":
                p = p * f
            else:
                if not f.is_constant() or f.is_zero():
                    self._fail("divisor must be a nonzero constant")
                p = p / f.constant_term()
        return p

    def _power(self) -> MultiPoly:
        base = self._atom()
        if self._peek() == ("op", "^"):
            self._take()
            kind, val = self._take()
            if kind != "num" or not val.isdigit():
                self._fail("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def _atom(self) -> MultiPoly:
        kind, val = self._take()
        if kind == "num":
            return MultiPoly.const(Fraction(val), self.registry)
        if kind == "name":
            return MultiPoly.var(val, self.registry)
        if (kind, val) == ("op", "("):
            p = self._expr()
            if self._take() != ("op", ")"):
                self._fail("missing ')'")
            return p
        if (kind, val) == ("op", "-"):
            return -self._power()
        self._fail(f"unexpected token {val!r}")


def var(name: str) -> MultiPoly:
    return MultiPoly.var(name)


def const(c: Scalar) -> MultiPoly:
    return MultiPoly.const(c)


def as_poly(x) -> MultiPoly:
    """Coerce a scalar, variable name or polynomial to a MultiPoly."""
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, str):
        return MultiPoly.parse(x)
    return MultiPoly.const(x)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if a.registry is not b.registry:
        raise StructuralError("polynomials belong to different variable registries")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown operation {op!r}")


def falling_factorial(p, k: int) -> MultiPoly:
    """p (p-1) ... (p-k+1); the empty product for k = 0."""
    if k < 0:
        raise DomainError("falling factorial needs k >= 0")
    p = as_poly(p)
    out = MultiPoly.one(p.registry)
    for j in range(k):
        out = out * (p - j)
    return out


def rising_factorial(p, k: int) -> MultiPoly:
    """p (p+1) ... (p+k-1)."""
    if k < 0:
        raise DomainError("rising factorial needs k >= 0")
    p = as_poly(p)
    out = MultiPoly.one(p.registry)
    for j in range(k):
        out = out * (p + j)
    return out
