"""Multivariate Tutte polynomial and its specialisations by brute force."""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import DomainError, ResourceError
from .exactalg import MultiPoly, TruncatedSeries, as_poly, extract_coeff, falling_factorial
from .graphs import MultiGraph, UnionFind, induced_subgraph, is_independent
from .partitions import enumerate_partitions
from .report import CheckReport

EDGE_CAP_ENV = "TUTTE_MAX_BRUTE_EDGES"
COLORING_CAP_ENV = "TUTTE_MAX_COLORINGS"
DEFAULT_EDGE_CAP = 24
DEFAULT_COLORING_CAP = 2_000_000

Q = MultiPoly.var("q")
LAMBDA = MultiPoly.var("lambda")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{name} must be an integer, got {raw!r}") from None


def edge_cap() -> int:
    return _env_int(EDGE_CAP_ENV, DEFAULT_EDGE_CAP)


@dataclass(frozen=True)
class TuttePolynomial:
    value: MultiPoly
    graph: str


def _weight_classes(g: MultiGraph) -> tuple[list[MultiPoly], list[int]]:
    """Distinct edge weights, and the class index of every edge."""
    classes: list[MultiPoly] = []
    index: dict[MultiPoly, int] = {}
    of_edge = []
    for w in g.weights():
        if w not in index:
            index[w] = len(classes)
            classes.append(w)
        of_edge.append(index[w])
    return classes, of_edge


def _subset_census(g: MultiGraph) -> tuple[list[MultiPoly], Counter]:
    """Count edge subsets by (components, edges used per weight class).

    Subsets are visited in Gray-code order; the union-find is rebuilt for
    each subset.
    """
    m = g.m
    cap = edge_cap()
    if m > cap:
        raise ResourceError(
            f"{m} edges exceed the brute-force cap of {cap}; raise {EDGE_CAP_ENV} to allow it")
    classes, of_edge = _weight_classes(g)
    pos = {v: i for i, v in enumerate(g.vertices)}
    ends = [(pos[u], pos[v]) for u, v, _ in g.edges]
    n = g.n
    census: Counter = Counter()
    counts = [0] * len(classes)
    present = [False] * m
    prev = 0
    for i in range(1 << m):
        gray = i ^ (i >> 1)
        if i:
            bit = (gray ^ prev).bit_length() - 1
            present[bit] = not present[bit]
            counts[of_edge[bit]] += 1 if present[bit] else -1
        prev = gray
        uf = UnionFind(n)
        for e in range(m):
            if present[e]:
                uf.union(*ends[e])
        census[(uf.count, tuple(counts))] += 1
    return classes, census


def _weight_product(classes: Sequence[MultiPoly], counts: Sequence[int], cache: dict) -> MultiPoly:
    out = MultiPoly.one()
    for c, k in zip(classes, counts):
        if k:
            key = (c, k)
            if key not in cache:
                cache[key] = c ** k
            out = out * cache[key]
    return out


def _collect(classes, census, qpower) -> MultiPoly:
    """Sum over census entries of mult * qpower(k, size) * prod w^count."""
    cache: dict = {}
    out = MultiPoly.zero()
    for (k, counts), mult in sorted(census.items()):
        factor = qpower(k, sum(counts))
        if factor is None:
            continue
        out = out + _weight_product(classes, counts, cache) * factor * mult
    return out


def z_subset(g: MultiGraph) -> TuttePolynomial:
    """Z_G(q, v) as the sum over all edge subsets."""
    if g.n == 0:
        return TuttePolynomial(MultiPoly.one(), g.fingerprint())
    classes, census = _subset_census(g)
    qpow = [Q ** k for k in range(g.n + 1)]
    value = _collect(classes, census, lambda k, size: qpow[k])
    return TuttePolynomial(value, g.fingerprint())


def z_poly(g: MultiGraph) -> MultiPoly:
    return z_subset(g).value


def zhat(g: MultiGraph) -> MultiPoly:
    """Z_G with one factor of q divided out."""
    if g.n == 0:
        raise DomainError("the reduced polynomial is undefined for the empty graph")
    classes, census = _subset_census(g)
    qpow = [Q ** k for k in range(g.n)]
    return _collect(classes, census, lambda k, size: qpow[k - 1])


def connected_poly(g: MultiGraph) -> MultiPoly:
    """Generating polynomial of connected spanning subgraphs."""
    if g.n == 0:
        raise DomainError("the connected-subgraph polynomial is undefined for the empty graph")
    classes, census = _subset_census(g)
    return _collect(classes, census, lambda k, size: 1 if k == 1 else None)


def connected_lambda(g: MultiGraph) -> MultiPoly:
    """Connected spanning subgraphs weighted by lambda^(cyclomatic number)."""
    if g.n == 0:
        raise DomainError("the connected-subgraph polynomial is undefined for the empty graph")
    classes, census = _subset_census(g)
    n = g.n
    return _collect(classes, census,
                    lambda k, size: LAMBDA ** (size - n + 1) if k == 1 else None)


def chromatic(g: MultiGraph) -> MultiPoly:
    """P_G(q) = Z_G(q, -1)."""
    return z_poly(g.with_equal_weights(-1))


def z_coloring(g: MultiGraph, q: int) -> MultiPoly:
    """Z_G at a positive integer q as a sum over all q-colourings."""
    if not isinstance(q, int) or q < 1:
        raise DomainError("the colouring sum needs a positive integer q")
    n = g.n
    cap = _env_int(COLORING_CAP_ENV, DEFAULT_COLORING_CAP)
    if q ** n > cap:
        raise ResourceError(
            f"{q}^{n} colourings exceed the cap of {cap}; raise {COLORING_CAP_ENV} to allow it")
    pos = {v: i for i, v in enumerate(g.vertices)}
    ends = [(pos[u], pos[v]) for u, v, _ in g.edges]
    masks: Counter = Counter()
    for sigma in product(range(q), repeat=n):
        mask = 0
        for e, (a, b) in enumerate(ends):
            if sigma[a] == sigma[b]:
                mask |= 1 << e
        masks[mask] += 1
    factors = [1 + w for w in g.weights()]
    out = MultiPoly.zero()
    for mask, mult in sorted(masks.items()):
        term = MultiPoly.const(mult)
        for e in range(g.m):
            if mask >> e & 1:
                term = term * factors[e]
        out = out + term
    return out


def _require_loopless(g: MultiGraph) -> None:
    if g.has_loop():
        raise DomainError("this operation needs a loopless graph")


def independent_partition_counts(g: MultiGraph) -> list[int]:
    """[Q_G(1), ..., Q_G(n)]: partitions of V into k independent blocks."""
    _require_loopless(g)
    counts = [0] * g.n
    for pi in enumerate_partitions(g.vertices):
        if all(is_independent(g, b) for b in pi.blocks):
            counts[len(pi) - 1] += 1
    return counts


def chromatic_from_partition_counts(counts: Sequence[int]) -> MultiPoly:
    return sum((falling_factorial(Q, k + 1) * c for k, c in enumerate(counts)), MultiPoly.zero())


def series_vars(g: MultiGraph) -> tuple[str, ...]:
    return tuple(f"x:{v}" for v in g.vertices)


def independence_poly(g: MultiGraph) -> TruncatedSeries:
    """Sum over independent vertex sets U of prod_{i in U} x_i (per-vertex cap 1)."""
    _require_loopless(g)
    n = g.n
    coeffs = {}
    for bits in product((0, 1), repeat=n):
        chosen = [v for v, b in zip(g.vertices, bits) if b]
        if is_independent(g, chosen):
            coeffs[bits] = 1
    return TruncatedSeries(series_vars(g), (1,) * n, coeffs)


def lass_chromatic(g: MultiGraph, subset: Iterable[str], powered: TruncatedSeries | None = None) -> MultiPoly:
    """Chromatic polynomial of G[W] read off I_G(x)^q."""
    subset = set(subset)
    if powered is None:
        powered = independence_poly(g).pow(Q)
    idx = tuple(1 if v in subset else 0 for v in g.vertices)
    return extract_coeff(powered, idx)


def check_sign_inequality(g: MultiGraph, values: Sequence, lmax: int,
                          grid: Sequence, report: CheckReport | None = None) -> CheckReport:
    """Sign pattern of lambda-derivatives of the generalised connected sum.

    ``values`` assigns an exact rational in [-1, 0] to every edge.
    """
    if report is None:
        report = CheckReport("sign_inequality")
    values = [Fraction(v) for v in values]
    if len(values) != g.m:
        raise DomainError("one value per edge is required")
    if any(not -1 <= v <= 0 for v in values):
        raise DomainError("edge values must lie in [-1, 0]")
    grid = [Fraction(x) for x in grid]
    if any(not 0 <= x <= 1 for x in grid):
        raise DomainError("lambda grid points must lie in [0, 1]")
    report.add_member(g.name)
    poly = connected_lambda(g.with_weights(values))
    sign = -1 if (g.n - 1) % 2 else 1
    for ell in range(lmax + 1):
        for lam in grid:
            val = as_poly(poly.evaluate({"lambda": lam})) * (sign if ell % 2 == 0 else -sign)
            scalar = val.to_scalar()
            report.expect(scalar >= 0, val, graph=g.fingerprint(), ell=ell, lam=str(lam),
                          v=[str(v) for v in values])
        poly = poly.diff("lambda")
    return report


def z_of_subgraphs(g: MultiGraph) -> dict[frozenset, MultiPoly]:
    """Z_{G[W]} for every vertex subset W (keyed by frozenset)."""
    out = {}
    for bits in product((0, 1), repeat=g.n):
        w = frozenset(v for v, b in zip(g.vertices, bits) if b)
        out[w] = z_poly(induced_subgraph(g, w))
    return out

