"""Incidence matrices on the lattice of set partitions and the q1-q2 Möbius family."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from math import factorial
from typing import Callable, Sequence

from .errors import DomainError, ResourceError
from .exactalg import MultiPoly, as_poly, falling_factorial
from .graphs import MultiGraph
from .partitions import SetPartition, enumerate_partitions, refinement_profile, refines
from .report import CheckReport

MATRIX_CAP = 6

Q1, Q2, Q3 = MultiPoly.var("q1"), MultiPoly.var("q2"), MultiPoly.var("q3")
ONE = MultiPoly.one()
ZERO = MultiPoly.zero()


def _ground(s) -> tuple:
    if isinstance(s, int):
        return tuple(str(i) for i in range(1, s + 1))
    return tuple(s)


@dataclass(frozen=True)
class PartitionMatrix:
    """Dense square matrix indexed by the partitions of S in RGS order.

    Entry (sigma, pi) is zero unless sigma refines pi.
    """

    index: tuple[SetPartition, ...]
    entries: tuple[tuple[MultiPoly, ...], ...]

    @classmethod
    def build(cls, s, entry: Callable[[SetPartition, SetPartition], MultiPoly]) -> "PartitionMatrix":
        ground = _ground(s)
        if len(ground) > MATRIX_CAP:
            raise ResourceError(f"partition matrices are capped at |S| = {MATRIX_CAP}")
        index = tuple(enumerate_partitions(ground))
        rows = tuple(
            tuple(as_poly(entry(a, b)) if refines(a, b) else ZERO for b in index)
            for a in index)
        return cls(index, rows)

    @property
    def size(self) -> int:
        return len(self.index)

    def position(self, pi: SetPartition) -> int:
        return self.index.index(pi)

    def __getitem__(self, key: tuple[SetPartition, SetPartition]) -> MultiPoly:
        a, b = key
        return self.entries[self.position(a)][self.position(b)]

    def __matmul__(self, other: "PartitionMatrix") -> "PartitionMatrix":
        if self.index != other.index:
            raise DomainError("matrices are indexed by different partition lattices")
        n = self.size
        rows = []
        for i in range(n):
            left = [(k, x) for k, x in enumerate(self.entries[i]) if x]
            row = []
            for j in range(n):
                acc = ZERO
                for k, x in left:
                    y = other.entries[k][j]
                    if y:
                        acc = acc + x * y
                row.append(acc)
            rows.append(tuple(row))
        return PartitionMatrix(self.index, tuple(rows))

    def map(self, fn: Callable[[MultiPoly], MultiPoly]) -> "PartitionMatrix":
        return PartitionMatrix(self.index, tuple(tuple(fn(x) for x in row) for row in self.entries))

    def subs(self, mapping) -> "PartitionMatrix":
        return self.map(lambda x: x.subs(mapping))

    def is_upper_triangular(self) -> bool:
        return all(not x or refines(a, b)
                   for a, row in zip(self.index, self.entries) for b, x in zip(self.index, row))

    def to_json(self) -> dict:
        return {"index": [p.to_text() for p in self.index],
                "entries": [[x.to_text() for x in row] for row in self.entries]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def mu_entry(sigma: SetPartition, pi: SetPartition, q1, q2) -> MultiPoly:
    """prod_i prod_{j=1}^{lambda_i - 1} (q2 - j q1), or 0 if sigma does not refine pi."""
    if not refines(sigma, pi):
        return ZERO
    q1, q2 = as_poly(q1), as_poly(q2)
    out = ONE
    for lam in refinement_profile(sigma, pi):
        for j in range(1, lam):
            out = out * (q2 - q1 * j)
    return out


def mu_q1q2_matrix(s, q1, q2) -> PartitionMatrix:
    q1, q2 = as_poly(q1), as_poly(q2)
    cache: dict[tuple, MultiPoly] = {}

    def entry(a, b):
        key = tuple(sorted(refinement_profile(a, b)))
        if key not in cache:
            cache[key] = mu_entry(a, b, q1, q2)
        return cache[key]

    return PartitionMatrix.build(s, entry)


def zeta_matrix(s) -> PartitionMatrix:
    return PartitionMatrix.build(s, lambda a, b: ONE)


def identity_matrix(s) -> PartitionMatrix:
    return PartitionMatrix.build(s, lambda a, b: ONE if a == b else ZERO)


def classical_mobius(sigma: SetPartition, pi: SetPartition) -> int:
    """prod_i (-1)^(lambda_i - 1) (lambda_i - 1)! for sigma <= pi."""
    out = 1
    for lam in refinement_profile(sigma, pi):
        out *= (-1) ** (lam - 1) * factorial(lam - 1)
    return out


def _compare(report: CheckReport, left: PartitionMatrix, right: PartitionMatrix, **params) -> None:
    for a, lrow, rrow in zip(left.index, left.entries, right.entries):
        for b, x, y in zip(left.index, lrow, rrow):
            if not report.expect_equal(x, y, sigma=a.to_text(), pi=b.to_text(), **params):
                return


def check_composition(s, report: CheckReport | None = None, samples: int = 4,
                      seed: int = 0) -> CheckReport:
    """mu_{q1,q2} mu_{q2,q3} = mu_{q1,q3}; symbolic up to |S| = 5, sampled at 6."""
    report = report or CheckReport("mobius_composition")
    ground = _ground(s)
    if len(ground) <= 5:
        triples = [(Q1, Q2, Q3)]
    else:
        rng = random.Random(f"{seed}:{len(ground)}")
        triples = [tuple(MultiPoly.const(rng.randint(-4, 4)) for _ in range(3))
                   for _ in range(samples)]
    for a, b, c in triples:
        left = mu_q1q2_matrix(ground, a, b) @ mu_q1q2_matrix(ground, b, c)
        _compare(report, left, mu_q1q2_matrix(ground, a, c), size=len(ground),
                 q=[str(a), str(b), str(c)])
    return report


def check_specialisations(s, report: CheckReport | None = None) -> CheckReport:
    """mu_{0,1} = zeta, mu_{1,0} = classical Möbius, mu_{q,q} = I, zeta mu = mu zeta = I."""
    report = report or CheckReport("mobius_specialisations")
    ground = _ground(s)
    q = MultiPoly.var("q")
    zeta, ident = zeta_matrix(ground), identity_matrix(ground)
    mu = mu_q1q2_matrix(ground, 1, 0)
    _compare(report, mu_q1q2_matrix(ground, 0, 1), zeta, size=len(ground), case="zeta")
    _compare(report, mu, PartitionMatrix.build(ground, classical_mobius), size=len(ground),
             case="mu")
    _compare(report, mu_q1q2_matrix(ground, q, q), ident, size=len(ground), case="identity")
    _compare(report, zeta @ mu, ident, size=len(ground), case="zeta*mu")
    _compare(report, mu @ zeta, ident, size=len(ground), case="mu*zeta")
    report.expect(mu.is_upper_triangular(), ONE, size=len(ground), case="triangular")
    return report


def check_rota(m_max: int, report: CheckReport | None = None) -> CheckReport:
    """sum_pi mu(0, pi) q^|pi| = q falling m."""
    report = report or CheckReport("mobius_rota")
    q = MultiPoly.var("q")
    for m in range(1, m_max + 1):
        ground = _ground(m)
        bottom = SetPartition.finest(ground)
        acc = ZERO
        for pi in enumerate_partitions(ground):
            acc = acc + q ** len(pi) * classical_mobius(bottom, pi)
        report.expect_equal(acc, falling_factorial(q, m), m=m)
    return report


def check_lemma_partitions(m_max: int, report: CheckReport | None = None) -> CheckReport:
    """sum_omega r^(falling |omega|) prod_B s^(falling |B|) = (rs)^(falling m)."""
    if m_max > 9:
        raise ResourceError("the partition lemma check is capped at m = 9")
    report = report or CheckReport("mobius_lemma")
    r, s = MultiPoly.var("r"), MultiPoly.var("s")
    sf = [falling_factorial(s, k) for k in range(m_max + 1)]
    rf = [falling_factorial(r, k) for k in range(m_max + 1)]
    for m in range(1, m_max + 1):
        acc = ZERO
        for omega in enumerate_partitions(range(m)):
            term = rf[len(omega)]
            for size in omega.block_sizes():
                term = term * sf[size]
            acc = acc + term
        report.expect_equal(acc, falling_factorial(r * s, m), m=m)
    return report


def check_diag_conjugation(s, r="r", report: CheckReport | None = None) -> CheckReport:
    """r^|sigma| mu_{q1,q2}(sigma, pi) = mu_{r q1, r q2}(sigma, pi) r^|pi|."""
    ground = _ground(s)
    if len(ground) > 4:
        raise ResourceError("diagonal conjugation is checked up to |S| = 4")
    report = report or CheckReport("mobius_diag_conjugation")
    r = MultiPoly.var(r) if isinstance(r, str) else as_poly(r)
    mu = mu_q1q2_matrix(ground, Q1, Q2)
    scaled = mu_q1q2_matrix(ground, r * Q1, r * Q2)
    for i, a in enumerate(mu.index):
        for j, b in enumerate(mu.index):
            lhs = r ** len(a) * mu.entries[i][j]
            rhs = scaled.entries[i][j] * r ** len(b)
            if not report.expect_equal(lhs, rhs, sigma=a.to_text(), pi=b.to_text()):
                return report
    return report


class _HatTable:
    """Reduced partition functions of every induced subgraph, memoised by vertex set."""

    def __init__(self, g: MultiGraph) -> None:
        from .graphs import induced_subgraph
        from .tutte import zhat

        self._g = g
        self._sub = induced_subgraph
        self._zhat = zhat
        self._cache: dict[frozenset, MultiPoly] = {}

    def __call__(self, block) -> MultiPoly:
        key = frozenset(block)
        if key not in self._cache:
            self._cache[key] = self._zhat(self._sub(self._g, key))
        return self._cache[key]


def coherent_value(g: MultiGraph, pi: SetPartition, q, table: _HatTable | None = None) -> MultiPoly:
    """F_q(pi) = prod over blocks B of the reduced partition function of G[B] at q."""
    table = table or _HatTable(g)
    q = as_poly(q)
    out = ONE
    for b in pi.blocks:
        out = out * table(b).subs({"q": q})
    return out


def check_coherent_family(g: MultiGraph, pi_eval: SetPartition | None = None,
                          report: CheckReport | None = None,
                          table: _HatTable | None = None) -> CheckReport:
    """(F_{q1} mu_{q1,q2})(pi) = F_{q2}(pi) at one pi (default: every pi)."""
    if g.has_loop():
        raise DomainError("coherent families need a loopless graph")
    if g.n > 5:
        raise ResourceError("coherent-family checks are capped at 5 vertices")
    report = report or CheckReport("mobius_coherent")
    report.add_member(g.name)
    if g.n == 0:
        return report
    table = table or _HatTable(g)
    ground = g.vertices
    parts = list(enumerate_partitions(ground))
    targets = parts if pi_eval is None else [pi_eval]
    f1 = {sigma: coherent_value(g, sigma, Q1, table) for sigma in parts}
    fp = g.fingerprint()
    for pi in targets:
        if pi.ground != ground:
            raise DomainError("partition is not over the graph's vertices")
        acc = ZERO
        for sigma in parts:
            if refines(sigma, pi):
                acc = acc + f1[sigma] * mu_entry(sigma, pi, Q1, Q2)
        if not report.expect_equal(acc, coherent_value(g, pi, Q2, table), graph=fp,
                                   pi=pi.to_text()):
            break
    return report


def lattice_checks(max_n: int = 5) -> list[CheckReport]:
    """The graph-independent lattice checks at their acceptance sizes."""
    top = min(max(max_n, 5), 5)
    comp = CheckReport("mobius_composition")
    special = CheckReport("mobius_specialisations")
    for n in range(1, top + 1):
        check_composition(n, comp)
        check_specialisations(n, special)
    check_composition(6, comp)
    return [comp, special, check_rota(7), check_lemma_partitions(6), check_diag_conjugation(4)]


def run_checks(max_n: int = 5, corpus: Sequence[MultiGraph] | None = None) -> list[CheckReport]:
    """Lattice checks plus the coherent-family identity over a corpus."""
    if corpus is None:
        from .identities import default_corpus

        corpus = default_corpus()
    coherent = CheckReport("mobius_coherent")
    for g in corpus:
        if 0 < g.n <= 5 and not g.has_loop():
            check_coherent_family(g, report=coherent)
    return lattice_checks(max_n) + [coherent]


__all__ = [
    "PartitionMatrix",
    "mu_entry",
    "mu_q1q2_matrix",
    "zeta_matrix",
    "identity_matrix",
    "classical_mobius",
    "check_composition",
    "check_specialisations",
    "check_rota",
    "check_lemma_partitions",
    "check_diag_conjugation",
    "coherent_value",
    "check_coherent_family",
    "lattice_checks",
    "run_checks",
]

