"""Graph-level identity checks and the suite runner."""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Callable, Iterable, Sequence

from .errors import DomainError, UsageError
from .exactalg import MultiPoly, TruncatedSeries, falling_factorial
from .graphs import (
    MultiGraph,
    blowup_clique,
    blowup_independent,
    complete_bipartite,
    complete_graph,
    complete_minus_edge,
    cycle_graph,
    edge_boundary,
    induced_edge_indices,
    induced_subgraph,
    multi_edge,
    path_graph,
    star_graph,
    triangle_with_loop,
)
from .partitions import enumerate_partitions
from .report import CheckReport
from .tutte import (
    Q,
    check_sign_inequality,
    chromatic,
    chromatic_from_partition_counts,
    connected_lambda,
    connected_poly,
    independence_poly,
    independent_partition_counts,
    lass_chromatic,
    z_coloring,
    z_poly,
)

Q1 = MultiPoly.var("q1")
Q2 = MultiPoly.var("q2")
ONE = MultiPoly.one()
ZERO = MultiPoly.zero()


def default_corpus() -> list[MultiGraph]:
    """Small graphs with a distinct symbolic weight on every edge."""
    return [
        complete_graph(1),
        complete_graph(2),
        complete_graph(3),
        complete_graph(4),
        complete_graph(5),
        star_graph(3),
        complete_bipartite(2, 3),
        path_graph(4),
        cycle_graph(4),
        cycle_graph(5),
        complete_minus_edge(4),
        multi_edge(2),
        triangle_with_loop(),
    ]


class SubgraphTable:
    """Z, Z-hat and C of every induced subgraph, computed once per graph."""

    def __init__(self, g: MultiGraph) -> None:
        self.g = g
        self.z: dict[frozenset, MultiPoly] = {}
        self.zhat: dict[frozenset, MultiPoly] = {}
        self.c: dict[frozenset, MultiPoly] = {}
        self.one_plus: dict[frozenset, MultiPoly] = {}
        factors = [1 + w for w in g.weights()]
        for bits in product((0, 1), repeat=g.n):
            w = frozenset(v for v, b in zip(g.vertices, bits) if b)
            z = z_poly(induced_subgraph(g, w))
            self.z[w] = z
            prod_ = ONE
            for e in induced_edge_indices(g, w):
                prod_ = prod_ * factors[e]
            self.one_plus[w] = prod_
            if w:
                self.zhat[w] = z.div_var("q")
                self.c[w] = self.zhat[w].subs({"q": 0})
        self.full = frozenset(g.vertices)

    def subsets(self, containing: str | None = None, avoiding: str | None = None):
        for w in self.z:
            if containing is not None and containing not in w:
                continue
            if avoiding is not None and avoiding in w:
                continue
            yield w


def _at(p: MultiPoly, qv) -> MultiPoly:
    return p.subs({"q": qv})


# -- partition formulas ----------------------------------------------------------

def check_partition_q1q2(g: MultiGraph, table: SubgraphTable | None = None,
                         report: CheckReport | None = None) -> CheckReport:
    report = report or CheckReport("partition_q1q2")
    if g.has_loop():
        raise DomainError("the partition formulas need a loopless graph")
    if g.n == 0:
        return report
    report.add_member(g.name)
    t = table or SubgraphTable(g)
    fp = g.fingerprint()
    hat1 = {w: _at(p, Q1) for w, p in t.zhat.items()}
    lhs_hat = _at(t.zhat[t.full], Q2)
    lhs_z = _at(t.z[t.full], Q2)
    alt2 = alt = form0 = form1 = form2 = form3 = ZERO
    pref = [ONE]
    for j in range(1, g.n + 1):
        pref.append(pref[-1] * (Q2 - Q1 * j))
    for pi in enumerate_partitions(g.vertices):
        blocks = [frozenset(b) for b in pi.blocks]
        k = len(blocks)
        prod_hat = ONE
        prod_c = ONE
        prod_one = ONE
        for b in blocks:
            prod_hat = prod_hat * hat1[b]
            prod_c = prod_c * t.c[b]
            prod_one = prod_one * t.one_plus[b]
        alt2 = alt2 + pref[k - 1] * prod_hat
        alt = alt + pref[k - 1] * Q2 * prod_hat
        form0 = form0 + Q ** k * prod_c
        form1 = form1 + falling_factorial(Q, k) * prod_one
        form2 = form2 + prod_one * ((-1) ** (k - 1) * factorial(k - 1))
        form3 = form3 + prod_one * ((-1) ** k * factorial(k))
    report.expect_equal(lhs_hat, alt2, graph=fp, form="hat")
    report.expect_equal(lhs_z, alt, graph=fp, form="full")
    report.expect_equal(t.z[t.full], form0, graph=fp, form="q1=0")
    report.expect_equal(t.z[t.full], form1, graph=fp, form="q1=1")
    report.expect_equal(t.c[t.full], form2, graph=fp, form="q1=1,connected")
    report.expect_equal(_at(t.z[t.full], -1), form3, graph=fp, form="q1=1,q=-1")
    # independent-set corollaries at v = -1
    counts = independent_partition_counts(g)
    p = chromatic(g)
    report.expect_equal(p, chromatic_from_partition_counts(counts), graph=fp, form="Q_G")
    c_at = connected_poly(g.with_equal_weights(-1))
    deriv0 = p.diff("q").subs({"q": 0})
    report.expect_equal(deriv0, c_at, graph=fp, form="P'(0)=C(-1)")
    report.expect_equal(c_at, sum(((-1) ** (k - 1) * factorial(k - 1) * c
                                   for k, c in enumerate(counts, 1)), 0), graph=fp, form="Q_G,connected")
    report.expect_equal(_at(p, -1), sum(((-1) ** k * factorial(k) * c
                                         for k, c in enumerate(counts, 1)), 0), graph=fp, form="Q_G,q=-1")
    return report


# -- convolutions ----------------------------------------------------------------

def check_convolution_props(g: MultiGraph, table: SubgraphTable | None = None,
                            report: CheckReport | None = None) -> CheckReport:
    report = report or CheckReport("convolutions_graph")
    if g.has_loop():
        raise DomainError("the convolution formulas need a loopless graph")
    if g.n == 0:
        return report
    report.add_member(g.name)
    t = table or SubgraphTable(g)
    fp = g.fingerprint()
    full, n = t.full, g.n
    z1 = {w: _at(p, Q1) for w, p in t.z.items()}
    z2 = {w: _at(p, Q2) for w, p in t.z.items()}
    h1 = {w: _at(p, Q1) for w, p in t.zhat.items()}
    s = Q1 + Q2
    lin0 = sum((z1[w] * z2[full - w] for w in t.subsets()), ZERO)
    report.expect_equal(_at(t.z[full], s), lin0, graph=fp, identity="lin0")
    for i in g.vertices:
        lin1 = sum((h1[w] * z2[full - w] for w in t.subsets(containing=i)), ZERO)
        report.expect_equal(_at(t.zhat[full], s), lin1, graph=fp, identity="lin1", i=i)
        lin2 = sum((Q * t.c[w] * t.z[full - w] for w in t.subsets(containing=i)), ZERO)
        report.expect_equal(t.z[full], lin2, graph=fp, identity="lin2", i=i)
    lin2a = sum(((s * len(w) - Q1 * n) * h1[w] * z2[full - w] for w in t.subsets() if w), ZERO)
    report.expect_equal(z2[full] * n, lin2a, graph=fp, identity="lin2a")
    return report


# -- nonlinear identity and its partition expansion ------------------------------------

def _boundary_factor(g: MultiGraph, w: Iterable[str], j: str, factors) -> MultiPoly:
    out = ONE
    for e in edge_boundary(g, w, j):
        out = out * factors[e]
    return out


def check_nonlinear(g: MultiGraph, i: str, j: str, table: SubgraphTable | None = None,
                    report: CheckReport | None = None) -> CheckReport:
    report = report or CheckReport("nonlinear")
    if i == j:
        raise DomainError("the two distinguished vertices must differ")
    report.add_member(g.name)
    t = table or SubgraphTable(g)
    fp = g.fingerprint()
    factors = [1 + w for w in g.weights()]
    full = t.full
    rhs = rhs0 = ZERO
    for w in t.subsets(containing=i, avoiding=j):
        b = _boundary_factor(g, w, j, factors)
        rhs = rhs + (Q - 1 + b) * t.c[w] * t.z[full - w]
        rhs0 = rhs0 + (b - 1) * t.c[w] * t.c[full - w]
    report.expect_equal(t.z[full], rhs, graph=fp, form="Z", i=i, j=j)
    report.expect_equal(t.c[full], rhs0, graph=fp, form="C", i=i, j=j)
    return report


def check_genborgs(g: MultiGraph, j: str, table: SubgraphTable | None = None,
                   report: CheckReport | None = None) -> CheckReport:
    report = report or CheckReport("genborgs")
    if g.has_loop(j):
        raise DomainError(f"vertex {j} carries a loop")
    report.add_member(g.name)
    t = table or SubgraphTable(g)
    fp = g.fingerprint()
    factors = [1 + w for w in g.weights()]
    rest = [v for v in g.vertices if v != j]
    rhs = rhs0 = ZERO
    for pi in enumerate_partitions(rest):
        term = term0 = ONE
        for block in pi.blocks:
            b = frozenset(block)
            bf = _boundary_factor(g, b, j, factors)
            term = term * (Q - 1 + bf) * t.c[b]
            term0 = term0 * (bf - 1) * t.c[b]
        rhs = rhs + term
        rhs0 = rhs0 + term0
    report.expect_equal(t.zhat[t.full], rhs, graph=fp, form="Zhat", j=j)
    report.expect_equal(t.c[t.full], rhs0, graph=fp, form="C", j=j)
    return report


# -- generating functions ------------------------------------------------------------

def lattice_gas_series(g: MultiGraph, caps: Sequence[int], clique: bool) -> TruncatedSeries:
    """sum_n prod_{ij}(1+v_ij)^(n_i n_j) [prod_i (1+w_i)^(n_i(n_i-1)/2)] x^n / n!."""
    pos = {v: k for k, v in enumerate(g.vertices)}
    ends = [(pos[u], pos[v], 1 + w) for u, v, w in g.edges]
    loops = [1 + MultiPoly.var(f"w:{v}") for v in g.vertices]

    def coeff(n):
        out = ONE
        for a, b, f in ends:
            if n[a] * n[b]:
                out = out * f ** (n[a] * n[b])
        if clique:
            for k, f in zip(n, loops):
                if k > 1:
                    out = out * f ** (k * (k - 1) // 2)
        return out

    return TruncatedSeries.from_egf(tuple(f"x:{v}" for v in g.vertices), tuple(caps), coeff)


def check_blowup_genfn(g: MultiGraph, caps: Sequence[int],
                       report: CheckReport | None = None) -> CheckReport:
    report = report or CheckReport("blowup_genfn")
    if not g.is_simple():
        raise DomainError("blow-up generating functions need a simple graph")
    report.add_member(g.name)
    fp = g.fingerprint()
    for clique in (False, True):
        powered = lattice_gas_series(g, caps, clique).pow(Q)
        for n in product(*(range(c + 1) for c in caps)):
            blown = blowup_clique(g, n) if clique else blowup_independent(g, n)
            report.expect_equal(powered.egf_coefficient(n), z_poly(blown), graph=fp,
                                clique=clique, n=list(n))
    return report


def check_bipartite_chromatic_genfn(caps=(3, 3), report: CheckReport | None = None) -> CheckReport:
    """(e^x + e^y - 1)^q against brute-force chromatic polynomials of K_{n1,n2}."""
    report = report or CheckReport("bipartite_chromatic_genfn")
    k2 = complete_graph(2, -1)
    report.add_member("K2")
    variables = ("x:1", "x:2")
    ex = TruncatedSeries.from_egf(variables, caps, lambda n: 1 if n[1] == 0 else 0)
    ey = TruncatedSeries.from_egf(variables, caps, lambda n: 1 if n[0] == 0 else 0)
    target = ex + ey - 1
    gas = lattice_gas_series(k2, caps, clique=False)
    report.expect(gas == target, ONE, graph="K2", form="v=-1 gas series")
    powered = target.pow(Q)
    for n in product(*(range(c + 1) for c in caps)):
        report.expect_equal(powered.egf_coefficient(n), chromatic(blowup_independent(k2, n)),
                            graph="K2", n=list(n))
    return report


def check_lass(g: MultiGraph, report: CheckReport | None = None) -> CheckReport:
    report = report or CheckReport("lass")
    if g.has_loop():
        raise DomainError("the independent-set formula needs a loopless graph")
    report.add_member(g.name)
    fp = g.fingerprint()
    powered = independence_poly(g).pow(Q)
    hard_core = lattice_gas_series(g, (1,) * g.n, clique=False).pow(Q)
    for bits in product((0, 1), repeat=g.n):
        w = [v for v, b in zip(g.vertices, bits) if b]
        sub = induced_subgraph(g, w)
        report.expect_equal(lass_chromatic(g, w, powered), chromatic(sub), graph=fp,
                            form="P", W=w)
        report.expect_equal(hard_core[bits], z_poly(sub), graph=fp, form="Z", W=w)
    return report


# -- representation oracles -------------------------------------------------------------

def spanning_tree_count(g: MultiGraph) -> int:
    """Matrix-tree theorem with exact rational elimination."""
    n = g.n
    if n <= 1:
        return 1
    pos = {v: k for k, v in enumerate(g.vertices)}
    lap = [[Fraction(0)] * n for _ in range(n)]
    for u, v, _ in g.edges:
        a, b = pos[u], pos[v]
        if a == b:
            continue
        lap[a][a] += 1
        lap[b][b] += 1
        lap[a][b] -= 1
        lap[b][a] -= 1
    m = [row[1:] for row in lap[1:]]
    det = Fraction(1)
    size = n - 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, size):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, size):
                    m[r][c] -= f * m[col][c]
    return int(det)


def check_fk(g: MultiGraph, qs=(1, 2, 3, 4), report: CheckReport | None = None) -> CheckReport:
    """Colouring sum, subset sum and the elementary specialisations agree."""
    report = report or CheckReport("fk_representation")
    report.add_member(g.name)
    fp = g.fingerprint()
    z = z_poly(g)
    for q in qs:
        report.expect_equal(z_coloring(g, q), _at(z, q), graph=fp, q=q)
    trivial = ONE
    for w in g.weights():
        trivial = trivial * (1 + w)
    report.expect_equal(_at(z, 1), trivial, graph=fp, form="q=1")
    p = chromatic(g)
    if g.is_loopless():
        signs_ok = all((p.coefficient("q", k).to_scalar() * (-1) ** (g.n - k)) >= 0
                       for k in range(g.n + 1))
        report.expect(signs_ok and p.coefficient("q", g.n) == 1, p, graph=fp, form="chromatic signs")
    else:
        report.expect_equal(p, 0, graph=fp, form="chromatic with loop")
    if g.n:
        lam = connected_lambda(g)
        report.expect_equal(lam.subs({"lambda": 1}), connected_poly(g), graph=fp, form="lambda=1")
        trees = lam.subs({"lambda": 0})
        distinct = len({w for w in g.weights()}) == g.m and all(
            len(w) == 1 and w.is_integral() and w.degree() == 1 for w in g.weights())
        if distinct:
            report.expect(len(trees) == spanning_tree_count(g), trees, graph=fp,
                          form="spanning trees")
    return report


SIGN_VALUES = (Fraction(-1), Fraction(-3, 4), Fraction(-1, 2), Fraction(-1, 4))
SIGN_GRID = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


def check_sign(g: MultiGraph, samples: int = 3, seed: int = 0, lmax: int = 4,
               report: CheckReport | None = None) -> CheckReport:
    report = report or CheckReport("sign_inequality")
    if g.n == 0:
        return report
    rng = random.Random(f"{seed}:{g.fingerprint()}")
    for _ in range(samples):
        values = [rng.choice(SIGN_VALUES) for _ in range(g.m)]
        check_sign_inequality(g, values, lmax, SIGN_GRID, report)
    return report


# -- suite runner --------------------------------------------------------------------

SUITES = ("partitions", "convolutions", "nonlinear", "genborgs", "blowup", "lass",
          "abel", "mobius", "complete", "fk", "sign")


def _graph_task(kind: str, g: MultiGraph) -> list[CheckReport]:
    if kind == "partitions":
        return [check_partition_q1q2(g)]
    if kind == "convolutions":
        return [check_convolution_props(g)]
    if kind == "nonlinear":
        t = SubgraphTable(g)
        r = CheckReport("nonlinear")
        for i in g.vertices:
            for j in g.vertices:
                if i != j:
                    check_nonlinear(g, i, j, t, r)
        return [r]
    if kind == "genborgs":
        t = SubgraphTable(g)
        r = CheckReport("genborgs")
        for j in g.vertices:
            if not g.has_loop(j):
                check_genborgs(g, j, t, r)
        return [r]
    if kind == "lass":
        return [check_lass(g)]
    if kind == "fk":
        return [check_fk(g)]
    if kind == "sign":
        return [check_sign(g)]
    raise UsageError(f"unknown graph check {kind!r}")


def _eligible(kind: str, g: MultiGraph) -> bool:
    if g.n == 0:
        return False
    if kind in ("partitions", "convolutions"):
        return g.is_loopless() and g.n <= 7
    if kind == "nonlinear":
        return g.n >= 2 and g.n <= 7
    if kind == "genborgs":
        return g.n <= 7
    if kind == "lass":
        return g.is_loopless() and g.n <= 6
    if kind == "fk":
        return g.is_loopless() and g.n <= 5 and g.m <= 8
    if kind == "sign":
        return True
    return False


def _blowup_task(_: None = None) -> list[CheckReport]:
    r = CheckReport("blowup_genfn")
    check_blowup_genfn(complete_graph(1), (4,), r)
    check_blowup_genfn(complete_graph(2), (2, 2), r)
    return [r, check_bipartite_chromatic_genfn((3, 3))]


def _abel_task(max_n: int) -> list[CheckReport]:
    from . import families as fam

    cap = min(max_n, 6)
    singles = fam.default_families(cap)
    multis = fam.default_multi_families()
    conv, abel = fam.iter_checks(singles + multis)
    expand = CheckReport("power_expand")
    gen = CheckReport("generating_function")
    for f in singles + multis:
        fam.check_power_expand(f, report=expand)
        fam.check_generating_function(f, report=gen)
    knuth = CheckReport("knuth_transform")
    for f in singles[:2]:
        fam.knuth_transform(f, n_max=cap, report=knuth)
    rt = CheckReport("connected_roundtrip")
    closed = CheckReport("closed_forms")
    for name in ("exp", "1+x", "geometric", "bell", "laguerre"):
        built = fam.family_from_connected(fam.classic_connected(name, cap))
        ref = fam.classic_family(name, cap)
        closed.add_member(name)
        for n in ref.indices():
            closed.expect_equal(built[n], ref[n], graph=name, n=fam.index_key(n))
    for c in (fam.symbolic_connected(cap), fam.symbolic_connected((3, 3))):
        fam.check_roundtrip(c, rt)
    pivot = fam.pivot_independence(fam.symbolic_connected((3, 3)),
                                   fam.family_from_connected(fam.symbolic_connected((3, 3))))
    return [conv, abel, expand, gen, knuth, rt, closed, pivot]


def _mobius_task(max_n: int) -> list[CheckReport]:
    from . import mobius

    return mobius.lattice_checks(max_n)


def _coherent_task(g: MultiGraph) -> list[CheckReport]:
    from . import mobius

    return [mobius.check_coherent_family(g)]


def _complete_task(max_n: int) -> list[CheckReport]:
    from . import complete

    return complete.run_checks(max_n)


def _run_task(task: tuple) -> list[CheckReport]:
    kind, arg = task
    if kind == "blowup":
        return _blowup_task()
    if kind == "abel":
        return _abel_task(arg)
    if kind == "mobius":
        return _mobius_task(arg)
    if kind == "complete":
        return _complete_task(arg)
    if kind == "coherent":
        return _coherent_task(arg)
    return _graph_task(kind, arg)


def _merge(kind: str, chunks: list[list[CheckReport]]) -> list[CheckReport]:
    out: dict[str, CheckReport] = {}
    for chunk in chunks:
        for r in chunk:
            if r.check in out:
                out[r.check].merge(r)
            else:
                out[r.check] = r
    if not out and kind in {"partitions", "convolutions", "nonlinear", "genborgs", "lass",
                            "fk", "sign"}:
        name = {"partitions": "partition_q1q2", "convolutions": "convolutions_graph",
                "fk": "fk_representation", "sign": "sign_inequality"}.get(kind, kind)
        out[name] = CheckReport(name)
    return list(out.values())


def run_suite(corpus: Sequence[MultiGraph] | None, suite: str, threads: int | None = None,
              max_n: int = 6, executor_factory: Callable | None = None) -> list[CheckReport]:
    """Run a named suite; reports come back in a fixed order regardless of threads."""
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    corpus = default_corpus() if corpus is None else list(corpus)
    plan: list[tuple[str, list[tuple]]] = []
    for kind in names:
        if kind == "blowup":
            plan.append((kind, [(kind, None)]))
        elif kind == "mobius":
            coherent = [("coherent", g) for g in corpus
                        if 0 < g.n <= 5 and g.is_loopless()]
            plan.append((kind, [(kind, max_n)] + coherent))
        elif kind in ("abel", "complete"):
            plan.append((kind, [(kind, max_n)]))
        else:
            plan.append((kind, [(kind, g) for g in corpus if _eligible(kind, g)]))
    tasks = [t for _, ts in plan for t in ts]
    threads = threads or os.cpu_count() or 1
    if threads > 1 and len(tasks) > 1:
        factory = executor_factory or ProcessPoolExecutor
        with factory(max_workers=threads) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    out: list[CheckReport] = []
    pos = 0
    for kind, ts in plan:
        out.extend(_merge(kind, results[pos:pos + len(ts)]))
        pos += len(ts)
    return out


def corpus_from_files(paths: Iterable[str]) -> list[MultiGraph]:
    return [MultiGraph.load(p) for p in paths]
