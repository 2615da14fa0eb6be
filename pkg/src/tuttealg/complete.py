"""Fast sequences for complete graphs with equal edge weights, and their oracles."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import comb, factorial
from typing import Sequence

from .errors import DomainError, ResourceError
from .exactalg import MultiPoly, TruncatedSeries, as_poly, falling_factorial
from .partitions import cross_edges, enumerate_partitions
from .report import CheckReport

Q = MultiPoly.var("q")
Y = MultiPoly.var("y")
ONE = MultiPoly.one()
ZERO = MultiPoly.zero()

PARTITION_CAP = 8
BRUTE_TREE_CAP = 8


@dataclass(frozen=True)
class PolySequence:
    """Entries ``start, start+1, ..., start+len-1`` of a polynomial sequence."""

    entries: tuple[MultiPoly, ...]
    start: int = 0
    meta: str = ""

    def __getitem__(self, n: int) -> MultiPoly:
        if not self.start <= n < self.start + len(self.entries):
            raise IndexError(f"entry {n} outside {self.start}..{self.last}")
        return self.entries[n - self.start]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def last(self) -> int:
        return self.start + len(self.entries) - 1

    def indices(self) -> range:
        return range(self.start, self.last + 1)

    def to_text(self) -> list[str]:
        return [p.to_text() for p in self.entries]

    def subs(self, mapping) -> "PolySequence":
        return PolySequence(tuple(p.subs(mapping) for p in self.entries), self.start, self.meta)

    def same_entries(self, other: "PolySequence") -> bool:
        return self.start == other.start and self.entries == other.entries


def _one_plus(v) -> MultiPoly:
    return 1 + (MultiPoly.var(v) if isinstance(v, str) else as_poly(v))


def _powers(base: MultiPoly, top: int) -> list[MultiPoly]:
    out = [ONE]
    for _ in range(top):
        out.append(out[-1] * base)
    return out


def _edge_powers(v, n_max: int) -> list[MultiPoly]:
    """(1+v)^(n(n-1)/2) for n = 0..n_max."""
    pw = _powers(_one_plus(v), n_max * (n_max - 1) // 2 if n_max > 1 else 0)
    return [pw[n * (n - 1) // 2] for n in range(n_max + 1)]


def cn_linear(n_max: int, v="v") -> PolySequence:
    """C_1..C_N from C_n = (1+v)^binom(n,2) - sum_k binom(n-1,k-1) C_k (1+v)^binom(n-k,2)."""
    if n_max < 1:
        raise DomainError("N must be >= 1")
    e = _edge_powers(v, n_max)
    c = [ZERO]
    for n in range(1, n_max + 1):
        acc = e[n]
        for k in range(1, n):
            acc = acc - c[k] * e[n - k] * comb(n - 1, k - 1)
        c.append(acc)
    return PolySequence(tuple(c[1:]), 1, "linear")


def cn_nonlinear(n_max: int, v="v") -> PolySequence:
    """C_n = sum_k binom(n-2,k-1) [(1+v)^k - 1] C_k C_{n-k}, C_1 = 1."""
    if n_max < 1:
        raise DomainError("N must be >= 1")
    pw = _powers(_one_plus(v), n_max)
    c = [ZERO, ONE]
    for n in range(2, n_max + 1):
        acc = ZERO
        for k in range(1, n):
            acc = acc + (pw[k] - 1) * c[k] * c[n - k] * comb(n - 2, k - 1)
        c.append(acc)
    return PolySequence(tuple(c[1:n_max + 1]), 1, "nonlinear")


def zn_sequence(n_max: int, mode: str = "from_cn", v="v") -> PolySequence:
    """Z_0..Z_N of the complete graphs, via C_n or directly from Z_n(1, v)."""
    if n_max < 0:
        raise DomainError("N must be >= 0")
    z = [ONE]
    if mode == "from_cn":
        c = cn_linear(max(n_max, 1), v)
        for n in range(1, n_max + 1):
            z.append(sum((Q * c[k] * z[n - k] * comb(n - 1, k - 1) for k in range(1, n + 1)), ZERO))
    elif mode == "direct_q":
        e = _edge_powers(v, n_max)
        for n in range(1, n_max + 1):
            acc = ZERO
            for k in range(1, n + 1):
                acc = acc + ((1 + Q) * comb(n - 1, k - 1) - comb(n, k)) * e[k] * z[n - k]
            z.append(acc)
    elif mode == "direct_hat":
        e = _edge_powers(v, n_max)
        hat = [ZERO]
        for n in range(1, n_max + 1):
            acc = e[n]
            for k in range(1, n):
                acc = acc + (Q * comb(n - 1, k) - comb(n - 1, k - 1)) * e[n - k] * hat[k]
            hat.append(acc)
            z.append(Q * acc)
    else:
        raise DomainError(f"unknown mode {mode!r}; use from_cn, direct_q or direct_hat")
    return PolySequence(tuple(z), 0, mode)


def _block_census(n: int) -> Counter:
    """Number of partitions of [n] with each sorted block-size profile."""
    if n > PARTITION_CAP:
        raise ResourceError(f"partition sums are capped at n = {PARTITION_CAP}")
    census: Counter = Counter()
    for pi in enumerate_partitions(range(1, n + 1)):
        census[tuple(sorted(pi.block_sizes()))] += 1
    return census


def zn_partition_forms(n: int, v="v", report: CheckReport | None = None) -> CheckReport:
    """Partition sums over Pi_n with (1+v)^(internal edges) against the recursions."""
    report = report or CheckReport("complete_partition_forms")
    if n > PARTITION_CAP:
        raise ResourceError(f"partition sums are capped at n = {PARTITION_CAP}")
    base = _one_plus(v)
    top = n * (n - 1) // 2
    z = zn_sequence(n, "from_cn", v)[n]
    c = cn_linear(max(n, 1), v)[n] if n >= 1 else None
    zq = zc = zm = ZERO
    for pi in enumerate_partitions(range(1, n + 1)):
        k = len(pi)
        w = base ** (top - cross_edges(pi))
        zq = zq + falling_factorial(Q, k) * w
        if k:
            zc = zc + w * ((-1) ** (k - 1) * factorial(k - 1))
        zm = zm + w * ((-1) ** k * factorial(k))
    report.expect_equal(zq, z, n=n, form="Z")
    if n >= 1:
        report.expect_equal(zc, c, n=n, form="C")
    report.expect_equal(zm, z.subs({"q": -1}), n=n, form="Z(-1)")
    return report


# -- inversion enumerator ---------------------------------------------------------

def _prufer_trees(n: int):
    """Parent arrays of all labelled trees on 1..n, rooted at 1."""
    if n == 1:
        yield {1: None}
        return
    for seq in product(range(1, n + 1), repeat=n - 2):
        degree = [1] * (n + 1)
        for x in seq:
            degree[x] += 1
        adj: dict[int, list[int]] = {i: [] for i in range(1, n + 1)}
        for x in seq:
            leaf = next(i for i in range(1, n + 1) if degree[i] == 1)
            adj[leaf].append(x)
            adj[x].append(leaf)
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [i for i in range(1, n + 1) if degree[i] == 1]
        adj[u].append(w)
        adj[w].append(u)
        parent: dict[int, int | None] = {1: None}
        stack = [1]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        yield parent


def count_inversions(parent: dict) -> int:
    """Pairs j > k > 1 with j a proper ancestor of k."""
    total = 0
    for k in parent:
        if k == 1:
            continue
        j = parent[k]
        while j is not None:
            if j > k:
                total += 1
            j = parent[j]
    return total


def inversion_enumerator(n_max: int, mode: str = "recursion") -> PolySequence:
    """I_1..I_N in y."""
    if n_max < 1:
        raise DomainError("N must be >= 1")
    if mode == "recursion":
        seq = [ZERO, ONE]
        geo = [ZERO]
        for k in range(1, n_max + 1):
            geo.append(geo[-1] + Y ** (k - 1))
        for n in range(2, n_max + 1):
            seq.append(sum((geo[k] * seq[k] * seq[n - k] * comb(n - 2, k - 1)
                            for k in range(1, n)), ZERO))
        return PolySequence(tuple(seq[1:n_max + 1]), 1, "recursion")
    if mode == "brute":
        if n_max > BRUTE_TREE_CAP:
            raise ResourceError(f"tree enumeration is capped at n = {BRUTE_TREE_CAP}")
        out = []
        for n in range(1, n_max + 1):
            hist = Counter(count_inversions(p) for p in _prufer_trees(n))
            out.append(sum((Y ** i * m for i, m in sorted(hist.items())), ZERO))
        return PolySequence(tuple(out), 1, "brute")
    raise DomainError(f"unknown mode {mode!r}; use recursion or brute")


def check_cn_in_relation(n_max: int, v="v", report: CheckReport | None = None) -> CheckReport:
    """C_n(v) = v^(n-1) I_n(1+v)."""
    report = report or CheckReport("cn_inversions")
    vv = MultiPoly.var(v) if isinstance(v, str) else as_poly(v)
    c = cn_nonlinear(n_max, v)
    inv = inversion_enumerator(n_max)
    for n in range(1, n_max + 1):
        report.expect_equal(vv ** (n - 1) * inv[n].subs({"y": 1 + vv}), c[n], n=n)
    return report


# -- generalised families ----------------------------------------------------------

def _check_seq(seq: PolySequence, first: int, n_max: int, what: str) -> None:
    if seq.start > first or seq.last < n_max:
        raise DomainError(f"{what} must cover indices {first}..{n_max}")


def zn_of_family(a: PolySequence, n_max: int, route: str = "partition") -> PolySequence:
    """Z_n(q; a) = sum over partitions of q^(falling |pi|) prod a_|block|."""
    _check_seq(a, 1, n_max, "a")
    if route == "partition":
        out = [ONE]
        for n in range(1, n_max + 1):
            acc = ZERO
            for sizes, mult in sorted(_block_census(n).items()):
                term = falling_factorial(Q, len(sizes)) * mult
                for s in sizes:
                    term = term * a[s]
                acc = acc + term
            out.append(acc)
        return PolySequence(tuple(out), 0, "partition")
    if route == "egf":
        series = TruncatedSeries.from_egf(("x",), n_max, lambda n: ONE if n[0] == 0 else a[n[0]])
        powered = series.pow(Q)
        return PolySequence(tuple(powered.egf_coefficient(n) for n in range(n_max + 1)), 0, "egf")
    raise DomainError(f"unknown route {route!r}")


def yn_of_family(c: PolySequence, n_max: int, route: str = "partition") -> PolySequence:
    """Y_n(q; c) = sum over partitions of q^|pi| prod c_|block|."""
    _check_seq(c, 1, n_max, "c")
    if route == "partition":
        out = [ONE]
        for n in range(1, n_max + 1):
            acc = ZERO
            for sizes, mult in sorted(_block_census(n).items()):
                term = Q ** len(sizes) * mult
                for s in sizes:
                    term = term * c[s]
                acc = acc + term
            out.append(acc)
        return PolySequence(tuple(out), 0, "partition")
    if route == "egf":
        series = TruncatedSeries.from_egf(("x",), n_max, lambda n: ZERO if n[0] == 0 else c[n[0]])
        powered = (series * Q).exp()
        return PolySequence(tuple(powered.egf_coefficient(n) for n in range(n_max + 1)), 0, "egf")
    raise DomainError(f"unknown route {route!r}")


def symbolic_sequence(prefix: str, n_max: int) -> PolySequence:
    """Indeterminates ``prefix:1 .. prefix:N``."""
    return PolySequence(tuple(MultiPoly.var(f"{prefix}:{k}") for k in range(1, n_max + 1)), 1,
                        prefix)


def complete_values(n_max: int, v="v") -> PolySequence:
    """a_n = (1+v)^(n(n-1)/2), n = 1..N."""
    return PolySequence(tuple(_edge_powers(v, n_max)[1:]), 1, "complete")


# -- checks ------------------------------------------------------------------------

def _convolutions(z: PolySequence, n_max: int, report: CheckReport) -> None:
    q1, q2 = MultiPoly.var("q1"), MultiPoly.var("q2")
    z1 = [z[n].subs({"q": q1}) for n in range(n_max + 1)]
    z2 = [z[n].subs({"q": q2}) for n in range(n_max + 1)]
    h1 = [ZERO] + [z[n].div_var("q").subs({"q": q1}) for n in range(1, n_max + 1)]
    for n in range(n_max + 1):
        lhs = sum((z1[k] * z2[n - k] * comb(n, k) for k in range(n + 1)), ZERO)
        report.expect_equal(lhs, z[n].subs({"q": q1 + q2}), n=n, identity="lin0")
        if n == 0:
            continue
        lin1 = sum((h1[k] * z2[n - k] * comb(n - 1, k - 1) for k in range(1, n + 1)), ZERO)
        report.expect_equal(lin1, z[n].div_var("q").subs({"q": q1 + q2}), n=n, identity="lin1")
        lin2a = sum((((q1 + q2) * comb(n - 1, k - 1) - q1 * comb(n, k)) * h1[k] * z2[n - k]
                     for k in range(1, n + 1)), ZERO)
        report.expect_equal(lin2a, z2[n], n=n, identity="lin2a")


def run_checks(max_n: int = 6) -> list[CheckReport]:
    """Complete-graph sequence checks at the acceptance sizes."""
    big = max(10, max_n)
    seqs = CheckReport("complete_sequences")
    lin, non = cn_linear(big), cn_nonlinear(big)
    seqs.expect(lin.same_entries(non), ONE, form="C linear = nonlinear", N=big)
    zc, zd, zh = zn_sequence(big, "from_cn"), zn_sequence(big, "direct_q"), zn_sequence(big, "direct_hat")
    seqs.expect(zc.same_entries(zd), ONE, form="Z from C = direct", N=big)
    seqs.expect(zc.same_entries(zh), ONE, form="Z from C = hat recursion", N=big)
    e = _edge_powers("v", big)
    for n in range(big + 1):
        seqs.expect_equal(zc[n].subs({"q": 1}), e[n], n=n, form="Z(1)")
    # nonlinear Z recursion
    for n in range(2, big + 1):
        rhs = sum(((Q + _one_plus("v") ** k - 1) * lin[k] * zc[n - k] * comb(n - 2, k - 1)
                   for k in range(1, n)), ZERO)
        seqs.expect_equal(rhs, zc[n], n=n, form="nonlinear Z")
    conv = CheckReport("complete_convolutions")
    _convolutions(zc, 8, conv)
    forms = CheckReport("complete_partition_forms")
    for n in range(0, 8):
        zn_partition_forms(n, report=forms)
    egf = CheckReport("complete_genfn")
    series = TruncatedSeries.from_egf(("x",), 8, lambda n: e[n[0]])
    powered = series.pow(Q)
    for n in range(9):
        egf.expect_equal(powered.egf_coefficient(n), zc[n], n=n)
    inv = CheckReport("inversion_enumerator")
    rec, brute = inversion_enumerator(7), inversion_enumerator(7, "brute")
    for n in range(1, 8):
        inv.expect_equal(rec[n], brute[n], n=n)
    rec8 = inversion_enumerator(8)
    for n in range(1, 9):
        p = rec8[n]
        positive = all(p.coefficient("y", k).to_scalar() >= 1 for k in range(p.degree("y") + 1))
        inv.expect(positive, p, n=n, form="positive coefficients")
    rel = check_cn_in_relation(8)
    fam = CheckReport("complete_generalised")
    a = complete_values(8)
    za, za_egf = zn_of_family(a, 8), zn_of_family(a, 8, "egf")
    c = cn_linear(8)
    yc, yc_egf = yn_of_family(c, 8), yn_of_family(c, 8, "egf")
    sym_a, sym_c = symbolic_sequence("a", 6), symbolic_sequence("c", 6)
    gza, gyc = zn_of_family(sym_a, 6), yn_of_family(sym_c, 6)
    gza_egf, gyc_egf = zn_of_family(sym_a, 6, "egf"), yn_of_family(sym_c, 6, "egf")
    for n in range(9):
        fam.expect_equal(za[n], zc[n], n=n, form="Z(q;a) complete")
        fam.expect_equal(za_egf[n], zc[n], n=n, form="Z(q;a) egf")
        fam.expect_equal(yc[n], zc[n], n=n, form="Y(q;C)")
        fam.expect_equal(yc_egf[n], zc[n], n=n, form="Y(q;C) egf")
    for n in range(7):
        fam.expect_equal(gza[n], gza_egf[n], n=n, form="generic Z(q;a) routes")
        fam.expect_equal(gyc[n], gyc_egf[n], n=n, form="generic Y(q;c) routes")
        if n >= 1:
            fam.expect_equal(gza[n].subs({"q": 1}), sym_a[n], n=n, form="Z(1;a)")
            shifted = [gza[m].subs({"q": Q - 1}) for m in range(n)]
            rhs = Q * sum((sym_a[k] * shifted[n - k] * comb(n - 1, k - 1)
                           for k in range(1, n + 1)), ZERO)
            fam.expect_equal(gza[n], rhs, n=n, form="Z(q;a) recursion")
            rhs = Q * sum((sym_c[k] * gyc[n - k] * comb(n - 1, k - 1) for k in range(1, n + 1)), ZERO)
            fam.expect_equal(gyc[n], rhs, n=n, form="Y(q;c) recursion")
    return [seqs, brute_connected_check(4), conv, forms, egf, inv, rel, fam]


def brute_connected_check(n_max: int = 4, report: CheckReport | None = None) -> CheckReport:
    """C_n(v) from the recursions against brute-force subset sums on K_n."""
    from .graphs import complete_graph
    from .tutte import connected_poly

    report = report or CheckReport("complete_brute")
    lin, non = cn_linear(n_max), cn_nonlinear(n_max)
    for n in range(1, n_max + 1):
        brute = connected_poly(complete_graph(n, "v"))
        report.expect_equal(lin[n], brute, n=n, form="linear")
        report.expect_equal(non[n], brute, n=n, form="nonlinear")
    return report


def as_sequence(values: Sequence, start: int = 1) -> PolySequence:
    return PolySequence(tuple(as_poly(v) for v in values), start)
