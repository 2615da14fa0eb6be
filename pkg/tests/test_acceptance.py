"""Acceptance criteria 1-11, each exact and timed.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL line per
criterion, or ``python3 tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from tuttealg import complete, mobius
from tuttealg.exactalg import MultiPoly
from tuttealg.families import CoeffSequence, check_roundtrip
from tuttealg.identities import default_corpus, run_suite
from tuttealg.report import CheckReport
from tuttealg.tutte import z_coloring, z_poly

RESULTS: dict[int, str] = {}


def _record(number: int, title: str, limit: float, body) -> None:
    start = time.perf_counter()
    error = None
    try:
        reports = body()
    except Exception as exc:  # recorded, then re-raised below
        reports, error = [], exc
    elapsed = time.perf_counter() - start
    failed = [r.check for r in reports if not r.passed]
    ok = error is None and not failed and elapsed < limit
    detail = f"{elapsed:.2f}s < {limit:g}s" if elapsed < limit else f"{elapsed:.2f}s exceeds {limit:g}s"
    if failed:
        detail += f"; failing: {', '.join(failed)}"
    if error is not None:
        detail += f"; error: {error!r}"
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    RESULTS[number] = line
    print(line)
    if error is not None:
        raise error
    assert not failed, line
    assert elapsed < limit, line


def _suite(name: str) -> list[CheckReport]:
    return run_suite(default_corpus(), name, threads=1)


def test_criterion_01_fk_oracle():
    def body():
        r = CheckReport("fk_oracle")
        for g in default_corpus():
            if g.is_loopless() and g.n <= 5 and g.m <= 8:
                z = z_poly(g)
                r.add_member(g.name)
                for q in range(1, 5):
                    r.expect_equal(z_coloring(g, q), z.subs({"q": q}), graph=g.fingerprint(), q=q)
        assert len(r.members) >= 10
        return [r]

    _record(1, "colouring sum = subset sum, q = 1..4", 10, body)


def test_criterion_02_partition_identity():
    def body():
        reports = _suite("partitions")
        covered = set(reports[0].members)
        expected = {g.name for g in default_corpus() if g.is_loopless() and g.n <= 6}
        assert expected <= covered
        return reports

    _record(2, "partition identity in (q1, q2, v) with its q1 = 0, 1 cases", 60, body)


def test_criterion_03_convolutions():
    def body():
        reports = _suite("convolutions")
        assert {g.name for g in default_corpus() if g.is_loopless()} <= set(reports[0].members)
        return reports

    _record(3, "convolution identities for every distinguished vertex", 30, body)


def test_criterion_04_nonlinear_and_expansion():
    _record(4, "nonlinear identity and its connected case, vertex-deleted expansion", 60,
            lambda: _suite("nonlinear") + _suite("genborgs"))


def test_criterion_05_blowups():
    _record(5, "blow-up generating functions for K1, K2 and the chromatic bipartite case", 120,
            lambda: run_suite(None, "blowup", threads=1))


def test_criterion_06_complete_sequences():
    def body():
        seqs = CheckReport("complete_sequences")
        lin, non = complete.cn_linear(10), complete.cn_nonlinear(10)
        seqs.expect(lin.same_entries(non), 1, form="C linear = nonlinear")
        seqs.expect_equal(lin[4].subs({"v": 1}), 38, form="C_4(1)")
        seqs.expect(complete.zn_sequence(10, "direct_q").same_entries(
            complete.zn_sequence(10, "from_cn")), 1, form="Z direct = from C")
        forms = CheckReport("complete_partition_forms")
        for n in range(8):
            complete.zn_partition_forms(n, report=forms)
        by_name = {r.check: r for r in complete.run_checks(6)}
        return [seqs, complete.brute_connected_check(4), forms, by_name["complete_genfn"],
                by_name["complete_convolutions"]]

    _record(6, "complete-graph sequences, brute force, partition forms, EGF to x^8", 120, body)


def test_criterion_07_inversion_enumerator():
    def body():
        inv = CheckReport("inversion_enumerator")
        rec, brute = complete.inversion_enumerator(7), complete.inversion_enumerator(7, "brute")
        for n in range(1, 8):
            inv.expect_equal(rec[n], brute[n], n=n)
        big = complete.inversion_enumerator(8)
        for n in range(1, 9):
            p = big[n]
            inv.expect(all(p.coefficient("y", k).to_scalar() >= 1 for k in range(p.degree("y") + 1)),
                       p, n=n)
        return [inv, complete.check_cn_in_relation(8)]

    _record(7, "inversion enumerator: recursion = tree enumeration, C-I relation", 60, body)


def test_criterion_08_binomial_families():
    def body():
        reports = run_suite(None, "abel", threads=1)
        names = {r.check for r in reports}
        assert {"convolutions", "abel", "knuth_transform", "connected_roundtrip"} <= names
        rng = random.Random(2024)
        v = MultiPoly.var("v")
        rt = CheckReport("random_roundtrip")
        for cap in (6, 6, 6, (3, 3), (3, 3)):
            c = CoeffSequence.from_function(cap, lambda n: rng.randint(-5, 5) + rng.randint(-3, 3) * v)
            check_roundtrip(c, rt)
        return reports + [rt]

    _record(8, "binomial-type round trips, convolutions, recursion, transform, Abel", 120, body)


def test_criterion_09_mobius():
    def body():
        reports = mobius.lattice_checks(5)
        coherent = CheckReport("mobius_coherent")
        for g in default_corpus():
            if g.n <= 5 and g.is_loopless():
                mobius.check_coherent_family(g, report=coherent)
        return reports + [coherent]

    _record(9, "q1-q2 composition, lemma, specialisations, Rota, conjugation, coherence", 120,
            body)


def test_criterion_10_sign_inequality():
    def body():
        reports = _suite("sign")
        assert {g.name for g in default_corpus()} <= set(reports[0].members)
        return reports

    _record(10, "sign pattern of lambda-derivatives on an exact grid", 30, body)


def test_criterion_11_determinism(tmp_path):
    def body():
        cmd = [sys.executable, "-m", "tuttealg", "check", "all"]
        first = subprocess.run(cmd, capture_output=True, check=False)
        second = subprocess.run(cmd, capture_output=True, check=False)
        r = CheckReport("determinism")
        r.expect(first.returncode == 0 and second.returncode == 0, 1, stage="exit code")
        r.expect(first.stdout == second.stdout and len(first.stdout) > 0, 1, stage="bytes")
        return [r]

    _record(11, "`check all` twice gives byte-identical reports", 600, body)


def test_sign_grid_is_exact():
    from tuttealg.identities import SIGN_GRID, SIGN_VALUES

    assert [Fraction(x) for x in SIGN_GRID] == [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1]
    assert sorted(Fraction(x) for x in SIGN_VALUES) == [-1, Fraction(-3, 4), Fraction(-1, 2),
                                                         Fraction(-1, 4)]


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"])
    sys.exit(code)
