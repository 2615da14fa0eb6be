import json

import pytest

from tuttealg import identities
from tuttealg.errors import DomainError, UsageError
from tuttealg.exactalg import MultiPoly
from tuttealg.graphs import (
    complete_graph,
    cycle_graph,
    path_graph,
    star_graph,
    triangle_with_loop,
)
from tuttealg.identities import (
    SUITES,
    SubgraphTable,
    check_blowup_genfn,
    check_bipartite_chromatic_genfn,
    check_convolution_props,
    check_genborgs,
    check_lass,
    check_nonlinear,
    check_partition_q1q2,
    corpus_from_files,
    default_corpus,
    run_suite,
)
from tuttealg.report import CheckReport, all_passed
from tuttealg.tutte import z_poly

P = MultiPoly.parse


def test_default_corpus_members():
    names = [g.name for g in default_corpus()]
    for expected in ("K1", "K5", "K1,3", "K2,3", "P4", "C4", "C5", "K4-e", "K2^(2)", "K3+loop"):
        assert expected in names


@pytest.mark.parametrize("g", [complete_graph(1), complete_graph(2), complete_graph(3), cycle_graph(4)],
                         ids=lambda g: g.name)
def test_partition_q1q2(g):
    assert check_partition_q1q2(g).passed


def test_partition_q1q2_k2_by_hand():
    q1, q2, v = MultiPoly.var("q1"), MultiPoly.var("q2"), MultiPoly.var("v")
    rhs = (q2 - q1) * 1 * 1 + (q1 + v)
    assert rhs == q2 + v
    assert z_poly(complete_graph(2, "v")).div_var("q").subs({"q": q2}) == rhs


def test_partition_rejects_loops():
    with pytest.raises(DomainError):
        check_partition_q1q2(triangle_with_loop())


def test_corrupted_table_is_caught():
    g = complete_graph(3)
    t = SubgraphTable(g)
    t.z[t.full] = t.z[t.full] + 1
    r = check_partition_q1q2(g, t)
    assert not r.passed
    assert r.witness["residual"] != "0"
    assert r.witness["graph"] == g.fingerprint()


@pytest.mark.parametrize("g", [complete_graph(1), complete_graph(2), complete_graph(3)],
                         ids=lambda g: g.name)
def test_convolution_props(g):
    assert check_convolution_props(g).passed


def test_lin0_on_k1():
    q1, q2 = MultiPoly.var("q1"), MultiPoly.var("q2")
    assert z_poly(complete_graph(1)).subs({"q": q1 + q2}) == q1 * 1 + 1 * q2


def test_nonlinear_examples():
    k2 = complete_graph(2, "v")
    q, v = MultiPoly.var("q"), MultiPoly.var("v")
    assert (q - 1 + (1 + v)) * 1 * q == z_poly(k2)
    assert check_nonlinear(k2, "1", "2").passed
    assert check_nonlinear(complete_graph(3, "v"), "1", "3").passed


def test_genborgs_examples():
    assert check_genborgs(complete_graph(2), "2").passed
    assert check_genborgs(complete_graph(3), "1").passed
    s = star_graph(3)
    centre = next(v for v in s.vertices if len(s.neighbours(v)) == 3)
    assert check_genborgs(s, centre).passed


def test_blowup_examples():
    assert check_blowup_genfn(complete_graph(1), (4,)).passed
    assert check_blowup_genfn(complete_graph(2), (2, 2)).passed
    assert check_bipartite_chromatic_genfn((3, 3)).passed


def test_lass_examples():
    assert check_lass(complete_graph(2)).passed
    assert check_lass(path_graph(3)).passed


def test_run_suite_unknown():
    with pytest.raises(UsageError):
        run_suite(None, "bogus")


def test_run_suite_empty_corpus():
    reports = run_suite([], "partitions", threads=1)
    assert all_passed(reports)
    assert all(r.instances == 0 for r in reports)


def test_run_suite_fault_injection(monkeypatch):
    real = identities.z_poly

    def corrupted(g):
        z = real(g)
        return z + MultiPoly.var("q") if g.n == 3 else z

    monkeypatch.setattr(identities, "z_poly", corrupted)
    reports = run_suite([complete_graph(3)], "partitions", threads=1)
    assert not all_passed(reports)
    witness = reports[0].witness
    assert witness is not None and witness["residual"] != "0"


def test_run_suite_order_independent_of_threads():
    corpus = [complete_graph(2), complete_graph(3), path_graph(3)]
    one = [r.to_line() for r in run_suite(corpus, "nonlinear", threads=1)]
    two = [r.to_line() for r in run_suite(corpus, "nonlinear", threads=2)]
    assert one == two


def test_report_lines_are_json():
    for r in run_suite([complete_graph(2)], "lass", threads=1):
        data = json.loads(r.to_line())
        assert data["status"] == "PASS" and data["check"] == "lass"


def test_report_semantics():
    r = CheckReport("x")
    assert r.expect_equal(P("q"), P("q"))
    assert r.passed
    assert not r.expect_equal(P("q"), P("q+1"))
    assert r.status == "FAIL" and r.witness["residual"] == "-1"
    assert r.instances == 2


def test_corpus_from_files(tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(complete_graph(3).dumps())
    [g] = corpus_from_files([path])
    assert g.n == 3 and g.m == 3


def test_suites_listed():
    assert set(SUITES) >= {"partitions", "convolutions", "nonlinear", "genborgs", "blowup",
                           "lass", "abel", "mobius", "complete"}
