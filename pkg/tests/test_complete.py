from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from tuttealg.complete import (
    PolySequence,
    as_sequence,
    brute_connected_check,
    check_cn_in_relation,
    cn_linear,
    cn_nonlinear,
    complete_values,
    count_inversions,
    inversion_enumerator,
    run_checks,
    symbolic_sequence,
    yn_of_family,
    zn_of_family,
    zn_partition_forms,
    zn_sequence,
)
from tuttealg.errors import DomainError, ResourceError
from tuttealg.exactalg import MultiPoly
from tuttealg.graphs import complete_graph
from tuttealg.partitions import bell
from tuttealg.tutte import connected_poly, z_poly

P = MultiPoly.parse
q, v, y = MultiPoly.var("q"), MultiPoly.var("v"), MultiPoly.var("y")


def test_cn_examples():
    c = cn_linear(5)
    assert c[1] == 1 and c[2] == v
    assert c[3] == P("3*v^2 + v^3") == connected_poly(complete_graph(3, "v"))
    assert [c[n].subs({"v": 1}) for n in range(1, 6)] == [1, 1, 4, 38, 728]
    assert cn_nonlinear(5).same_entries(c)
    with pytest.raises(DomainError):
        cn_linear(0)


@pytest.mark.parametrize("n", range(1, 6))
def test_cn_matches_brute_force(n):
    assert cn_linear(n)[n] == connected_poly(complete_graph(n, "v"))


def test_cn_recursions_agree_to_ten():
    assert cn_linear(10).same_entries(cn_nonlinear(10))


def test_zn_examples():
    z = zn_sequence(4)
    assert z[0] == 1 and z[1] == q and z[2] == P("q^2 + q*v")
    assert z[3] == z_poly(complete_graph(3, "v"))
    assert z[4].subs({"q": 1}) == (1 + v) ** 6
    assert z.to_text()[:3] == ["1", "q", "q^2 + q*v"]
    with pytest.raises(DomainError):
        zn_sequence(3, "nope")


def test_zn_modes_agree():
    a = zn_sequence(10, "from_cn")
    assert a.same_entries(zn_sequence(10, "direct_q"))
    assert a.same_entries(zn_sequence(10, "direct_hat"))


def test_partition_forms():
    for n in range(8):
        assert zn_partition_forms(n).passed
    with pytest.raises(ResourceError):
        zn_partition_forms(9)


def test_partition_form_n2_by_hand():
    assert q * (q - 1) + q * (1 + v) == P("q^2 + q*v")


def test_inversion_examples():
    inv = inversion_enumerator(4)
    assert inv[1] == 1 and inv[2] == 1
    assert inv[3] == P("2 + y")
    assert inv[4].subs({"y": 1}) == 16
    assert inversion_enumerator(7).same_entries(
        PolySequence(inversion_enumerator(7, "brute").entries, 1, "recursion"))
    with pytest.raises(ResourceError):
        inversion_enumerator(9, "brute")


def test_count_inversions_by_hand():
    # the three trees on {1,2,3} rooted at 1
    assert count_inversions({1: None, 2: 1, 3: 1}) == 0
    assert count_inversions({1: None, 2: 1, 3: 2}) == 0
    assert count_inversions({1: None, 3: 1, 2: 3}) == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_inversion_coefficients_positive(n):
    p = inversion_enumerator(8)[n]
    assert all(p.coefficient("y", k).to_scalar() >= 1 for k in range(p.degree("y") + 1))


def test_cn_in_relation():
    assert v ** 2 * (2 + (1 + v)) == P("3*v^2 + v^3")
    assert check_cn_in_relation(8).passed


def test_zn_of_family_examples():
    ones = as_sequence([1] * 6)
    z = zn_of_family(ones, 6)
    assert all(z[n] == q ** n for n in range(7))
    a = symbolic_sequence("a", 4)
    assert zn_of_family(a, 1)[1] == q * a[1]
    assert zn_of_family(complete_values(4), 4)[4] == zn_sequence(4)[4]
    gen = zn_of_family(a, 4)
    assert all(gen[n].subs({"q": 1}) == a[n] for n in range(1, 5))


def test_zn_of_family_routes_agree():
    a = symbolic_sequence("a", 6)
    assert zn_of_family(a, 6).same_entries(
        PolySequence(zn_of_family(a, 6, "egf").entries, 0, "partition"))


def test_yn_of_family_examples():
    ones = as_sequence([1] * 7)
    y1 = yn_of_family(ones, 7).subs({"q": 1})
    assert [y1[n] for n in range(8)] == [bell(n) for n in range(8)]
    c = symbolic_sequence("c", 3)
    assert yn_of_family(c, 1)[1] == q * c[1]
    assert yn_of_family(cn_linear(4), 4)[4] == zn_sequence(4)[4]


@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5))
@settings(max_examples=15, deadline=None)
def test_generalised_recursions(values):
    from math import comb

    a = as_sequence(values)
    z = zn_of_family(a, 5)
    yv = yn_of_family(a, 5)
    for n in range(1, 6):
        shifted = sum((a[k] * z[n - k].subs({"q": q - 1}) * comb(n - 1, k - 1)
                       for k in range(1, n + 1)), MultiPoly.zero())
        assert z[n] == q * shifted
        rec = sum((a[k] * yv[n - k] * comb(n - 1, k - 1) for k in range(1, n + 1)), MultiPoly.zero())
        assert yv[n] == q * rec


def test_prufer_tree_count():
    from tuttealg.complete import _prufer_trees

    for n in range(1, 7):
        trees = list(_prufer_trees(n))
        assert len(trees) == max(1, n ** (n - 2))
        assert len({tuple(sorted(t.items(), key=lambda kv: kv[0])) for t in trees}) == len(trees)


def test_run_checks_pass():
    reports = run_checks(6)
    assert all(r.passed for r in reports)
    assert brute_connected_check(4).passed


def test_sequence_indexing():
    c = cn_linear(3)
    assert list(c.indices()) == [1, 2, 3]
    with pytest.raises(IndexError):
        c[0]
    assert list(product([1], repeat=0)) == [()]
