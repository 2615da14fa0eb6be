import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from tuttealg.errors import DomainError, StructuralError
from tuttealg.exactalg import MultiPoly, falling_factorial, rising_factorial
from tuttealg.families import (
    BinomialFamily,
    CoeffSequence,
    check_abel,
    check_convolutions,
    check_generating_function,
    check_power_expand,
    check_roundtrip,
    classic_connected,
    classic_family,
    connected_from_family,
    default_families,
    default_multi_families,
    family_from_connected,
    family_from_values,
    family_power_expand,
    indices_upto,
    knuth_transform,
    pivot_independence,
    symbolic_connected,
)
from tuttealg.partitions import stirling2

P = MultiPoly.parse
q, t = MultiPoly.var("q"), MultiPoly.var("t")


def partition_sum_family(c, n):
    """a_n(q) = sum over partitions of q^|pi| prod c_|block| (oracle, 1-D)."""
    from tuttealg.partitions import enumerate_partitions

    total = MultiPoly.zero()
    for pi in enumerate_partitions(range(n)):
        term = q ** len(pi)
        for s in pi.block_sizes():
            term = term * c[s]
        total = total + term
    return total


def test_family_from_connected_examples():
    bell = family_from_connected(CoeffSequence.from_function(5, lambda n: 1))
    for n in range(6):
        expected = sum((q ** k * stirling2(n, k) for k in range(n + 1)), MultiPoly.zero())
        assert bell[n] == expected
    exp = family_from_connected(CoeffSequence.from_function(5, lambda n: 1 if n == (1,) else 0))
    assert all(exp[n] == q ** n for n in range(6))
    zero = family_from_connected(CoeffSequence.from_function(4, lambda n: 0))
    assert zero[0] == 1 and all(zero[n] == 0 for n in range(1, 5))


def test_family_matches_partition_sum():
    c = symbolic_connected(5)
    f = family_from_connected(c)
    for n in range(1, 6):
        assert f[n] == partition_sum_family(c, n)


def test_connected_from_family_examples():
    bell = classic_family("bell", 5)
    assert all(connected_from_family(bell)[n] == 1 for n in range(1, 6))
    complete = classic_family("complete", 5)
    from tuttealg.complete import cn_linear

    cn = cn_linear(5)
    back = connected_from_family(complete)
    assert all(back[n] == cn[n] for n in range(1, 6))
    exp = classic_family("exp", 4)
    back = connected_from_family(exp)
    assert [back[n] for n in range(1, 5)] == [1, 0, 0, 0]


def test_family_invariants_enforced():
    with pytest.raises(DomainError):
        BinomialFamily((2,), {(0,): MultiPoly.const(2), (1,): q, (2,): q ** 2})
    with pytest.raises(DomainError):
        BinomialFamily((1,), {(0,): MultiPoly.one(), (1,): q + 1})
    with pytest.raises(DomainError):
        BinomialFamily((1,), {(0,): MultiPoly.one(), (1,): q ** 2})
    with pytest.raises(DomainError):
        CoeffSequence((2,), {(0,): 1, (1,): 1, (2,): 1})


def test_power_expand_examples():
    bell = classic_family("bell", 4)
    table = family_power_expand(bell, 1, q)
    assert table[(3,)] == P("q^3 + 3*q^2 + q")
    same = family_power_expand(bell, q, q)
    assert all(same[n] == bell[n] for n in bell.indices())
    zero = family_power_expand(bell, q, 0)
    assert all(zero[n] == 0 for n in bell.indices() if sum(n))


@pytest.mark.parametrize("f", default_families(5) + default_multi_families(), ids=lambda f: f.name)
def test_power_expand_all_families(f):
    assert check_power_expand(f).passed


def test_convolution_examples():
    q1, q2 = MultiPoly.var("q1"), MultiPoly.var("q2")
    for name in ("exp", "1+x"):
        f = classic_family(name, 5)
        for n in range(6):
            lhs = sum((f.a_at(k, q1) * f.a_at(n - k, q2) * comb(n, k) for k in range(n + 1)),
                      MultiPoly.zero())
            assert lhs == f.a_at(n, q1 + q2)
    assert classic_family("exp", 5)[3] == q ** 3
    assert classic_family("1+x", 5)[3] == falling_factorial(q, 3)


@pytest.mark.parametrize("f", default_families(6) + default_multi_families(), ids=lambda f: f.name)
def test_convolutions_and_abel(f):
    assert check_convolutions(f).passed
    assert check_abel(f).passed


def test_abel_example_n2():
    q1, q2 = MultiPoly.var("q1"), MultiPoly.var("q2")
    lhs = MultiPoly.zero()
    for k in range(3):
        first = MultiPoly.one() if k == 0 else q1 * (q1 + k * t) ** (k - 1)
        lhs = lhs + first * (q2 - k * t) ** (2 - k) * comb(2, k)
    assert lhs == (q1 + q2) ** 2


def test_knuth_examples():
    exp = classic_family("exp", 6)
    k = knuth_transform(exp, n_max=6)
    assert k[2] == q * (q + 2 * t)
    assert all(k[n].subs({"t": 0}) == exp[n] for n in range(7))
    rothe = knuth_transform(classic_family("1+x", 6), n_max=6)
    for n in range(1, 7):
        assert rothe[n] == q * falling_factorial(q + n * t - 1, n - 1)
    with pytest.raises(StructuralError):
        knuth_transform(default_multi_families()[0])


def test_classic_examples():
    assert classic_family("bell", 3)[3] == P("q + 3*q^2 + q^3")
    assert classic_family("geometric", 3)[3] == rising_factorial(q, 3)
    assert all(classic_family("exp", 5)[n] == q ** n for n in range(6))
    with pytest.raises(DomainError):
        classic_family("nope", 3)


@pytest.mark.parametrize("name", ["exp", "1+x", "geometric", "affine", "bell", "laguerre"])
def test_closed_forms_match_connected(name):
    built = family_from_connected(classic_connected(name, 6, 2, 3))
    ref = classic_family(name, 6, 2, 3)
    assert all(built[n] == ref[n] for n in ref.indices())


@pytest.mark.parametrize("f", default_families(5) + default_multi_families(), ids=lambda f: f.name)
def test_generating_function(f):
    assert check_generating_function(f).passed


def _random_coeffs(rng, cap):
    v = MultiPoly.var("v")
    return CoeffSequence.from_function(
        cap, lambda n: rng.randint(-3, 3) + rng.randint(-2, 2) * v)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=8, deadline=None)
def test_roundtrip_random_1d(seed):
    assert check_roundtrip(_random_coeffs(random.Random(seed), 6)).passed


@given(st.integers(0, 10 ** 6))
@settings(max_examples=4, deadline=None)
def test_roundtrip_random_2d(seed):
    assert check_roundtrip(_random_coeffs(random.Random(seed), (3, 3))).passed


def test_inverse_is_q_independent():
    f = family_from_connected(symbolic_connected(5))
    c = connected_from_family(f)
    for n in range(1, 6):
        assert f.ahat_at(n, 0) == c[n]
        assert c[n].degree("q") <= 0


def test_pivot_independence():
    c = symbolic_connected((3, 3))
    assert pivot_independence(c, family_from_connected(c)).passed


def test_family_from_values_bipartite():
    cap = (3, 3)
    vals = {n: (1 if n[0] == 0 or n[1] == 0 else 0) for n in indices_upto(cap)}
    f = family_from_values(vals, cap)
    assert all(f.a_at(n, 1) == vals[n] for n in f.indices())


def test_family_dump_format():
    assert classic_family("exp", 2).to_json() == {"0": "1", "1": "q", "2": "q^2"}
