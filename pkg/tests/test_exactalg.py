from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from tuttealg.errors import DomainError, RangeError, StructuralError
from tuttealg.exactalg import (
    MultiPoly,
    TruncatedSeries,
    VariableRegistry,
    extract_coeff,
    falling_factorial,
    implicit_knuth_solve,
    parse_rational,
    poly_arith,
    rising_factorial,
    series_exp,
    series_log,
    series_pow_symbolic,
)

P = MultiPoly.parse
q, x = MultiPoly.var("q"), MultiPoly.var("x")


def series(coeffs, cap, var="x"):
    """Univariate ordinary-coefficient series from a list."""
    return TruncatedSeries((var,), cap, {(n,): c for n, c in enumerate(coeffs) if c})


# -- polynomials -------------------------------------------------------------------

def test_poly_arith_examples():
    assert poly_arith(P("q+1"), P("q-1"), "mul") == P("q^2 - 1")
    assert poly_arith(P("q"), MultiPoly.zero(), "mul") == MultiPoly.zero()
    assert not poly_arith(P("q"), MultiPoly.zero(), "mul").terms()
    assert poly_arith(P("q2-q1"), P("q2-2*q1"), "mul") == P("q2^2 - 3*q1*q2 + 2*q1^2")


def test_registry_mismatch_is_structural():
    other = VariableRegistry()
    a = MultiPoly.var("q", other)
    with pytest.raises(StructuralError):
        poly_arith(a, MultiPoly.var("q"), "add")


def test_falling_factorial_examples():
    assert falling_factorial(q, 3) == P("q^3 - 3*q^2 + 2*q")
    assert falling_factorial(P("p"), 0) == MultiPoly.one()
    rs = P("r*s")
    assert falling_factorial(rs, 2) == P("r^2*s^2 - r*s")


def test_rising_factorial():
    assert rising_factorial(q, 3) == P("q^3 + 3*q^2 + 2*q")


def test_canonical_text():
    assert P("q*v:0 + q^2").to_text() == "q^2 + q*v:0"
    assert P("q2^2 - 3*q1*q2 + 2*q1^2").to_text() == "2*q1^2 - 3*q1*q2 + q2^2"
    assert P("3/2*q - 1/3").to_text() == "3/2*q - 1/3"
    assert MultiPoly.zero().to_text() == "0"


def test_json_roundtrip():
    p = P("3/2*q^2*v:0 - q + 1")
    data = p.to_json()
    assert data["vars"] == ["q", "v:0"]
    assert MultiPoly.from_json(data) == p


def test_parse_rational():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("2") == 2
    with pytest.raises(DomainError):
        parse_rational("1/0")
    with pytest.raises(DomainError):
        parse_rational("abc")


def test_subs_evaluate_diff():
    p = P("q^2 + q*v")
    assert p.subs({"q": 1}) == P("1 + v")
    assert p.evaluate({"q": 2, "v": Fraction(1, 2)}) == 5
    assert p.diff("q") == P("2*q + v")
    assert p.div_var("q") == P("q + v")
    assert p.degree("q") == 2 and p.degree() == 2


small_polys = st.builds(
    lambda cs: sum((MultiPoly.const(c) * MultiPoly.var(v) ** e
                    for c, (v, e) in cs), MultiPoly.zero()),
    st.lists(st.tuples(st.integers(-3, 3),
                       st.tuples(st.sampled_from(["q", "v", "t"]), st.integers(0, 3))),
             max_size=4))


@given(small_polys, small_polys, small_polys)
@settings(max_examples=60, deadline=None)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.zero()


@given(small_polys)
@settings(max_examples=40, deadline=None)
def test_serialisation_is_deterministic(a):
    assert a.to_text() == a.to_text()
    assert P(a.to_text()) == a
    assert MultiPoly.from_json(a.to_json()) == a


# -- series ------------------------------------------------------------------------

def test_exp_log_examples():
    assert series_log(series([1], 4)) == series([], 4)
    log = series_log(series([1, 1], 3))
    assert [log[n] for n in range(4)] == [0, 1, Fraction(-1, 2), Fraction(1, 3)]
    e = TruncatedSeries.from_egf(("x",), 4, lambda n: 1)
    assert series_log(e) == series([0, 1], 4)
    assert series_exp(series([0, 1], 4)) == e


def test_exp_and_log_domain():
    with pytest.raises(DomainError):
        series_exp(series([1, 1], 3))
    with pytest.raises(DomainError):
        series_log(series([2, 1], 3))
    with pytest.raises(DomainError):
        series_pow_symbolic(series([2, 1], 3), q)


def test_pow_symbolic_table_rows():
    s = series_pow_symbolic(series([1, 1], 3), q)
    for n in range(4):
        assert s.egf_coefficient(n) == falling_factorial(q, n)
    e = TruncatedSeries.from_egf(("x",), 4, lambda n: 1)
    s = series_pow_symbolic(e, q)
    for n in range(5):
        assert s.egf_coefficient(n) == q ** n
    arbitrary = series([1, 3, P("v"), -2], 3)
    assert series_pow_symbolic(arbitrary, 1) == arbitrary


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.integers(0, 4))
@settings(max_examples=30, deadline=None)
def test_pow_symbolic_matches_repeated_product(tail, m):
    s = series([1] + tail, 4)
    powered = series_pow_symbolic(s, q)
    direct = TruncatedSeries.one(("x",), 4)
    for _ in range(m):
        direct = direct * s
    assert powered.map_coefficients(lambda c: c.subs({"q": m})) == direct


def test_knuth_solve_examples():
    e = TruncatedSeries.from_egf(("x",), 4, lambda n: 1)
    assert implicit_knuth_solve(e, 0, 4) == e
    w = implicit_knuth_solve(e, 1, 4)
    assert [w.egf_coefficient(n) for n in range(5)] == [1, 1, 3, 16, 125]
    with pytest.raises(DomainError):
        implicit_knuth_solve(series([2, 1], 3), 1, 3)


def test_knuth_solve_rothe_coefficients():
    t = MultiPoly.var("t")
    w = implicit_knuth_solve(series([1, 1], 3), t, 3)
    powered = w.pow(q)
    for n in range(1, 4):
        # a_n(q) = q^(falling n), so its reduced form is (q-1)^(falling n-1)
        ahat = falling_factorial(q + t * n - 1, n - 1)
        assert powered.egf_coefficient(n) == q * ahat


@given(st.lists(st.integers(-2, 2), min_size=3, max_size=3))
@settings(max_examples=20, deadline=None)
def test_knuth_solve_satisfies_equation(tail):
    t = MultiPoly.var("t")
    a = series([1] + tail, 3)
    w = implicit_knuth_solve(a, t, 3)
    xs = TruncatedSeries.variable(("x",), 3)
    assert w == a.compose(xs * w.pow(t))


def test_extract_coeff_examples():
    s = TruncatedSeries(("x:1", "x:2"), (1, 1), {(0, 0): 1, (1, 0): 1, (0, 1): 1})
    assert extract_coeff(s.pow(q), (1, 1)) == P("q^2 - q")
    assert extract_coeff(s, (0, 0)) == 1
    zero = TruncatedSeries(("x",), 3, {})
    assert extract_coeff(zero, (2,)) == 0
    with pytest.raises(RangeError):
        extract_coeff(zero, (4,))


def test_binary_ops_take_min_cap():
    a, b = series([1, 1, 1, 1], 3), series([1, 2], 1)
    assert (a * b).cap == b.cap
    assert (a + b) == series([2, 3], 1)


def test_multivariate_exp_log_inverse():
    caps = (2, 2)
    coeffs = {e: P(f"c{e[0]}{e[1]}") for e in product(range(3), repeat=2) if e != (0, 0)}
    s = TruncatedSeries(("x", "y"), caps, coeffs)
    assert series_log(series_exp(s)) == s
