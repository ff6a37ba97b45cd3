"""Randomized algebraic laws: order axioms, ring axioms, evaluation."""
from fractions import Fraction

from hypothesis import given, strategies as st

from tvforge.poly import (MonomialOrder, Polynomial, QuotientAlgebra,
                          QuotientPoint, VariableRegistry, compare_monomials,
                          evaluate_at)

REG = VariableRegistry(("x", "y", "z"))
ORDERS = [MonomialOrder("lex", REG), MonomialOrder("degrevlex", REG)]

monomials = st.tuples(st.integers(0, 6), st.integers(0, 6),
                      st.integers(0, 6))
coeffs = st.fractions(min_value=-9, max_value=9).filter(bool)
polynomials = st.dictionaries(monomials, coeffs, max_size=6).map(
    lambda d: Polynomial(REG, d))
order_ix = st.integers(0, len(ORDERS) - 1)


@given(monomials, monomials, order_ix)
def test_totality_and_antisymmetry(a, b, k):
    order = ORDERS[k]
    cab = compare_monomials(a, b, order)
    cba = compare_monomials(b, a, order)
    assert cab == -cba
    assert (cab == 0) == (a == b)


@given(monomials, order_ix)
def test_one_is_minimal(m, k):
    order = ORDERS[k]
    one = (0, 0, 0)
    assert compare_monomials(one, m, order) <= 0


@given(monomials, monomials, monomials, order_ix)
def test_multiplication_compatible(m, m1, m2, k):
    order = ORDERS[k]
    if compare_monomials(m1, m2, order) < 0:
        p1 = tuple(a + b for a, b in zip(m, m1))
        p2 = tuple(a + b for a, b in zip(m, m2))
        assert compare_monomials(p1, p2, order) < 0


@given(polynomials, polynomials, polynomials)
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert (f + (-f)).is_zero


@given(polynomials, polynomials, polynomials)
def test_evaluation_is_a_homomorphism(f, g, h):
    alg = QuotientAlgebra((Fraction(-1), Fraction(0), Fraction(-1),
                           Fraction(0), Fraction(1)))
    point = QuotientPoint(alg, {
        "x": alg.parse_element("t^2"),
        "y": alg.parse_element("t^3 - t"),
        "z": alg.parse_element("2*t - 1"),
    }, REG)
    left = evaluate_at(f * g + h, point)
    right = alg.add(alg.mul(evaluate_at(f, point), evaluate_at(g, point)),
                    evaluate_at(h, point))
    assert left == right


@given(polynomials, order_ix)
def test_serialization_round_trip(f, k):
    order = ORDERS[k]
    assert Polynomial.parse(f.canonical_str(order), REG) == f
