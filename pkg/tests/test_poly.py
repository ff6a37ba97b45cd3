from fractions import Fraction

import pytest

from tvforge.poly import (MonomialOrder, Polynomial, PolynomialParseError,
                          QuotientAlgebra, QuotientPoint, RegistryMismatch,
                          UnassignedVariable, VariableRegistry,
                          ZeroPolynomialError, compare_monomials, evaluate_at)

XY = VariableRegistry(("x", "y"))
LEX = MonomialOrder("lex", XY)
DRL = MonomialOrder("degrevlex", XY)


def P(text, reg=XY):
    return Polynomial.parse(text, reg)


class TestRegistry:
    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            VariableRegistry(("x", "x"))

    def test_positions(self):
        assert XY.index("y") == 1
        assert "x" in XY and "z" not in XY

    def test_extend_is_fresh(self):
        ext = XY.extend("z")
        assert ext.names == ("x", "y", "z")
        assert XY.names == ("x", "y")
        with pytest.raises(ValueError):
            XY.extend("x")


class TestMonomialOrder:
    def test_degrevlex_equal_degree(self):
        # x^2 y vs x y^2
        assert compare_monomials((2, 1), (1, 2), DRL) > 0

    def test_lex_ignores_degree(self):
        # x vs y^2
        assert compare_monomials((1, 0), (0, 2), LEX) > 0

    def test_reflexive(self):
        assert compare_monomials((3, 1), (3, 1), DRL) == 0

    def test_length_mismatch(self):
        with pytest.raises(RegistryMismatch):
            DRL.key((1, 2, 3))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            MonomialOrder("grlex", XY)


class TestArithmetic:
    def test_add_cancels(self):
        assert P("x + y") + P("-x") == P("y")

    def test_difference_of_squares(self):
        assert P("x + 1") * P("x - 1") == P("x^2 - 1")

    def test_scalar_zero(self):
        assert (P("x^2 + y") * 0).is_zero

    def test_registry_mismatch(self):
        other = VariableRegistry(("a",))
        with pytest.raises(RegistryMismatch):
            P("x") + Polynomial.variable(other, "a")

    def test_pow(self):
        assert P("x + y") ** 2 == P("x^2 + 2*x*y + y^2")


class TestLeadingTerm:
    def test_lex(self):
        m, c = P("x^2 - 1").leading_term(LEX)
        assert m == (2, 0) and c == 1

    def test_degrevlex_tiebreak(self):
        m, c = P("2*x*y^2 + 3*x^2*y").leading_term(DRL)
        assert m == (2, 1) and c == 3

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            Polynomial.zero(XY).leading_term(LEX)


class TestDegreeIn:
    def test_partial_degrees(self):
        f = P("x^3*y + x*y^2")
        assert f.degree_in(["x"]) == 3
        assert f.degree_in(["y"]) == 2
        assert f.degree_in(["x", "y"]) == 4

    def test_zero_polynomial_convention(self):
        z = Polynomial.zero(XY)
        assert z.degree_in(["x"]) == 0
        assert z.is_zero


class TestCanonicalText:
    def test_round_trip(self):
        f = P("3*x^2*y - 1/2*x + y - 7")
        assert P(f.canonical_str(LEX)) == f

    def test_variable_print_order(self):
        # lowest-priority variables print first inside a monomial
        assert P("x*y").canonical_str(LEX) == "y*x"

    def test_zero(self):
        assert Polynomial.zero(XY).canonical_str(LEX) == "0"

    def test_unbalanced(self):
        with pytest.raises(PolynomialParseError):
            P("x + ")

    def test_unknown_variable(self):
        with pytest.raises(PolynomialParseError):
            P("x + z")


class TestQuotientAlgebra:
    def setup_method(self):
        # t^4 - t^2 - 1, the golden-ratio square relation
        self.alg = QuotientAlgebra(
            (Fraction(-1), Fraction(0), Fraction(-1), Fraction(0),
             Fraction(1)))

    def test_minimal_relation(self):
        t = self.alg.generator()
        t4 = self.alg.mul(self.alg.mul(t, t), self.alg.mul(t, t))
        t2 = self.alg.mul(t, t)
        # t^4 = t^2 + 1
        assert t4 == self.alg.add(t2, self.alg.one())

    def test_eps_inverse(self):
        eps = self.alg.parse_element("t^2")
        inv = self.alg.parse_element("t^2 - 1")
        assert self.alg.mul(eps, inv) == self.alg.one()

    def test_eps_sqrt_inverse(self):
        s = self.alg.parse_element("t^3 - t")
        assert self.alg.mul(s, s) == self.alg.parse_element("t^2 - 1")

    def test_non_monic_rejected(self):
        with pytest.raises(ValueError):
            QuotientAlgebra((Fraction(1), Fraction(2)) + (Fraction(3),))


class TestEvaluateAt:
    def _point(self, registry):
        alg = QuotientAlgebra(
            (Fraction(-1), Fraction(0), Fraction(-1), Fraction(0),
             Fraction(1)))
        return QuotientPoint(alg, {"eps": alg.parse_element("t^2")},
                             registry)

    def test_constant(self):
        reg = VariableRegistry(("eps",))
        point = self._point(reg)
        val = evaluate_at(Polynomial.constant(reg, 5), point)
        assert val == point.algebra.constant(5)

    def test_minimal_polynomial_relation(self):
        reg = VariableRegistry(("eps",))
        point = self._point(reg)
        f = Polynomial.parse("eps^2 - eps - 1", reg)
        assert point.algebra.is_zero(evaluate_at(f, point))

    def test_unassigned_variable(self):
        reg = VariableRegistry(("eps", "other"))
        point = self._point(reg)
        with pytest.raises(UnassignedVariable):
            evaluate_at(Polynomial.parse("other + 1", reg), point)

    def test_assignment_outside_registry_rejected(self):
        reg = VariableRegistry(("eps",))
        alg = QuotientAlgebra((Fraction(-1), Fraction(1)))
        with pytest.raises(KeyError):
            QuotientPoint(alg, {"ghost": alg.one()}, reg)


def test_leading_term_of_degree_five_invariant():
    reg = VariableRegistry(("j112122", "j212212", "j212222", "j222222",
                            "w2"))
    order = MonomialOrder("degrevlex", reg)
    f = Polynomial.parse(
        "w2^3*j222222^2 - j212222^2 + j222222*j212222 + 1", reg)
    mono, coeff = f.leading_term(order)
    assert coeff == 1
    assert mono == (0, 0, 0, 2, 3)  # the degree-5 term w2^3*j222222^2
