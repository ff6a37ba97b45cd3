import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tvforge.fixtures import golden, read_polynomials
from tvforge.groebner import (GroebnerBasis, ResourceLimitExceeded,
                              ResourceLimits, buchberger, ideal_equal,
                              is_groebner, load_basis, normal_form,
                              radical_member, reduce, save_basis)
from tvforge.poly import MonomialOrder, Polynomial, VariableRegistry

XY = VariableRegistry(("x", "y"))
LEX = MonomialOrder("lex", XY)


def P(text, reg=XY):
    return Polynomial.parse(text, reg)


class TestReduce:
    def test_single_divisor(self):
        r, qs = reduce(P("x^2"), [P("x - y")], LEX)
        assert r == P("y^2")
        assert qs[0] == P("x + y")

    def test_basis_element_reduces_to_zero(self):
        basis = [P("x*y - 1"), P("y^2 - 1")]
        r, _ = reduce(basis[0], basis, LEX)
        assert r.is_zero

    def test_empty_basis(self):
        f = P("x^2 + y")
        r, _ = reduce(f, [], LEX)
        assert r == f

    def test_reconstruction_identity(self):
        f = P("x^3*y + x*y^2 + y + 1")
        basis = [P("x*y - 1"), P("y^2 - 1")]
        r, qs = reduce(f, basis, LEX)
        assert sum((q * g for q, g in zip(qs, basis)),
                   Polynomial.zero(XY)) + r == f


class TestBuchberger:
    def test_single_generator(self):
        gb = buchberger([P("x")], LEX)
        assert [p.canonical_str(LEX) for p in gb.polynomials] == ["x"]

    def test_two_generator_example(self):
        gb = buchberger([P("x*y - 1"), P("y^2 - 1")], LEX)
        assert [p.canonical_str(LEX) for p in gb.polynomials] == [
            "x - y", "y^2 - 1"]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            buchberger([], LEX)

    def test_unit_ideal_detected(self):
        gb = buchberger([P("x"), P("x - 1")], LEX)
        assert [p.canonical_str(LEX) for p in gb.polynomials] == ["1"]

    def test_resource_limit_abort_with_partial_state(self):
        reg = VariableRegistry(("a", "b", "c", "d"))
        order = MonomialOrder("degrevlex", reg)
        gens = [Polynomial.parse(s, reg) for s in (
            "a^2 - b*c", "b^3 - a*c*d", "c^3 - a*b*d^2", "a*d^3 - b^2*c")]
        with pytest.raises(ResourceLimitExceeded) as exc:
            buchberger(gens, order, limits=ResourceLimits(max_pairs=2))
        assert exc.value.partial_basis
        assert "pairs processed" in exc.value.report()


class TestIsGroebner:
    def test_incomplete_pair(self):
        assert not is_groebner([P("x*y - 1"), P("y^2 - 1")], LEX)

    def test_single_monic(self):
        assert is_groebner([P("x^2 + y")], LEX)

    def test_computed_basis_passes(self):
        gb = buchberger([P("x*y - 1"), P("y^2 - 1")], LEX)
        assert is_groebner(gb.polynomials, LEX)


class TestIdealEqual:
    def test_principal_vs_square(self):
        assert not ideal_equal([P("x")], [P("x^2")], LEX)

    def test_permutation_invariance(self):
        gens = [P("x*y - 1"), P("y^2 - 1"), P("x^2 - 1")]
        assert ideal_equal(gens, list(reversed(gens)), LEX)


class TestRadicalMember:
    def test_nilpotent_witness(self):
        assert radical_member(P("x"), [P("x^2")])

    def test_non_member(self):
        assert not radical_member(P("y"), [P("x^2")])

    def test_fresh_variable_avoids_collision(self):
        reg = VariableRegistry(("x", "y_aux"))
        f = Polynomial.parse("x^2", reg)
        p = Polynomial.parse("x", reg)
        assert radical_member(p, [f])


class TestBasisFiles:
    def test_round_trip(self, tmp_path):
        gb = buchberger([P("x*y - 1"), P("y^2 - 1")], LEX, source="abc123")
        path = tmp_path / "test.basis"
        save_basis(gb, path)
        loaded = load_basis(path)
        assert loaded.source == "abc123"
        assert loaded.reduced
        assert loaded.order.kind == "lex"
        assert list(loaded.polynomials) == list(gb.polynomials)

    def test_missing_header(self, tmp_path):
        path = tmp_path / "broken.basis"
        path.write_text("#order lex\nx - y\n")
        with pytest.raises(ValueError):
            load_basis(path)


# -- randomized contracts ----------------------------------------------------

REG3 = VariableRegistry(("x", "y", "z"))
DRL3 = MonomialOrder("degrevlex", REG3)
monomials3 = st.tuples(st.integers(0, 4), st.integers(0, 4),
                       st.integers(0, 4))
coeffs = st.fractions(min_value=-5, max_value=5).filter(bool)
polys3 = st.dictionaries(monomials3, coeffs, min_size=1, max_size=5).map(
    lambda d: Polynomial(REG3, d))


@given(polys3, st.lists(polys3, min_size=1, max_size=3))
def test_division_contract(f, basis):
    r, qs = reduce(f, basis, DRL3)
    rebuilt = sum((q * g for q, g in zip(qs, basis)),
                  Polynomial.zero(REG3)) + r
    assert rebuilt == f
    leads = [g.leading_term(DRL3)[0] for g in basis]
    for m in r.terms:
        assert not any(all(a <= b for a, b in zip(lm, m)) for lm in leads)


@given(st.lists(polys3, min_size=1, max_size=3))
def test_reduced_basis_strategy_independent(gens):
    a = buchberger(gens, DRL3, strategy="normal")
    b = buchberger(gens, DRL3, strategy="first")
    assert list(a.polynomials) == list(b.polynomials)


def test_normal_form_well_defined_on_cosets(tv21):
    rng = random.Random(20240811)
    gens, gb, order = tv21.generators, tv21.basis, tv21.order
    reg = tv21.rsys.registry
    base = tv21.records["L(8,3)"].normal_form
    for _ in range(10):
        noise = Polynomial.zero(reg)
        for g in rng.sample(gens, 3):
            mono = tuple(rng.randint(0, 1) for _ in reg.names)
            noise = noise + g.term_mul(mono, Fraction(rng.randint(1, 3)))
        assert normal_form(base + noise, gb) == normal_form(base, gb)
        assert normal_form(noise, gb).is_zero


def test_normal_form_requires_verified_basis():
    from tvforge.groebner import UnverifiedBasis
    bad = GroebnerBasis((P("x*y - 1"), P("y^2 - 1")), LEX, reduced=False)
    with pytest.raises(UnverifiedBasis):
        normal_form(P("x"), bad)


def test_printed_basis_usable_unreduced(tv21):
    # the shipped 22-polynomial basis is S-complete though not reduced
    printed = read_polynomials(golden("tv21s_groebner22.txt"),
                               tv21.rsys.registry)
    gb = GroebnerBasis(tuple(printed), tv21.order, reduced=False)
    raw = tv21.records["L(8,3)#L(8,3)"].normal_form
    assert normal_form(raw, gb) == raw
