import random
from fractions import Fraction
from itertools import permutations

import pytest

from tvforge.colours import (AssumptionSet, ColourSystem, SymbolTuple,
                             enumerate_variables)
from tvforge.config import load_config
from tvforge.fixtures import system_config
from tvforge.poly import Polynomial
from tvforge.spine import build_spine, parse_spine_code
from tvforge.statesum import state_sum, state_sum_detailed, vertex_symbol

L72 = build_spine(parse_spine_code("((1,1,2,-3),(1,3,-4,-4,-2),(2,-4,-3))"))
L83 = build_spine(parse_spine_code("((1,1,2,-3),(1,3,-4,-2),(2,-4,-4,-3))"))


@pytest.fixture(scope="module")
def tv21_rsys():
    cfg = load_config(system_config("tv21s"))
    return cfg.registered()


@pytest.fixture(scope="module")
def tv31_rsys():
    cfg = load_config(system_config("tv31s"))
    return cfg.registered()


class TestVertexSymbol:
    def test_constant_colouring(self, tv21_rsys):
        for v in L72.vertices:
            cls = vertex_symbol(L72, v, [2, 2, 2], [1, 1, 1, 1], tv21_rsys)
            assert cls.canonical.strata == (2, 2, 2, 2, 2, 2)
            assert not cls.zero

    def test_one_colour_system(self):
        system = ColourSystem("one", (1,), "trivial", 1)
        rsys = enumerate_variables(system, AssumptionSet())
        for v in L72.vertices:
            cls = vertex_symbol(L72, v, [1, 1, 1], [1, 1, 1, 1], rsys)
            assert cls.canonical.strata == (1, 1, 1, 1, 1, 1)

    def test_zero_rule_fires(self, tv21_rsys):
        # colour the single-germ stratum at the first vertex of the lens
        # spine with 1 twice ... a (2,2,1)-type colouring keeps symbols
        # alive while (1,1,2) kills them
        cls = vertex_symbol(L72, L72.vertices[0], [1, 1, 2], [1, 1, 1, 1],
                            tv21_rsys)
        assert cls.zero


class TestStateSum:
    def test_one_colour_single_term(self):
        system = ColourSystem("one", (1,), "trivial", 1)
        rsys = enumerate_variables(system, AssumptionSet())
        poly, stats = state_sum_detailed(L72, rsys)
        assert stats.colourings == 1
        # w^(c+1) * jj^c with c = 2 true vertices
        assert len(poly) == 1
        ((mono, coeff),) = poly.terms.items()
        assert coeff == 1
        exps = dict(zip(rsys.registry.names, mono))
        assert exps["w1"] == 3 and exps["j111111"] == 2

    def test_lens_space_sums(self, tv21_rsys):
        reg = tv21_rsys.registry
        expected72 = Polynomial.parse(
            "w2^3*j222222^2 + w2^2*j212222*j212212 + 1", reg)
        expected83 = Polynomial.parse(
            "w2^3*j222222^2 + w2^2*j212212^2 + 1", reg)
        assert state_sum(L72, tv21_rsys) == expected72
        assert state_sum(L83, tv21_rsys) == expected83

    def test_colouring_count(self, tv21_rsys):
        _, stats = state_sum_detailed(L72, tv21_rsys)
        assert stats.colourings == 2 ** 3
        _, stats = state_sum_detailed(L83, tv21_rsys)
        assert stats.colourings == 2 ** 3

    def test_degree_bounds(self, tv21_rsys):
        poly = state_sum(L72, tv21_rsys)
        assert poly.degree_in(["w2"]) <= L72.stratum_count
        symbols = [c.name for c in tv21_rsys.classes.values()
                   if c.var_index is not None]
        assert poly.degree_in(symbols) <= L72.vertex_count


class TestInvariance:
    def test_orientation_independence(self, tv21_rsys, tv31_rsys):
        rng = random.Random(20240812)
        for rsys in (tv21_rsys, tv31_rsys):
            base = state_sum(L72, rsys)
            for _ in range(6):
                orient = tuple(rng.random() < 0.5
                               for _ in range(L72.stratum_count))
                assert state_sum(L72, rsys, orient=orient) == base

    def test_slot_bijection_independence(self, tv21_rsys, tv31_rsys):
        # all 24 end-to-slot bijections at the first vertex leave the sum
        # unchanged, also for the negation involution
        for rsys in (tv21_rsys, tv31_rsys):
            base = state_sum(L72, rsys)
            v = L72.vertices[0]
            for perm in permutations((1, 2, 3, 4)):
                slot_map = {end: model for end, model in zip(v.ends, perm)}
                poly, _ = state_sum_detailed(L72, rsys,
                                             slot_maps={0: slot_map})
                assert poly == base

    def test_vertex_symbol_class_constant_over_bijections(self, tv31_rsys):
        rng = random.Random(99)
        colours = [rng.choice((0, 1, -1)) for _ in range(3)]
        v = L72.vertices[1]
        classes = set()
        for perm in permutations((1, 2, 3, 4)):
            slot_map = {end: model for end, model in zip(v.ends, perm)}
            cls = vertex_symbol(L72, v, colours, [1, 1, 1, 1], tv31_rsys,
                                slot_map=slot_map)
            classes.add((cls.canonical, cls.zero))
        assert len(classes) == 1


class TestBlocks:
    def test_block_merge_matches_sequential(self, tv21_rsys):
        from tvforge.statesum import _accumulate

        total = 2 ** 3
        whole, _ = _accumulate(L72, tv21_rsys,
                               (False,) * L72.stratum_count, 0, total)
        merged: dict = {}
        for lo, hi in ((0, 3), (3, 5), (5, 8)):
            part, _ = _accumulate(L72, tv21_rsys,
                                  (False,) * L72.stratum_count, lo, hi)
            for mono, c in part.items():
                s = merged.get(mono, Fraction(0)) + c
                if s:
                    merged[mono] = s
                else:
                    merged.pop(mono, None)
        assert merged == whole

    def test_worker_pool_agrees(self, tv21_rsys, monkeypatch):
        import tvforge.statesum as ss

        monkeypatch.setattr(ss, "PARALLEL_THRESHOLD", 4)
        big = build_spine(parse_spine_code(
            "((1,1,2,-3),(1,3,-7,-16,-15,-4,-2),"
            "(2,-7,-6,-5,-4,-7,17,18,-4,-3),(8,8,9,-10),"
            "(8,10,-14,-17,-16,-11,-14,18,15,-11,-9),"
            "(9,-14,-13,-12,-11,-10),(15,12,-5),(16,-6,-12),(17,-13,6),"
            "(18,5,13))"))
        sequential = state_sum(big, tv21_rsys, workers=1)
        parallel = state_sum(big, tv21_rsys, workers=3)
        assert sequential == parallel
