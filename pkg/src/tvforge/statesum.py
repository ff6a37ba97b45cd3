"""State-sum polynomials of coloured special spines.

Every (strata, edge) colouring contributes the product of its stratum
weights and vertex symbols; colourings hitting a zero class are pruned.
The result is independent of per-stratum orientation choices and of the
edge-end-to-slot bijections chosen at the vertices.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .colours import (SLOT_EDGES, SLOT_VERTICES, AssumptionSet, ColourSystem,
                      RegisteredSystem, SymbolClass, enumerate_variables)
from .poly import Polynomial
from .spine import EdgeEnd, Spine, Vertex, build_spine, parse_spine_code

# keep/flip flag per stratum; default orientation follows the boundary word
OrientationChoice = Sequence[bool]


@dataclass(frozen=True)
class StateSumStats:
    colourings: int
    pruned: int
    terms: int


# below this many colourings the process-pool overhead is never worth it
PARALLEL_THRESHOLD = 4096


def _vertex_plan(vertex: Vertex,
                 slot_map: dict[EdgeEnd, int] | None = None
                 ) -> tuple[tuple[tuple[int, bool], ...], tuple[int, ...]]:
    """Precompute slot fillers for one vertex.

    Returns (strata slots, edge slots): for each strata slot the stratum
    index and whether the corner's word-direction runs along the slot's
    reference direction; for each edge slot the true-edge id.
    """
    if slot_map is None:
        slot_map = {end: i + 1 for i, end in enumerate(vertex.ends)}
    end_of_model = {v: e for e, v in slot_map.items()}
    strata_slots = []
    for (u, v) in SLOT_EDGES:
        corner = vertex.corner_between(end_of_model[u], end_of_model[v])
        forward = (slot_map[corner.from_end], slot_map[corner.to_end]) == (u, v)
        strata_slots.append((corner.stratum, forward))
    edge_slots = tuple(end_of_model[mv].edge for mv in SLOT_VERTICES)
    return tuple(strata_slots), edge_slots


def vertex_symbol(spine: Spine, vertex: Vertex, strata_colours: Sequence[int],
                  edge_colours: Sequence[int], rsys: RegisteredSystem,
                  orient: OrientationChoice | None = None,
                  slot_map: dict[EdgeEnd, int] | None = None) -> SymbolClass:
    """Canonical symbol class of one vertex under a total colouring."""
    if orient is None:
        orient = (False,) * spine.stratum_count
    strata_slots, edge_slots = _vertex_plan(vertex, slot_map)
    invol = rsys.system.invol
    strata = []
    for stratum, forward in strata_slots:
        colour = strata_colours[stratum]
        if forward == orient[stratum]:  # flipped orientation reverses corners
            colour = invol(colour)
        strata.append(colour)
    edges = tuple(edge_colours[e - 1] for e in edge_slots)
    from .colours import SymbolTuple
    return rsys.symbol_class(SymbolTuple(tuple(strata), edges))


def _accumulate(spine: Spine, rsys: RegisteredSystem,
                orient: OrientationChoice,
                start: int, stop: int,
                slot_maps: dict[int, dict[EdgeEnd, int]] | None = None
                ) -> tuple[dict, int]:
    """Partial state sum over colouring indices [start, stop)."""
    system = rsys.system
    F = system.strata_colours
    G = system.edge_colours
    m, n = len(F), len(G)
    S, E = spine.stratum_count, spine.edge_count
    invol = system.invol

    plans = []
    for v in spine.vertices:
        smap = (slot_maps or {}).get(v.index)
        plans.append(_vertex_plan(v, smap))

    nvars = len(rsys.registry)
    weight_factors = [rsys.weight_factor(f) for f in F]
    symbol_factor = rsys.symbol_factor

    terms: dict[tuple, Fraction] = {}
    pruned = 0
    for idx in range(start, stop):
        k = idx
        phi = []
        for _ in range(S):
            phi.append(F[k % m])
            k //= m
        psi = []
        for _ in range(E):
            psi.append(G[k % n])
            k //= n

        coeff = Fraction(1)
        exps = [0] * nvars
        ok = True
        for colour in phi:
            wf = weight_factors[F.index(colour)]
            if wf.value is not None:
                coeff *= wf.value
            else:
                exps[wf.var_index] += 1
        for (strata_slots, edge_slots) in plans:
            strata = []
            for stratum, forward in strata_slots:
                c = phi[stratum]
                if forward == orient[stratum]:
                    c = invol(c)
                strata.append(c)
            edges = tuple(psi[e - 1] for e in edge_slots)
            sf = symbol_factor(tuple(strata), edges)
            if sf.zero:
                ok = False
                break
            if sf.value is not None:
                coeff *= sf.value
            else:
                exps[sf.var_index] += 1
        if not ok:
            pruned += 1
            continue
        mono = tuple(exps)
        c = terms.get(mono, Fraction(0)) + coeff
        if c:
            terms[mono] = c
        else:
            terms.pop(mono, None)
    return terms, pruned


def _worker(args) -> tuple[dict, int]:
    (code_text, system, assumptions, priority, orient, start, stop) = args
    spine = build_spine(parse_spine_code(code_text))
    rsys = enumerate_variables(system, assumptions, priority)
    return _accumulate(spine, rsys, orient, start, stop)


def state_sum_detailed(spine: Spine, rsys: RegisteredSystem,
                       orient: OrientationChoice | None = None,
                       workers: int = 1,
                       slot_maps: dict[int, dict[EdgeEnd, int]] | None = None,
                       priority: tuple[str, ...] = ()
                       ) -> tuple[Polynomial, StateSumStats]:
    system = rsys.system
    if orient is None:
        orient = (False,) * spine.stratum_count
    orient = tuple(orient)
    total = (system.m ** spine.stratum_count
             * system.n ** spine.edge_count)
    if workers <= 1 or slot_maps or total < PARALLEL_THRESHOLD:
        terms, pruned = _accumulate(spine, rsys, orient, 0, total, slot_maps)
    else:
        # blocks merge in index order: exact arithmetic makes the result
        # identical for any schedule
        chunk = (total + workers - 1) // workers
        jobs = [(str(spine.code), system, rsys.assumptions,
                 priority or rsys.registry.names, orient,
                 lo, min(lo + chunk, total))
                for lo in range(0, total, chunk)]
        terms = {}
        pruned = 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part, part_pruned in pool.map(_worker, jobs):
                pruned += part_pruned
                for mono, c in part.items():
                    s = terms.get(mono, Fraction(0)) + c
                    if s:
                        terms[mono] = s
                    else:
                        terms.pop(mono, None)
    poly = Polynomial(rsys.registry, terms, _trusted=True)
    return poly, StateSumStats(total, pruned, len(poly))


def state_sum(spine: Spine, rsys: RegisteredSystem,
              orient: OrientationChoice | None = None,
              workers: int = 1) -> Polynomial:
    """Full state-sum polynomial of the spine in the system's registry."""
    poly, _ = state_sum_detailed(spine, rsys, orient, workers)
    return poly
