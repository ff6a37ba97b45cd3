"""Ideal Turaev-Viro invariants of 3-manifolds from special spines."""

from .colours import (AssumptionSet, ColourSystem, SymbolClass, SymbolTuple,
                      canonicalize, enumerate_variables)
from .config import SystemConfig, load_config, parse_config
from .groebner import (GroebnerBasis, ResourceLimits, buchberger,
                       ideal_equal, is_groebner, normal_form, radical_member,
                       reduce)
from .invariant import (InvariantPipeline, InvariantRecord, compare_partition,
                        compute_invariant, degree_bound, epsilon_evaluate,
                        multiplicativity_check, radical_suite)
from .poly import (MonomialOrder, Polynomial, QuotientAlgebra, QuotientPoint,
                   VariableRegistry, compare_monomials, evaluate_at)
from .spine import (Spine, SpineCode, build_spine, parse_spine_code,
                    read_spine_file, spine_stats)
from .statesum import state_sum, state_sum_detailed, vertex_symbol
from .beideal import (BridgeSpec, GeneratorSpec, augment_bridge, be_generator,
                      generate_ideal, scaling_identity_check)

__version__ = "0.1.0"

__all__ = [
    "AssumptionSet", "BridgeSpec", "ColourSystem", "GeneratorSpec",
    "GroebnerBasis", "InvariantPipeline", "InvariantRecord", "MonomialOrder",
    "Polynomial", "QuotientAlgebra", "QuotientPoint", "ResourceLimits",
    "Spine", "SpineCode", "SymbolClass", "SymbolTuple", "SystemConfig",
    "VariableRegistry", "augment_bridge", "be_generator", "buchberger",
    "canonicalize", "compare_monomials", "compare_partition",
    "compute_invariant", "degree_bound", "enumerate_variables",
    "epsilon_evaluate", "evaluate_at", "generate_ideal", "ideal_equal",
    "is_groebner", "load_config", "multiplicativity_check", "normal_form",
    "parse_config", "parse_spine_code", "radical_member", "radical_suite",
    "read_spine_file", "reduce", "scaling_identity_check", "spine_stats",
    "state_sum", "state_sum_detailed", "build_spine", "vertex_symbol",
]
