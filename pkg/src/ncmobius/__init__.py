"""Exact computations with finite Coxeter groups and k-divisible noncrossing partitions."""

__version__ = "0.1.0"

from .catalan import degrees, fuss_catalan, positive_fuss_catalan
from .coxeter import CoxeterSystem, CoxeterType, GroupElement, build_coxeter_system
from .kdiv import (
    DeltaSequence,
    MultiChain,
    build_nc_lower,
    build_nc_upper,
    duality_map,
    maximal_factorizations,
    theorem_poset_lower,
    theorem_poset_upper,
)
from .nc import NCLattice, ReflectionOrder, build_nc, find_el_reflection_order, natural_labeling
from .poset import FinitePoset, mobius_by_hall, mobius_number
from .shelling import (
    count_falling_maximal_chains,
    factorization_mobius_sum,
    is_el_labeling,
    lex_abw_labeling,
    sum_mobius_to_maxs,
)

__all__ = [
    "CoxeterSystem", "CoxeterType", "DeltaSequence", "FinitePoset", "GroupElement",
    "MultiChain", "NCLattice", "ReflectionOrder", "build_coxeter_system", "build_nc",
    "build_nc_lower", "build_nc_upper", "count_falling_maximal_chains", "degrees",
    "duality_map", "factorization_mobius_sum", "find_el_reflection_order", "fuss_catalan",
    "is_el_labeling", "lex_abw_labeling", "maximal_factorizations", "mobius_by_hall",
    "mobius_number", "natural_labeling", "positive_fuss_catalan", "sum_mobius_to_maxs",
    "theorem_poset_lower", "theorem_poset_upper",
]
