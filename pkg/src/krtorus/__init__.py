"""Exact computations around Kirillov-Reshetikhin torus variables.

The package computes, over the field of rational functions in the root
variables of a simply-laced root system: the torus morphism determined
by the inverse quantum Cartan coefficients, its values on KR classes via
T-systems, the weight-sum and hook-product values on dual root vectors
and flag minors, and cluster mutation of the resulting seeds -- all with
exact integer/rational arithmetic.
"""

from .cartan import (
    ARFrame,
    DynkinDatum,
    build_frame,
    inversion_roots,
    is_dominant_minuscule,
    is_fully_commutative,
    parse_orientation,
    q0_orientation,
)
from .cluster import Quiver, Seed, initial_seed, mutate, mutate_sequence
from .cuspidal import (
    CuspidalRecursion,
    FlagMinorTable,
    cuspidal_value,
    dimension_ratio,
    hook_product,
    minimal_pair,
    standard_seed_minors,
    weight_sum,
)
from .errors import ConsistencyError, InvalidInputError
from .field import MultiPoly, RootContext, RootRational
from .qcartan import QuantumCartanInverse, pairing_value
from .torusmap import (
    TorusMorphism,
    check_value_properties,
    closed_form_type_a,
    closed_form_type_d,
    parse_monomial,
    render_monomial,
)

__version__ = "0.1.0"

__all__ = [
    "ARFrame",
    "ConsistencyError",
    "CuspidalRecursion",
    "DynkinDatum",
    "FlagMinorTable",
    "InvalidInputError",
    "MultiPoly",
    "QuantumCartanInverse",
    "Quiver",
    "RootContext",
    "RootRational",
    "Seed",
    "TorusMorphism",
    "build_frame",
    "check_value_properties",
    "closed_form_type_a",
    "closed_form_type_d",
    "cuspidal_value",
    "dimension_ratio",
    "hook_product",
    "initial_seed",
    "inversion_roots",
    "is_dominant_minuscule",
    "is_fully_commutative",
    "minimal_pair",
    "mutate",
    "mutate_sequence",
    "pairing_value",
    "parse_monomial",
    "parse_orientation",
    "q0_orientation",
    "render_monomial",
    "standard_seed_minors",
    "weight_sum",
]
