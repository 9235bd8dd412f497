"""Exact point counts on weighted projective spaces over Q and imaginary quadratic fields."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    FactoringBoundError,
    InputError,
    InvariantViolation,
    NotWellFormedError,
    WpsError,
)
from .number_field import FieldData, IdealRep, dedekind_zeta, make_field, parse_field_spec
from .weighted_space import (
    DivisorClass,
    ProductPoint,
    Radical,
    Weight,
    WpsPoint,
    canonicalize,
    size,
    size_divisor,
    weighted_content,
)
from .enumeration import (
    CountQuery,
    CountResult,
    CountSeries,
    brute_force_count,
    count_moebius_sieve,
    count_points,
    count_points_quadratic,
    count_points_rational,
    count_product,
    sweep,
)
from .asymptotics import (
    AsymptoticForm,
    UnitLatticeFrame,
    combine_asymptotics,
    divisor_asymptotic,
    fit_series,
    fundamental_volume,
    monte_carlo_volume,
    predicted_count,
    theorem_a_constant,
    theorem_b_constant,
)

__all__ = [
    "AsymptoticForm",
    "BudgetExceededError",
    "CountQuery",
    "CountResult",
    "CountSeries",
    "DivisorClass",
    "FactoringBoundError",
    "FieldData",
    "IdealRep",
    "InputError",
    "InvariantViolation",
    "NotWellFormedError",
    "ProductPoint",
    "Radical",
    "UnitLatticeFrame",
    "Weight",
    "WpsError",
    "WpsPoint",
    "brute_force_count",
    "canonicalize",
    "combine_asymptotics",
    "count_moebius_sieve",
    "count_points",
    "count_points_quadratic",
    "count_points_rational",
    "count_product",
    "dedekind_zeta",
    "divisor_asymptotic",
    "fit_series",
    "fundamental_volume",
    "make_field",
    "monte_carlo_volume",
    "parse_field_spec",
    "predicted_count",
    "size",
    "size_divisor",
    "sweep",
    "theorem_a_constant",
    "theorem_b_constant",
    "weighted_content",
]
