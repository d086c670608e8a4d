"""Local tropical varieties of ideals in formal power series rings, over Q."""

from .core import Series, Stratum, as_weight, enumerate_strata, initial_form, stratum_of, weight_of
from .errors import DomainError, LocTropError, ParseError
from .localgb import (
    groebner_cone,
    initial_ideal,
    local_groebner_fan,
    local_order,
    monomial_freeness,
    standard_basis,
    tropical_finite_set,
    tropvar_general,
    twin_check,
)
from .staircase import E0, hat_poly, minimal_staircase, stratum_staircase, tilde_poly
from .tropical import DEFINITION, MONOMIAL_TEST, local_trop_hypersurface, prevariety

__version__ = "0.1.0"

__all__ = [
    "DEFINITION",
    "DomainError",
    "E0",
    "LocTropError",
    "MONOMIAL_TEST",
    "ParseError",
    "Series",
    "Stratum",
    "as_weight",
    "enumerate_strata",
    "groebner_cone",
    "hat_poly",
    "initial_form",
    "initial_ideal",
    "local_groebner_fan",
    "local_order",
    "local_trop_hypersurface",
    "minimal_staircase",
    "monomial_freeness",
    "prevariety",
    "standard_basis",
    "stratum_of",
    "stratum_staircase",
    "tilde_poly",
    "tropical_finite_set",
    "tropvar_general",
    "twin_check",
    "weight_of",
]
