"""Exact symbolic toolkit for flags of foliations attached to second-order ODEs."""

from .exterior import DiffForm, VectorField, contract, d, evaluate_on, is_closed, is_integrable, wedge
from .flags import (
    Classification,
    FlagReport,
    LocalSpectrum,
    SecondOrderODE,
    check_inclusion,
    classify,
    field_to_ode,
    linear_analysis,
    ode_to_field,
    potential,
    singular_ideal,
    tangent_field,
    verify_flag,
)
from .ideals import BudgetExceeded, Ideal, dimension, member, radical_member, step_budget, variety_included
from .parsing import ParseError, parse_field, parse_form, parse_ode, parse_poly
from .polyring import Poly, gcd

__version__ = "0.1.0"

__all__ = [
    "DiffForm",
    "VectorField",
    "contract",
    "d",
    "evaluate_on",
    "is_closed",
    "is_integrable",
    "wedge",
    "Classification",
    "FlagReport",
    "LocalSpectrum",
    "SecondOrderODE",
    "check_inclusion",
    "classify",
    "field_to_ode",
    "linear_analysis",
    "ode_to_field",
    "potential",
    "singular_ideal",
    "tangent_field",
    "verify_flag",
    "BudgetExceeded",
    "Ideal",
    "dimension",
    "member",
    "radical_member",
    "step_budget",
    "variety_included",
    "ParseError",
    "parse_field",
    "parse_form",
    "parse_ode",
    "parse_poly",
    "Poly",
    "gcd",
]
