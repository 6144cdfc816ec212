"""The nu-cube: the lambda-cube with finite-set declarations."""

from .checker import CheckConfig, Checker, Judgement, check_context, check_judgement, sort_of, synth_type
from .derivation import Derivation, replay
from .encoding import corpus, intersect, projection, proj_restriction, star_k, z_declaration
from .erasure import ErasureResult, erase, verify_typability
from .errors import FuelExhausted, NuCubeError, ParseError, TypeCheckError
from .restriction import SatisfactionReport, convertible_under, satisfies
from .rewriting import Fuel, ReductionOutcome, beta_equal, beta_step, normalize, ube_step
from .systems import Mode, SystemId, rule_set_of
from .terms import (
    BOX,
    STAR,
    App,
    Bind,
    Binder,
    Declaration,
    Name,
    PureTerm,
    Sort,
    Term,
    Var,
    alpha_eq,
    degree,
    free_vars,
    rdec_extract,
    req_sort,
    substitute,
    type_as_sort,
)
from .text import parse_context, parse_pure, parse_term, print_pure, print_term

__version__ = "0.1.0"

__all__ = [
    "alpha_eq",
    "App",
    "beta_equal",
    "beta_step",
    "Bind",
    "Binder",
    "BOX",
    "check_context",
    "check_judgement",
    "CheckConfig",
    "Checker",
    "convertible_under",
    "corpus",
    "Declaration",
    "degree",
    "Derivation",
    "erase",
    "ErasureResult",
    "free_vars",
    "Fuel",
    "FuelExhausted",
    "intersect",
    "Judgement",
    "Mode",
    "Name",
    "normalize",
    "NuCubeError",
    "parse_context",
    "parse_pure",
    "parse_term",
    "ParseError",
    "print_pure",
    "print_term",
    "proj_restriction",
    "projection",
    "PureTerm",
    "rdec_extract",
    "ReductionOutcome",
    "replay",
    "req_sort",
    "rule_set_of",
    "SatisfactionReport",
    "satisfies",
    "Sort",
    "sort_of",
    "STAR",
    "star_k",
    "substitute",
    "synth_type",
    "SystemId",
    "Term",
    "type_as_sort",
    "TypeCheckError",
    "ube_step",
    "Var",
    "verify_typability",
    "z_declaration",
]
