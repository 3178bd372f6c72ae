"""Quadratic forms over Z2, characters over Z3 and 2-weight experiments."""

from .forms import (
    FormatError,
    LinearForm,
    QuadraticForm,
    WittDecomposition,
    add_forms,
    eval_form,
    family_support_profile,
    parse_form,
    random_form,
    witt_decompose,
    witt_normal_form,
    witt_normal_forms,
    witt_rank,
)
from .characters import (
    CharacterSum,
    FunctionTable,
    MultilinearPoly,
    and_product_construction,
    and_table,
    character_table,
    check_tradeoff,
    expand_character,
    expand_to_full_rank,
    interpolate,
    ones_twos,
    poly_degree,
    shift_sum,
    sum_table,
    support,
)

__version__ = "0.1.0"

__all__ = [
    "CharacterSum",
    "FormatError",
    "FunctionTable",
    "LinearForm",
    "MultilinearPoly",
    "QuadraticForm",
    "WittDecomposition",
    "add_forms",
    "and_product_construction",
    "and_table",
    "character_table",
    "check_tradeoff",
    "eval_form",
    "expand_character",
    "expand_to_full_rank",
    "family_support_profile",
    "interpolate",
    "ones_twos",
    "parse_form",
    "poly_degree",
    "random_form",
    "shift_sum",
    "sum_table",
    "support",
    "witt_decompose",
    "witt_normal_form",
    "witt_normal_forms",
    "witt_rank",
]
