"""Fields: finite fields, Laurent towers, square classes and extensions."""

from __future__ import annotations

from .classes import (
    all_classes,
    class_label,
    class_rep,
    class_rep_value,
    hilbert_symbol,
    hilbert_symbol_classes,
    is_fourth_power,
    is_fourth_power_value,
    minus_one_class,
    n_class_bits,
    norm_group,
    square_class,
    square_class_value,
    unit_mask,
)
from .extensions import (
    Embedding,
    Extension,
    constant_extension,
    extend_embedding,
    galois_group,
    galois_norm_value,
    monomial_sqrt,
    quad_ext,
)
from .finite import FiniteField, default_modulus, is_irreducible
from .tower import FieldElement, LaurentField, const, element, gen, tower

__all__ = [
    "Embedding",
    "Extension",
    "FieldElement",
    "FiniteField",
    "LaurentField",
    "all_classes",
    "class_label",
    "class_rep",
    "class_rep_value",
    "const",
    "constant_extension",
    "default_modulus",
    "element",
    "extend_embedding",
    "galois_group",
    "galois_norm_value",
    "gen",
    "hilbert_symbol",
    "hilbert_symbol_classes",
    "is_fourth_power",
    "is_fourth_power_value",
    "is_irreducible",
    "minus_one_class",
    "monomial_sqrt",
    "n_class_bits",
    "norm_group",
    "quad_ext",
    "square_class",
    "square_class_value",
    "tower",
    "unit_mask",
]
