"""Exact computation in BS(1, n) = <a, b | a^-1 b a = b^n> and its commensurator."""

from .bs_group import GroupContext, GroupElement, format_word, normal_form, parse_word, root_extract, to_matrix
from .commensurator import (
    CommClass,
    PartialIsomorphism,
    aut_generators,
    compose,
    decompose,
    iso_between,
    matrix_of,
    realize,
    verify_collins_relations,
)
from .errors import BSCommError
from .exact_arith import GMatrix, NAdicRational
from .quasi_isometry import estimate_qi_constants, geodesic_length, qi_map, word_length
from .subgroup_lattice import CanonicalSubgroup, canonicalize, intersect, transversal

__all__ = [
    "BSCommError",
    "CanonicalSubgroup",
    "CommClass",
    "GMatrix",
    "GroupContext",
    "GroupElement",
    "NAdicRational",
    "PartialIsomorphism",
    "aut_generators",
    "canonicalize",
    "compose",
    "decompose",
    "estimate_qi_constants",
    "format_word",
    "geodesic_length",
    "intersect",
    "iso_between",
    "matrix_of",
    "normal_form",
    "parse_word",
    "qi_map",
    "realize",
    "root_extract",
    "to_matrix",
    "transversal",
    "verify_collins_relations",
    "word_length",
]
