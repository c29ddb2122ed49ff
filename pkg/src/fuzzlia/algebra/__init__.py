"""Negations, aggregation functions, generators and their classification."""

from .aggregations import (LUKASIEWICZ, MAX, MIN, PRODUCT, Aggregation, aggregation,
                           aggregation_from_descriptor, conjugate, eval_aggregation,
                           make_aggregation, n_dual, n_dual_of,
                           register_aggregation_kind)
from .classify import (ClassificationRecord, check_copula, classify, find_one_divisor,
                       find_zero_divisor, left_continuity_check)
from .generators import Generator, automorphism, generator, generator_from_descriptor
from .negations import (GREATEST, SMALLEST, STANDARD, Negation, eval_negation, make_negation,
                        negation, negation_flags, negation_from_descriptor, pseudo_inverse)

__all__ = [
    "Aggregation", "ClassificationRecord", "Generator", "Negation",
    "GREATEST", "LUKASIEWICZ", "MAX", "MIN", "PRODUCT", "SMALLEST", "STANDARD",
    "aggregation", "aggregation_from_descriptor", "automorphism", "check_copula", "classify",
    "conjugate", "eval_aggregation", "eval_negation", "find_one_divisor", "find_zero_divisor",
    "generator", "generator_from_descriptor", "left_continuity_check", "make_aggregation",
    "make_negation", "n_dual", "n_dual_of", "negation", "negation_flags",
    "negation_from_descriptor", "pseudo_inverse", "register_aggregation_kind",
]
