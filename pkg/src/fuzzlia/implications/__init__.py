"""Fuzzy implications: families, named operators and property checks."""

from .base import (AxiomFailure, Implication, eval_implication, implication,
                   implication_from_descriptor, make_implication)
from .families import (a_implication, an_implication, closed_form, conjugate_implication,
                       f_implication, from_aggregation, g_implication, goedel, goguen, greatest,
                       kleene_dienes, least, lukasiewicz, natural_negation, negation_meet,
                       power_implication, probabilistic_implication,
                       probabilistic_s_implication, ql_implication, reichenbach,
                       representable_companion, residual_implication, tabulated, weber, yager)
from .properties import (PropertyEntry, PropertyReport, check_axioms, check_continuity_first_row,
                         check_cp, check_ep, check_ip, check_lia, check_np, check_op,
                         check_properties, check_right_continuity, check_rp, lia_gap,
                         lia_sides)

__all__ = [name for name in dir() if not name.startswith("_")]
