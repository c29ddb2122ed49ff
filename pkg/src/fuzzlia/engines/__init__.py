"""Fuzzy sets, MISO rule systems and the BKS, SBR and TIP inference engines."""

from .core import (ENGINES, MODES, InferenceReport, OpCount, admit, bks_classical, bks_direct,
                   bks_hierarchical, combine_antecedents, infer, sbr_classical, sbr_hierarchical,
                   tip_classical, tip_hierarchical)
from .sets import (SIMILARITY_KINDS, FuzzySet, SimilarityMeasure, SingletonInput, similarity,
                   similarity_from_descriptor)
from .system import MISOSystem, Rule, is_singleton, load_system, parse_input, system_from_dict

__all__ = [
    "ENGINES", "MODES", "InferenceReport", "OpCount", "admit", "bks_classical", "bks_direct",
    "bks_hierarchical", "combine_antecedents", "infer", "sbr_classical", "sbr_hierarchical",
    "tip_classical", "tip_hierarchical", "SIMILARITY_KINDS", "FuzzySet", "SimilarityMeasure",
    "SingletonInput", "similarity", "similarity_from_descriptor", "MISOSystem", "Rule",
    "is_singleton", "load_system", "parse_input", "system_from_dict",
]
