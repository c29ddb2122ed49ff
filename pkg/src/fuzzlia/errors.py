"""Exception hierarchy shared by every fuzzlia module."""

from __future__ import annotations


class FuzzliaError(Exception):
    """Base class for all library errors."""


class DomainError(FuzzliaError, ValueError):
    """An argument fell outside the unit interval (or unit square)."""


class ParameterError(FuzzliaError, ValueError):
    """An operator was built from malformed parameters (bad generator, bad lambda, ...)."""


class DescriptorError(FuzzliaError, ValueError):
    """A JSON operator descriptor could not be parsed."""


class ConstructionError(FuzzliaError, ValueError):
    """A constructed operator violates the axioms of the class it claims to belong to.

    ``axiom`` names the violated property and ``witness`` holds the grid
    point where the violation was observed.
    """

    def __init__(self, message: str, axiom: str | None = None, witness=None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class HypothesisError(FuzzliaError):
    """A companion construction was refused because a precondition failed.

    ``ledger`` lists every checked hypothesis; ``witnesses`` carries
    counterexamples that justify the refusal, when any were found.
    """

    def __init__(self, message: str, ledger=(), witnesses=()):
        super().__init__(message)
        self.ledger = tuple(ledger)
        self.witnesses = tuple(witnesses)


class AdmissionError(FuzzliaError):
    """An inference engine refused a system whose operators miss its hypotheses."""

    def __init__(self, message: str, ledger=()):
        super().__init__(message)
        self.ledger = tuple(ledger)


class DimensionError(FuzzliaError, ValueError):
    """Fuzzy sets do not conform to their universes or to each other."""


class EmptySupportError(FuzzliaError, ValueError):
    """A support-restricted similarity was asked about a set with empty support."""
