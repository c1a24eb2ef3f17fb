"""Paraconsistent labelled transition systems.

Transitions carry a positive weight (evidence the move happens) and a negative
weight (evidence it does not). The package provides the data model, behavioural
comparison, an operator algebra over pointed systems and a translation of
timed quantum circuits with decoherence into such systems.
"""
from .errors import DomainError, ParseError
from .plts import IDLE, Plts, PointedPlts, Transition, TransitionClass, classify, is_morphism, validate

__all__ = [
    "DomainError", "ParseError", "IDLE", "Plts", "PointedPlts", "Transition",
    "TransitionClass", "classify", "is_morphism", "validate",
]
__version__ = "0.1.0"
