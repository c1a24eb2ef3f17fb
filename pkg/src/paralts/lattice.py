"""Weight algebra for PLTS transitions.

Weights are plain floats in [0, 1]. The default structure is the Goedel
algebra on the unit interval, where the monoid product is ``min`` and the
residuum is the Goedel implication. Other residuated lattices can be plugged
in by subclassing :class:`ResiduatedLattice`.
"""
from __future__ import annotations

import math
import os
from abc import ABC, abstractmethod

from .errors import DomainError

DEFAULT_EPSILON = 1e-9


def get_epsilon() -> float:
    """Comparison tolerance, overridable through ``PLTS_EPSILON``."""
    raw = os.environ.get("PLTS_EPSILON")
    if not raw:
        return DEFAULT_EPSILON
    try:
        eps = float(raw)
    except ValueError:
        raise DomainError(f"PLTS_EPSILON is not a number: {raw!r}") from None
    if not (eps >= 0 and math.isfinite(eps)):
        raise DomainError(f"PLTS_EPSILON must be a finite non-negative number, got {raw!r}")
    return eps


def lattice_value(x) -> float:
    """Coerce ``x`` to a weight, rejecting anything outside [0, 1]."""
    try:
        v = float(x)
    except (TypeError, ValueError):
        raise DomainError(f"weight {x!r} is not a number") from None
    if not (0.0 <= v <= 1.0):
        raise DomainError(f"weight {x!r} lies outside [0, 1]")
    return v


def leq(a: float, b: float, eps: float | None = None) -> bool:
    """``a <= b`` up to the comparison tolerance."""
    if eps is None:
        eps = get_epsilon()
    return a <= b + eps


def close(a: float, b: float, eps: float | None = None) -> bool:
    if eps is None:
        eps = get_epsilon()
    return abs(a - b) <= eps


class ResiduatedLattice(ABC):
    """A bounded lattice with a residuated monoid operation.

    Implementations must satisfy ``product(a, b) <= c`` iff ``b <= residuum(a, c)``.
    """

    top: float = 1.0
    bottom: float = 0.0

    @abstractmethod
    def meet(self, a: float, b: float) -> float: ...

    @abstractmethod
    def join(self, a: float, b: float) -> float: ...

    @abstractmethod
    def product(self, a: float, b: float) -> float: ...

    @abstractmethod
    def residuum(self, a: float, b: float) -> float: ...

    def meet_all(self, values) -> float:
        result = self.top
        for v in values:
            result = self.meet(result, v)
        return result

    def join_all(self, values) -> float:
        result = self.bottom
        for v in values:
            result = self.join(result, v)
        return result


class GodelAlgebra(ResiduatedLattice):
    def meet(self, a, b):
        return godel_meet(a, b)

    def join(self, a, b):
        return godel_join(a, b)

    def product(self, a, b):
        return godel_meet(a, b)

    def residuum(self, a, b):
        return godel_residuum(a, b)


def godel_meet(a: float, b: float) -> float:
    return a if a <= b else b


def godel_join(a: float, b: float) -> float:
    return a if a >= b else b


def godel_residuum(a: float, b: float, eps: float | None = None) -> float:
    """Goedel implication: 1 when ``a <= b``, otherwise ``b``."""
    return 1.0 if leq(a, b, eps) else b


def bounded_add(a: float, b: float) -> float:
    """Sum clamped to [0, 1]."""
    s = a + b
    if s >= 1.0:
        return 1.0
    if s <= 0.0:
        return 0.0
    return s


GODEL = GodelAlgebra()
