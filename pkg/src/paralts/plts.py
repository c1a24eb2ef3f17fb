"""Paraconsistent labelled transition systems.

A PLTS is a finite set of states, a label alphabet and a set of transitions
``(source, label, target, pos, neg)``. ``pos`` is the evidence that the
transition happens, ``neg`` the evidence that it does not. Between two states
there is at most one transition per label.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from numbers import Real
from typing import Iterable, Mapping

from .errors import DomainError
from .lattice import get_epsilon, leq

#: Reserved label of idle transitions; never part of a user alphabet.
IDLE = "⊥"


@dataclass(frozen=True, order=True)
class Transition:
    source: str
    label: str
    target: str
    pos: float
    neg: float

    @property
    def key(self):
        return (self.source, self.label, self.target)

    @property
    def weights(self):
        return (self.pos, self.neg)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


class Plts:
    """An immutable PLTS.

    ``check=False`` skips invariant checking so that malformed systems can be
    loaded and handed to :func:`validate`; most callers want the default.
    """

    def __init__(self, states: Iterable[str], labels: Iterable[str],
                 transitions: Iterable[Transition], *, check: bool = True):
        self._states = tuple(dict.fromkeys(states))
        self._labels = tuple(dict.fromkeys(labels))
        self._transitions = tuple(transitions)
        self._state_set = frozenset(self._states)
        self._label_set = frozenset(self._labels)
        index = {}
        out = {s: [] for s in self._states}
        for t in self._transitions:
            if t.key in index:
                continue
            index[t.key] = t
            out.setdefault(t.source, []).append(t)
        self._index = index
        self._out = {s: tuple(ts) for s, ts in out.items()}
        if check:
            problems = validate(self)
            if problems:
                raise DomainError("; ".join(str(p) for p in problems))

    @classmethod
    def from_edges(cls, edges, states=(), labels=(), **kwargs):
        """Build from ``(source, label, target, pos, neg)`` tuples.

        States and labels mentioned by edges are added automatically, after
        the explicitly listed ones.
        """
        edges = [e if isinstance(e, Transition) else Transition(*e) for e in edges]
        all_states = list(states)
        all_labels = list(labels)
        for e in edges:
            all_states += [e.source, e.target]
            all_labels.append(e.label)
        return cls(all_states, all_labels, edges, **kwargs)

    @property
    def states(self) -> tuple[str, ...]:
        return self._states

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def transitions(self) -> tuple[Transition, ...]:
        return self._transitions

    def has_state(self, state) -> bool:
        return state in self._state_set

    def has_label(self, label) -> bool:
        return label in self._label_set

    def outgoing(self, state) -> tuple[Transition, ...]:
        return self._out.get(state, ())

    def transition(self, source, label, target) -> Transition | None:
        return self._index.get((source, label, target))

    def _require(self, label, *states):
        if label not in self._label_set:
            raise DomainError(f"unknown label {label!r}")
        for s in states:
            if s not in self._state_set:
                raise DomainError(f"unknown state {s!r}")

    def r_plus(self, label, source, target) -> float:
        """Positive accessibility: the ``pos`` weight of the edge, or 0 when absent."""
        self._require(label, source, target)
        t = self._index.get((source, label, target))
        return t.pos if t is not None else 0.0

    def r_minus(self, label, source, target) -> float:
        """Negative accessibility: the ``neg`` weight of the edge, or 0 when absent."""
        self._require(label, source, target)
        t = self._index.get((source, label, target))
        return t.neg if t is not None else 0.0

    def _signature(self):
        return (self._state_set, self._label_set, frozenset(self._transitions))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self):
        return hash(self._signature())

    def __repr__(self):
        return (f"{type(self).__name__}(states={list(self._states)!r}, "
                f"labels={list(self._labels)!r}, transitions={len(self._transitions)})")


class PointedPlts(Plts):
    """A PLTS with a distinguished initial state."""

    def __init__(self, states, labels, transitions, initial, *, check=True):
        self._initial = initial
        super().__init__(states, labels, transitions, check=check)

    @classmethod
    def from_edges(cls, edges, initial=None, states=(), labels=(), **kwargs):
        edges = [e if isinstance(e, Transition) else Transition(*e) for e in edges]
        if initial is None:
            if not edges:
                raise DomainError("initial state required for an edgeless system")
            initial = edges[0].source
        all_states = [initial, *states]
        all_labels = list(labels)
        for e in edges:
            all_states += [e.source, e.target]
            all_labels.append(e.label)
        return cls(all_states, all_labels, edges, initial, **kwargs)

    @classmethod
    def point(cls, system: Plts, initial) -> "PointedPlts":
        return cls(system.states, system.labels, system.transitions, initial)

    @property
    def initial(self):
        return self._initial

    def _signature(self):
        return super()._signature() + (self._initial,)

    def __repr__(self):
        return super().__repr__()[:-1] + f", initial={self._initial!r})"


def validate(system: Plts) -> list[Violation]:
    """Check every structural invariant of ``system``; returns the violations found."""
    problems = []
    states = set(system.states)
    labels = set(system.labels)
    if not states:
        problems.append(Violation("non-empty states", "a PLTS needs at least one state"))
    if IDLE in labels:
        problems.append(Violation("reserved label", f"{IDLE!r} is reserved for idle transitions"))
    seen = {}
    for t in system.transitions:
        seen[t.key] = seen.get(t.key, 0) + 1
        for end in (t.source, t.target):
            if end not in states:
                problems.append(Violation("undeclared state", f"{end!r} in {_fmt(t)}"))
        if t.label not in labels:
            problems.append(Violation("undeclared label", f"{t.label!r} in {_fmt(t)}"))
        for name, w in (("pos", t.pos), ("neg", t.neg)):
            if not isinstance(w, Real) or isinstance(w, bool) or not (0 <= w <= 1):
                problems.append(Violation("weight range", f"{name}={w!r} outside [0, 1] in {_fmt(t)}"))
    for key, n in seen.items():
        if n > 1:
            problems.append(Violation(
                "uniqueness",
                f"{n} transitions from {key[0]!r} to {key[2]!r} labelled {key[1]!r}; "
                "at most one transition per label is allowed between two states"))
    if isinstance(system, PointedPlts) and system.initial not in states:
        problems.append(Violation("initial", f"initial state {system.initial!r} is not declared"))
    return problems


class TransitionClass(enum.Enum):
    INCONSISTENT = "inconsistent"
    VAGUE = "vague"
    CONSISTENT = "consistent"


def classify(pos: float, neg: float, eps: float | None = None) -> TransitionClass:
    """Where a weight pair sits relative to the line ``pos + neg = 1``."""
    if eps is None:
        eps = get_epsilon()
    s = pos + neg
    if s > 1 + eps:
        return TransitionClass.INCONSISTENT
    if s < 1 - eps:
        return TransitionClass.VAGUE
    return TransitionClass.CONSISTENT


@dataclass(frozen=True)
class MorphismViolation:
    label: str
    source: str
    target: str
    relation: str  # "positive" or "negative"
    left: float
    right: float

    def __str__(self):
        op = "<=" if self.relation == "positive" else ">="
        return (f"{self.relation} weight of ({self.source}, {self.label}, {self.target}): "
                f"{self.left:g} {op} {self.right:g} fails")


def morphism_violations(h: Mapping[str, str], t1: Plts, t2: Plts,
                        eps: float | None = None) -> list[MorphismViolation]:
    """Every ``(label, w1, w2)`` where the state map ``h`` breaks the morphism inequalities.

    Quantifies over all state pairs of ``t1``, so an absent edge in ``t1`` (both
    weights 0) still requires the image pair to carry no negative evidence.
    """
    if set(t1.labels) != set(t2.labels):
        raise DomainError("morphism requires both systems to share one label alphabet")
    missing = [w for w in t1.states if w not in h]
    if missing:
        raise DomainError(f"state map is not total: no image for {missing}")
    bad = {w: h[w] for w in t1.states if not t2.has_state(h[w])}
    if bad:
        raise DomainError(f"state map leaves the target system: {bad}")

    found = []
    for a in sorted(t1.labels):
        for w1 in t1.states:
            for w2 in t1.states:
                p1, n1 = t1.r_plus(a, w1, w2), t1.r_minus(a, w1, w2)
                p2, n2 = t2.r_plus(a, h[w1], h[w2]), t2.r_minus(a, h[w1], h[w2])
                if not leq(p1, p2, eps):
                    found.append(MorphismViolation(a, w1, w2, "positive", p1, p2))
                if not leq(n2, n1, eps):
                    found.append(MorphismViolation(a, w1, w2, "negative", n1, n2))
    return found


def is_morphism(h: Mapping[str, str], t1: Plts, t2: Plts, eps: float | None = None) -> bool:
    return not morphism_violations(h, t1, t2, eps)


def _fmt(t: Transition) -> str:
    return f"({t.source}, {t.label}, {t.target}, {t.pos!r}, {t.neg!r})"
