"""Simulation, bisimulation and weighted traces."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable

from .errors import DomainError
from .lattice import close, get_epsilon, godel_join, godel_meet, leq
from .plts import Plts, Transition


class SimulationMode(enum.Enum):
    FULL = "full"
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True, order=True)
class WeightedTrace:
    """Label sequence with the meet of positive and the join of negative weights."""

    labels: tuple[str, ...]
    pos: float
    neg: float

    def __str__(self):
        return f"<[{', '.join(self.labels)}], {self.pos:g}, {self.neg:g}>"


def _check_relation(relation, t1: Plts, t2: Plts):
    for p, q in relation:
        if not t1.has_state(p):
            raise DomainError(f"relation mentions unknown state {p!r} of the first system")
        if not t2.has_state(q):
            raise DomainError(f"relation mentions unknown state {q!r} of the second system")


def _check_alphabets(t1: Plts, t2: Plts):
    if set(t1.labels) != set(t2.labels):
        raise DomainError("simulation and bisimulation need a shared label alphabet")


def _dominates(move: Transition, answer: Transition, mode: SimulationMode, eps) -> bool:
    if mode is not SimulationMode.NEGATIVE and not leq(move.pos, answer.pos, eps):
        return False
    if mode is not SimulationMode.POSITIVE and not leq(answer.neg, move.neg, eps):
        return False
    return True


def _matched(move: Transition, q, t2: Plts, relation, mode, eps) -> bool:
    for answer in t2.outgoing(q):
        if (answer.label == move.label and (move.target, answer.target) in relation
                and _dominates(move, answer, mode, eps)):
            return True
    return False


def simulation_violations(relation, t1: Plts, t2: Plts,
                          mode: SimulationMode = SimulationMode.FULL,
                          eps: float | None = None) -> list[tuple]:
    """Pairs ``((p, q), move)`` where ``q`` cannot answer ``move`` of ``p`` inside ``relation``."""
    _check_alphabets(t1, t2)
    relation = frozenset(relation)
    _check_relation(relation, t1, t2)
    if eps is None:
        eps = get_epsilon()
    problems = []
    for p, q in sorted(relation):
        for move in t1.outgoing(p):
            if not _matched(move, q, t2, relation, mode, eps):
                problems.append(((p, q), move))
    return problems


def is_simulation(relation, t1, t2, mode=SimulationMode.FULL, eps=None) -> bool:
    return not simulation_violations(relation, t1, t2, mode, eps)


def largest_simulation(t1: Plts, t2: Plts, mode: SimulationMode = SimulationMode.FULL,
                       eps: float | None = None) -> frozenset:
    """Greatest simulation, by deleting failing pairs from ``W1 x W2`` until stable."""
    _check_alphabets(t1, t2)
    if eps is None:
        eps = get_epsilon()
    relation = set(cartesian(t1.states, t2.states))
    changed = True
    while changed:
        changed = False
        for p, q in sorted(relation):
            if any(not _matched(m, q, t2, relation, mode, eps) for m in t1.outgoing(p)):
                relation.discard((p, q))
                changed = True
    return frozenset(relation)


def similar(p, q, t1, t2, mode=SimulationMode.FULL, eps=None) -> bool:
    if not t1.has_state(p):
        raise DomainError(f"unknown state {p!r}")
    if not t2.has_state(q):
        raise DomainError(f"unknown state {q!r}")
    return (p, q) in largest_simulation(t1, t2, mode, eps)


def _same_move(move: Transition, answer: Transition, eps) -> bool:
    return (move.label == answer.label and close(move.pos, answer.pos, eps)
            and close(move.neg, answer.neg, eps))


def _bisim_pair_ok(p, q, t1, t2, relation, eps) -> tuple[list, list]:
    left = [m for m in t1.outgoing(p)
            if not any(_same_move(m, a, eps) and (m.target, a.target) in relation
                       for a in t2.outgoing(q))]
    right = [m for m in t2.outgoing(q)
             if not any(_same_move(m, a, eps) and (a.target, m.target) in relation
                        for a in t1.outgoing(p))]
    return left, right


def bisimulation_violations(relation, t1: Plts, t2: Plts, eps: float | None = None) -> list[tuple]:
    """Unmatched moves ``((p, q), side, move)``; ``side`` is 1 or 2."""
    _check_alphabets(t1, t2)
    relation = frozenset(relation)
    _check_relation(relation, t1, t2)
    if eps is None:
        eps = get_epsilon()
    problems = []
    for p, q in sorted(relation):
        left, right = _bisim_pair_ok(p, q, t1, t2, relation, eps)
        problems += [((p, q), 1, m) for m in left]
        problems += [((p, q), 2, m) for m in right]
    return problems


def is_bisimulation(relation, t1, t2, eps=None) -> bool:
    return not bisimulation_violations(relation, t1, t2, eps)


def largest_bisimulation(t1: Plts, t2: Plts, eps: float | None = None) -> frozenset:
    _check_alphabets(t1, t2)
    if eps is None:
        eps = get_epsilon()
    relation = set(cartesian(t1.states, t2.states))
    changed = True
    while changed:
        changed = False
        for p, q in sorted(relation):
            left, right = _bisim_pair_ok(p, q, t1, t2, relation, eps)
            if left or right:
                relation.discard((p, q))
                changed = True
    return frozenset(relation)


def bisimilar(p, q, t1, t2, eps=None) -> bool:
    if not t1.has_state(p):
        raise DomainError(f"unknown state {p!r}")
    if not t2.has_state(q):
        raise DomainError(f"unknown state {q!r}")
    return (p, q) in largest_bisimulation(t1, t2, eps)


def weighted_traces(system: Plts, start, depth: int, maximal_only: bool = False) -> set[WeightedTrace]:
    """Weighted traces of every path of length 1..``depth`` leaving ``start``.

    With ``maximal_only`` only paths that end in a state without outgoing
    transitions are kept.
    """
    if not system.has_state(start):
        raise DomainError(f"unknown state {start!r}")
    if depth < 1:
        raise DomainError("trace depth must be at least 1")
    found = set()
    # (state, labels, pos, neg)
    stack = [(start, (), 1.0, 0.0)]
    while stack:
        state, labels, pos, neg = stack.pop()
        for t in system.outgoing(state):
            item = (t.target, labels + (t.label,), godel_meet(pos, t.pos), godel_join(neg, t.neg))
            if not maximal_only or not system.outgoing(t.target):
                found.add(WeightedTrace(*item[1:]))
            if len(item[1]) < depth:
                stack.append(item)
    return found


def is_weighted_subtrace(t: WeightedTrace, other: WeightedTrace, eps: float | None = None) -> bool:
    """``t`` is a prefix of ``other`` and is dominated by it in both weights."""
    n = len(t.labels)
    return (n <= len(other.labels) and tuple(other.labels[:n]) == tuple(t.labels)
            and leq(t.pos, other.pos, eps) and leq(other.neg, t.neg, eps))


def trace_set_leq(xs: Iterable[WeightedTrace], ys: Iterable[WeightedTrace], eps=None) -> bool:
    ys = list(ys)
    return all(any(is_weighted_subtrace(x, y, eps) for y in ys) for x in xs)
