"""Pointed PLTSs, their morphisms and the operators built on them.

Composite states and labels get structured string names, ``"(w,v)"`` and
``"(a,⊥)"``, so results serialize deterministically and read like the usual
pair notation.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DomainError
from .lattice import bounded_add, godel_join, godel_meet, leq
from .plts import IDLE, PointedPlts, Transition

__all__ = [
    "IDLE", "NIL", "PointedPlts", "PointedMorphism", "ApproxTarget",
    "pair_state", "pair_label", "pointed_morphism_violations", "is_pointed_morphism",
    "restrict", "reachable_part", "relabel", "product", "interleave", "sync_product",
    "sum", "prefix", "v_approx", "purge", "product_projections", "sum_injections",
    "pair_morphisms", "copair_morphisms", "compose",
]

#: The one-state system with no transitions; initial and terminal in the category of pointed PLTSs.
NIL = PointedPlts(["*"], [], [], "*")


def pair_state(left, right) -> str:
    return f"({left},{right})"


def pair_label(left, right) -> str:
    if left == IDLE and right == IDLE:
        raise DomainError("the idle/idle pairing is not a product label")
    return f"({left},{right})"


@dataclass(frozen=True)
class PointedMorphism:
    """State map ``sigma`` plus partial label map ``lam``.

    Labels missing from ``lam`` (or mapped to ``IDLE``) are undefined and must be
    matched by idle self-loops in the target.
    """

    sigma: Mapping[str, str]
    lam: Mapping[str, str] = field(default_factory=dict)

    def label_image(self, label):
        return self.lam.get(label, IDLE)


def _idle(state) -> Transition:
    return Transition(state, IDLE, state, 1.0, 0.0)


def pointed_morphism_violations(m: PointedMorphism, t1: PointedPlts, t2: PointedPlts,
                                eps: float | None = None) -> list[str]:
    problems = []
    missing = [w for w in t1.states if w not in m.sigma]
    if missing:
        return [f"state map undefined on {missing}"]
    outside = sorted(w for w in t1.states if not t2.has_state(m.sigma[w]))
    if outside:
        return [f"state map sends {outside} outside the target"]
    if m.sigma[t1.initial] != t2.initial:
        problems.append(f"initial state {t1.initial!r} maps to {m.sigma[t1.initial]!r}, "
                        f"not {t2.initial!r}")
    for a, b in sorted(m.lam.items()):
        if not t1.has_label(a):
            problems.append(f"label map defined on unknown label {a!r}")
        if b != IDLE and not t2.has_label(b):
            problems.append(f"label {a!r} maps to {b!r}, absent from the target alphabet")
    for t in t1.transitions:
        src, dst = m.sigma[t.source], m.sigma[t.target]
        b = m.label_image(t.label)
        if b == IDLE:
            if src != dst:
                problems.append(f"{_fmt(t)} has an undefined label but {src!r} != {dst!r}, "
                                "so no idle loop can match it")
            continue
        image = t2.transition(src, b, dst)
        if image is None:
            problems.append(f"{_fmt(t)} has no image ({src}, {b}, {dst})")
        elif not (leq(t.pos, image.pos, eps) and leq(image.neg, t.neg, eps)):
            problems.append(f"{_fmt(t)} is not dominated by its image {_fmt(image)}")
    return problems


def is_pointed_morphism(m, t1, t2, eps=None) -> bool:
    return not pointed_morphism_violations(m, t1, t2, eps)


def compose(g: PointedMorphism, f: PointedMorphism) -> PointedMorphism:
    """``g`` after ``f``."""
    sigma = {w: g.sigma[v] for w, v in f.sigma.items()}
    lam = {}
    for a, b in f.lam.items():
        if b != IDLE and g.label_image(b) != IDLE:
            lam[a] = g.lam[b]
    return PointedMorphism(sigma, lam)


def _rebuild(t: PointedPlts, transitions, labels=None, states=None, initial=None) -> PointedPlts:
    return PointedPlts(t.states if states is None else states,
                       t.labels if labels is None else labels,
                       transitions, t.initial if initial is None else initial)


def restrict(t: PointedPlts, keep: Iterable[str]) -> PointedPlts:
    """Keep only transitions whose label is in ``keep``; the alphabet shrinks to ``keep``."""
    keep = list(dict.fromkeys(keep))
    unknown = [a for a in keep if not t.has_label(a)]
    if unknown:
        raise DomainError(f"restriction labels {unknown} are not in the alphabet")
    allowed = set(keep)
    return _rebuild(t, [tr for tr in t.transitions if tr.label in allowed], labels=keep)


def reachable_part(t: PointedPlts) -> PointedPlts:
    seen = {t.initial}
    queue = deque([t.initial])
    while queue:
        for tr in t.outgoing(queue.popleft()):
            if tr.target not in seen:
                seen.add(tr.target)
                queue.append(tr.target)
    states = [s for s in t.states if s in seen]
    return _rebuild(t, [tr for tr in t.transitions if tr.source in seen], states=states)


def _merge(transitions) -> list[Transition]:
    # parallel edges collapsing onto one key keep the best evidence
    merged = {}
    for tr in transitions:
        old = merged.get(tr.key)
        if old is not None:
            tr = Transition(*tr.key, godel_join(old.pos, tr.pos), godel_meet(old.neg, tr.neg))
        merged[tr.key] = tr
    return list(merged.values())


def relabel(t: PointedPlts, lam: Mapping[str, str], alphabet: Iterable[str] | None = None) -> PointedPlts:
    """Rename labels through the total map ``lam``.

    If two edges between the same states end up with the same label, they are
    merged into one edge with the larger ``pos`` and the smaller ``neg``.
    """
    missing = [a for a in t.labels if a not in lam]
    if missing:
        raise DomainError(f"relabelling map is not total: no image for {missing}")
    if alphabet is None:
        alphabet = [lam[a] for a in t.labels]
    alphabet = list(dict.fromkeys(alphabet))
    outside = sorted({lam[a] for a in t.labels} - set(alphabet))
    if outside:
        raise DomainError(f"relabelling images {outside} are not in the target alphabet")
    moved = [Transition(tr.source, lam[tr.label], tr.target, tr.pos, tr.neg) for tr in t.transitions]
    return _rebuild(t, _merge(moved), labels=alphabet)


def _product_labels(t1, t2, asynchronous=True, synchronous=True):
    labels = []
    if asynchronous:
        labels += [pair_label(a, IDLE) for a in t1.labels]
        labels += [pair_label(IDLE, b) for b in t2.labels]
    if synchronous:
        labels += [pair_label(a, b) for a in t1.labels for b in t2.labels]
    return labels


def product(t1: PointedPlts, t2: PointedPlts) -> PointedPlts:
    """Parallel composition: synchronous moves plus moves paired with an idle step."""
    states = [pair_state(w, v) for w in t1.states for v in t2.states]
    transitions = []
    for w in t1.states:
        moves1 = (*t1.outgoing(w), _idle(w))
        for v in t2.states:
            moves2 = (*t2.outgoing(v), _idle(v))
            for m1 in moves1:
                for m2 in moves2:
                    if m1.label == IDLE and m2.label == IDLE:
                        continue
                    transitions.append(Transition(
                        pair_state(w, v), pair_label(m1.label, m2.label),
                        pair_state(m1.target, m2.target),
                        godel_meet(m1.pos, m2.pos), godel_join(m1.neg, m2.neg)))
    return PointedPlts(states, _product_labels(t1, t2), transitions,
                       pair_state(t1.initial, t2.initial))


def interleave(t1: PointedPlts, t2: PointedPlts) -> PointedPlts:
    return restrict(product(t1, t2), _product_labels(t1, t2, synchronous=False))


def sync_product(t1: PointedPlts, t2: PointedPlts) -> PointedPlts:
    return restrict(product(t1, t2), _product_labels(t1, t2, asynchronous=False))


def sum(t1: PointedPlts, t2: PointedPlts) -> PointedPlts:  # noqa: A001 - the operator's name
    """Non-deterministic choice, glued at the pair of initial states."""
    i1, i2 = t1.initial, t2.initial
    states = [pair_state(w, i2) for w in t1.states] + [pair_state(i1, v) for v in t2.states]
    left = [Transition(pair_state(tr.source, i2), tr.label, pair_state(tr.target, i2), tr.pos, tr.neg)
            for tr in t1.transitions]
    right = [Transition(pair_state(i1, tr.source), tr.label, pair_state(i1, tr.target), tr.pos, tr.neg)
             for tr in t2.transitions]
    labels = list(dict.fromkeys([*t1.labels, *t2.labels]))
    return PointedPlts(states, labels, _merge(left + right), pair_state(i1, i2))


def fresh_state(t: PointedPlts, stem: str = "new") -> str:
    k = 0
    while t.has_state(f"{stem}{k}"):
        k += 1
    return f"{stem}{k}"


def prefix(label: str, pos: float, neg: float, t: PointedPlts) -> PointedPlts:
    if label == IDLE:
        raise DomainError(f"{IDLE!r} cannot be used as a prefix label")
    new = fresh_state(t)
    edge = Transition(new, label, t.initial, float(pos), float(neg))
    return PointedPlts([new, *t.states], [*t.labels, label], [edge, *t.transitions], new)


class ApproxTarget(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    BOTH = "both"


def v_approx(t: PointedPlts, v: float, target: ApproxTarget = ApproxTarget.POSITIVE) -> PointedPlts:
    """Shift the selected weights of every transition by ``v``, saturating at 0 and 1."""
    if not -1.0 <= v <= 1.0:
        raise DomainError(f"approximation offset {v!r} outside [-1, 1]")
    on_pos = target in (ApproxTarget.POSITIVE, ApproxTarget.BOTH)
    on_neg = target in (ApproxTarget.NEGATIVE, ApproxTarget.BOTH)
    shifted = [Transition(tr.source, tr.label, tr.target,
                          bounded_add(tr.pos, v) if on_pos else tr.pos,
                          bounded_add(tr.neg, v) if on_neg else tr.neg)
               for tr in t.transitions]
    return _rebuild(t, shifted)


def purge(t: PointedPlts, p: float, n: float, eps: float | None = None) -> PointedPlts:
    """Drop transitions with ``pos`` below ``p`` or ``neg`` above ``n``."""
    kept = [tr for tr in t.transitions if leq(p, tr.pos, eps) and leq(tr.neg, n, eps)]
    return _rebuild(t, kept)


def product_projections(t1: PointedPlts, t2: PointedPlts) -> tuple[PointedMorphism, PointedMorphism]:
    sigma1, sigma2 = {}, {}
    for w in t1.states:
        for v in t2.states:
            sigma1[pair_state(w, v)] = w
            sigma2[pair_state(w, v)] = v
    lam1, lam2 = {}, {}
    for a in t1.labels:
        lam1[pair_label(a, IDLE)] = a
        for b in t2.labels:
            lam1[pair_label(a, b)] = a
            lam2[pair_label(a, b)] = b
    for b in t2.labels:
        lam2[pair_label(IDLE, b)] = b
    return PointedMorphism(sigma1, lam1), PointedMorphism(sigma2, lam2)


def pair_morphisms(g1: PointedMorphism, g2: PointedMorphism) -> PointedMorphism:
    """Mediating arrow into a product, given arrows into each factor."""
    sigma = {w: pair_state(g1.sigma[w], g2.sigma[w]) for w in g1.sigma}
    lam = {}
    for a in set(g1.lam) | set(g2.lam):
        b1, b2 = g1.label_image(a), g2.label_image(a)
        if b1 != IDLE or b2 != IDLE:
            lam[a] = pair_label(b1, b2)
    return PointedMorphism(sigma, lam)


def sum_injections(t1: PointedPlts, t2: PointedPlts) -> tuple[PointedMorphism, PointedMorphism]:
    inj1 = PointedMorphism({w: pair_state(w, t2.initial) for w in t1.states}, {a: a for a in t1.labels})
    inj2 = PointedMorphism({v: pair_state(t1.initial, v) for v in t2.states}, {b: b for b in t2.labels})
    return inj1, inj2


def copair_morphisms(g1: PointedMorphism, g2: PointedMorphism,
                     t1: PointedPlts, t2: PointedPlts) -> PointedMorphism:
    """Mediating arrow out of ``sum(t1, t2)``; label maps must agree on shared labels."""
    for a in sorted(set(t1.labels) & set(t2.labels)):
        if g1.label_image(a) != g2.label_image(a):
            raise DomainError(f"label maps disagree on shared label {a!r}")
    missing = [w for w in t1.states if w not in g1.sigma] + [v for v in t2.states if v not in g2.sigma]
    if missing:
        raise DomainError(f"state maps undefined on {missing}")
    sigma = {pair_state(w, t2.initial): g1.sigma[w] for w in t1.states}
    for v in t2.states:
        sigma[pair_state(t1.initial, v)] = g2.sigma[v]
    lam = {**g1.lam, **g2.lam}
    return PointedMorphism(sigma, lam)


def _fmt(t: Transition) -> str:
    return f"({t.source}, {t.label}, {t.target}, {t.pos:g}, {t.neg:g})"
