"""Quantum circuits with qubit decoherence, translated into pointed PLTSs.

Every execution step of a circuit becomes one transition of a linear chain.
The positive weight estimates how effective the step is under the best-case
coherence time of the qubits involved, the negative weight how likely it is to
fail under the worst case. A qubit's preparation clock starts when it is put
into superposition and restarts whenever a non-identity gate touches it.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from typing import Mapping

from .algebra import relabel
from .behavior import WeightedTrace
from .errors import DomainError, ParseError
from .lattice import close, godel_join, godel_meet, leq
from .plts import PointedPlts, Transition

STAR = "⋆"
TENSOR = " ⊗ "
DURATION_CLASSES = ("single", "two", "measure")


@dataclass(frozen=True)
class Gate:
    name: str
    arity: int
    duration_class: str = "single"
    creates_superposition: bool = False
    identity: bool = False
    measurement: bool = False

    def __post_init__(self):
        if self.arity < 1:
            raise DomainError(f"gate {self.name!r} needs a positive arity")
        if self.duration_class not in DURATION_CLASSES:
            raise DomainError(f"gate {self.name!r}: unknown duration class {self.duration_class!r}")


H = Gate("H", 1, creates_superposition=True)
X = Gate("X", 1)
I = Gate("I", 1, identity=True)  # noqa: E741
CX = Gate("CX", 2, "two")
M = Gate("M", 1, "measure", measurement=True)

STANDARD_GATES = {g.name: g for g in (H, X, I, CX, M)}
GATE_ALIASES = {"CNOT": "CX"}


@dataclass(frozen=True)
class GateFactor:
    gate: Gate
    qubits: tuple[int, ...]

    @property
    def label(self) -> str:
        if len(self.qubits) == 1:
            return f"{self.gate.name}_{self.qubits[0]}"
        return f"{self.gate.name}_{{{','.join(map(str, self.qubits))}}}"


@dataclass(frozen=True)
class CircuitStep:
    factors: tuple[GateFactor, ...]

    @property
    def label(self) -> str:
        return TENSOR.join(f.label for f in self.factors)

    @property
    def qubits(self) -> list[int]:
        return [q for f in self.factors for q in f.qubits]


def step(*factors) -> CircuitStep:
    """Shorthand: ``step((H, 0), (I, 1))``."""
    return CircuitStep(tuple(GateFactor(g, tuple(qs)) for g, *qs in factors))


@dataclass(frozen=True)
class TimingConfig:
    """Gate durations and the decoherence divisor, all in microseconds."""

    single_gate: float = 20.0
    two_qubit_gate: float | None = None  # defaults to twice single_gate
    measurement: float = 1.0
    decoherence_divisor: float = 100.0

    def duration(self, gate: Gate) -> float:
        if gate.duration_class == "measure":
            return self.measurement
        if gate.duration_class == "two":
            return self.two_qubit_gate if self.two_qubit_gate is not None else 2 * self.single_gate
        return self.single_gate

    def validate(self):
        for name in ("single_gate", "two_qubit_gate", "measurement", "decoherence_divisor"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise DomainError(f"timing {name} must be positive, got {value!r}")


@dataclass(frozen=True)
class Coherence:
    tau_max: float
    tau_min: float


@dataclass
class Circuit:
    qubit_count: int
    steps: list[CircuitStep]
    coherence: Mapping[int, Coherence]
    timing: TimingConfig = field(default_factory=TimingConfig)

    @classmethod
    def uniform(cls, qubit_count, steps, tau_max, tau_min, timing=None):
        """A circuit whose qubits all share one coherence window."""
        coherence = {q: Coherence(tau_max, tau_min) for q in range(qubit_count)}
        return cls(qubit_count, list(steps), coherence, timing or TimingConfig())

    def step_duration(self, s: CircuitStep) -> float:
        return max(self.timing.duration(f.gate) for f in s.factors)

    def validate(self):
        if self.qubit_count < 1:
            raise DomainError("a circuit needs at least one qubit")
        self.timing.validate()
        for q in range(self.qubit_count):
            if q not in self.coherence:
                raise DomainError(f"no coherence times for qubit {q}")
            c = self.coherence[q]
            if c.tau_min > c.tau_max:
                raise DomainError(f"qubit {q}: tau_min {c.tau_min} exceeds tau_max {c.tau_max}")
        for k, s in enumerate(self.steps, 1):
            if not s.factors:
                raise DomainError(f"step {k} has no gates")
            used = set()
            for f in s.factors:
                if len(f.qubits) != f.gate.arity:
                    raise DomainError(f"step {k}: {f.gate.name} takes {f.gate.arity} qubit(s), "
                                      f"got {len(f.qubits)}")
                if len(set(f.qubits)) != len(f.qubits):
                    raise DomainError(f"step {k}: {f.label} repeats a qubit")
                for q in f.qubits:
                    if not 0 <= q < self.qubit_count:
                        raise DomainError(f"step {k}: qubit {q} outside 0..{self.qubit_count - 1}")
                    if q in used:
                        raise DomainError(f"step {k}: qubit {q} is used by two gates")
                    used.add(q)


@dataclass(frozen=True)
class QubitTracker:
    """Superposition state of each qubit: superposed qubits map to their clock start."""

    clocks: Mapping[int, float] = field(default_factory=dict)

    def superposed(self, q) -> bool:
        return q in self.clocks

    def clock_start(self, q) -> float:
        if q not in self.clocks:
            raise DomainError(f"qubit {q} is not in superposition")
        return self.clocks[q]


class WeightModel(enum.Enum):
    # Reproduces the worked circuit weights; see step_weight.
    EXAMPLE = "example"
    # Per-gate max/min aggregation taken at face value.
    LITERAL = "literal"


def _clamp(x: float) -> float:
    return 0.0 if x < 0 else 1.0 if x > 1 else x


def _prep_time(q, t_end, tracker):
    return t_end - tracker.clock_start(q)


def f_max(q: int, t_end: float, tracker: QubitTracker, circuit: Circuit) -> float:
    """Best-case remaining coherence of ``q`` at ``t_end``, as a fraction of the divisor."""
    raw = (circuit.coherence[q].tau_max - _prep_time(q, t_end, tracker)) / circuit.timing.decoherence_divisor
    return _clamp(raw)


def f_min(q: int, t_end: float, tracker: QubitTracker, circuit: Circuit) -> float:
    raw = (circuit.coherence[q].tau_min - _prep_time(q, t_end, tracker)) / circuit.timing.decoherence_divisor
    return _clamp(raw)


def _tidy(x: float) -> float:
    # strip float noise such as 1 - 0.69 == 0.31000000000000005
    return _clamp(round(x, 12))


def step_weight(s: CircuitStep, t_end: float, tracker: QubitTracker, circuit: Circuit,
                model: WeightModel = WeightModel.EXAMPLE) -> tuple[float, float]:
    """Weights ``(pos, neg)`` of the transition for step ``s`` finishing at ``t_end``.

    ``EXAMPLE``: every superposed qubit a gate acts on contributes
    ``(f_max, 1 - f_min)``; the step takes the smallest positive and largest
    negative contribution. A step that only measures definite qubits inherits
    the decoherence of whatever qubits are superposed at the time.

    ``LITERAL``: each gate is ``(1, 0)`` on definite qubits, otherwise
    ``(max f_max, min f_min)`` over its qubits; the step is
    ``(max of firsts, 1 - min of seconds)``.
    """
    if model is WeightModel.LITERAL:
        firsts, seconds = [], []
        for f in s.factors:
            live = [q for q in f.qubits if tracker.superposed(q)]
            if not live:
                firsts.append(1.0)
                seconds.append(0.0)
            else:
                firsts.append(max(f_max(q, t_end, tracker, circuit) for q in live))
                seconds.append(min(f_min(q, t_end, tracker, circuit) for q in live))
        return _tidy(max(firsts)), _tidy(1 - min(seconds))

    pos, neg = 1.0, 0.0
    for q in s.qubits:
        if tracker.superposed(q):
            pos = godel_meet(pos, f_max(q, t_end, tracker, circuit))
            neg = godel_join(neg, 1 - f_min(q, t_end, tracker, circuit))
    measuring_only = all(f.gate.measurement for f in s.factors)
    if measuring_only and not any(tracker.superposed(q) for q in s.qubits) and tracker.clocks:
        ambient = sorted(tracker.clocks)
        pos = min(f_max(q, t_end, tracker, circuit) for q in ambient)
        neg = 1 - min(f_min(q, t_end, tracker, circuit) for q in ambient)
    return _tidy(pos), _tidy(neg)


def advance_tracker(s: CircuitStep, t_end: float, tracker: QubitTracker) -> QubitTracker:
    """Tracker after step ``s``: superpose, restart clocks, collapse measured qubits."""
    clocks = dict(tracker.clocks)
    for f in s.factors:
        if f.gate.identity:
            continue
        for q in f.qubits:
            if q in clocks:
                clocks[q] = t_end
                if f.gate.measurement:
                    del clocks[q]
            elif f.gate.creates_superposition:
                clocks[q] = t_end
    return QubitTracker(clocks)


@dataclass(frozen=True)
class StepRecord:
    label: str
    t_end: float
    pos: float
    neg: float


def circuit_weights(circuit: Circuit, model: WeightModel = WeightModel.EXAMPLE) -> list[StepRecord]:
    circuit.validate()
    tracker = QubitTracker()
    t = 0.0
    records = []
    for s in circuit.steps:
        t += circuit.step_duration(s)
        pos, neg = step_weight(s, t, tracker, circuit, model)
        records.append(StepRecord(s.label, t, pos, neg))
        tracker = advance_tracker(s, t, tracker)
    return records


def circuit_to_plts(circuit: Circuit, model: WeightModel = WeightModel.EXAMPLE,
                    state_prefix: str = "s") -> PointedPlts:
    """The chain ``s1 -> s2 -> ...`` with one transition per circuit step."""
    records = circuit_weights(circuit, model)
    states = [f"{state_prefix}{k}" for k in range(1, len(records) + 2)]
    edges = [Transition(states[k], r.label, states[k + 1], r.pos, r.neg) for k, r in enumerate(records)]
    return PointedPlts(states, [r.label for r in records], edges, states[0])


def chain_edges(t: PointedPlts) -> list[Transition]:
    """Transitions along the unique path from the initial state of a chain-shaped system."""
    for s in t.states:
        if len(t.outgoing(s)) > 1:
            raise DomainError(f"not a chain: state {s!r} has {len(t.outgoing(s))} outgoing transitions")
    edges, seen, here = [], {t.initial}, t.initial
    while t.outgoing(here):
        (edge,) = t.outgoing(here)
        edges.append(edge)
        here = edge.target
        if here in seen:
            raise DomainError("not a chain: the path from the initial state loops")
        seen.add(here)
    return edges


def maximal_weighted_trace(t: PointedPlts) -> WeightedTrace:
    """Weighted trace of the whole chain after renaming every label to a single star."""
    starred = relabel(t, {a: STAR for a in t.labels}, alphabet=[STAR])
    edges = chain_edges(starred)
    pos, neg = 1.0, 0.0
    for e in edges:
        pos, neg = godel_meet(pos, e.pos), godel_join(neg, e.neg)
    return WeightedTrace(tuple(e.label for e in edges), pos, neg)


class Effectiveness(enum.Enum):
    FIRST = "first"
    SECOND = "second"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Comparison:
    verdict: Effectiveness
    first: WeightedTrace
    second: WeightedTrace


def compare_traces(t1: WeightedTrace, t2: WeightedTrace, eps: float | None = None) -> Effectiveness:
    """Rank two maximal traces by weight only; their lengths are ignored."""
    if close(t1.pos, t2.pos, eps) and close(t1.neg, t2.neg, eps):
        return Effectiveness.EQUAL
    if leq(t1.pos, t2.pos, eps) and leq(t2.neg, t1.neg, eps):
        return Effectiveness.SECOND
    if leq(t2.pos, t1.pos, eps) and leq(t1.neg, t2.neg, eps):
        return Effectiveness.FIRST
    return Effectiveness.INCOMPARABLE


def compare_effectiveness(c1: Circuit, c2: Circuit, model: WeightModel = WeightModel.EXAMPLE,
                          eps: float | None = None) -> Comparison:
    """Which circuit suffers less from decoherence: the one whose maximal trace dominates."""
    t1 = maximal_weighted_trace(circuit_to_plts(c1, model))
    t2 = maximal_weighted_trace(circuit_to_plts(c2, model))
    return Comparison(compare_traces(t1, t2, eps), t1, t2)


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\S+")
_DIRECTIVES = ("qubits", "tmax", "tmin", "tg", "t2", "tm", "divisor", "gate")


def _number(tok, line, col, integer=False):
    try:
        value = int(tok) if integer else float(tok)
    except ValueError:
        kind = "an integer" if integer else "a number"
        raise ParseError(f"expected {kind}, got {tok!r}", line, col) from None
    return value


def parse_circuit(text: str) -> Circuit:
    """Parse the line-based circuit format.

    Directives: ``qubits N``, ``tmax Q V``, ``tmin Q V`` (``Q`` may be ``*``),
    ``tg V``, ``t2 V``, ``tm V``, ``divisor V`` and
    ``gate NAME ARITY [superpose] [single|two|measure]``. Every other
    non-blank line is a step, factors separated by ``|``: ``H 0 | I 1``.
    ``#`` starts a comment.
    """
    gates = dict(STANDARD_GATES)
    qubits = None
    tmax, tmin = {}, {}
    timing = {}
    steps: list[tuple[int, CircuitStep]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if not toks:
            continue
        head, col = toks[0]
        args = toks[1:]

        def need(n, usage):
            if len(args) != n:
                raise ParseError(f"usage: {usage}", lineno, col)

        if head == "qubits":
            need(1, "qubits N")
            qubits = _number(args[0][0], lineno, args[0][1], integer=True)
        elif head in ("tmax", "tmin"):
            need(2, f"{head} QUBIT|* MICROSECONDS")
            (qtok, qcol), (vtok, vcol) = args
            target = "*" if qtok == "*" else _number(qtok, lineno, qcol, integer=True)
            (tmax if head == "tmax" else tmin)[target] = _number(vtok, lineno, vcol)
        elif head in ("tg", "t2", "tm", "divisor"):
            need(1, f"{head} MICROSECONDS")
            timing[head] = _number(args[0][0], lineno, args[0][1])
        elif head == "gate":
            if not 2 <= len(args) <= 4:
                raise ParseError("usage: gate NAME ARITY [superpose] [single|two|measure]", lineno, col)
            name, ncol = args[0]
            if name in _DIRECTIVES or "|" in name:
                raise ParseError(f"{name!r} cannot be used as a gate name", lineno, ncol)
            arity = _number(args[1][0], lineno, args[1][1], integer=True)
            superpose, dclass = False, "two" if arity >= 2 else "single"
            for tok, tcol in args[2:]:
                if tok == "superpose":
                    superpose = True
                elif tok in DURATION_CLASSES:
                    dclass = tok
                else:
                    raise ParseError(f"unknown gate option {tok!r}", lineno, tcol)
            try:
                gates[name] = Gate(name, arity, dclass, superpose, measurement=dclass == "measure")
            except DomainError as exc:
                raise ParseError(str(exc), lineno, ncol) from None
        else:
            steps.append((lineno, _parse_step(body, lineno, gates)))

    coherence = {}
    if qubits is None:
        used = [q for _, s in steps for q in s.qubits]
        qubits = max(used) + 1 if used else 1
    for q in range(qubits):
        hi = tmax.get(q, tmax.get("*"))
        lo = tmin.get(q, tmin.get("*"))
        if hi is not None and lo is not None:
            coherence[q] = Coherence(hi, lo)
    cfg = TimingConfig()
    if "tg" in timing:
        cfg = replace(cfg, single_gate=timing["tg"])
    if "t2" in timing:
        cfg = replace(cfg, two_qubit_gate=timing["t2"])
    if "tm" in timing:
        cfg = replace(cfg, measurement=timing["tm"])
    if "divisor" in timing:
        cfg = replace(cfg, decoherence_divisor=timing["divisor"])
    return Circuit(qubits, [s for _, s in steps], coherence, cfg)


def _parse_step(body: str, lineno: int, gates: Mapping[str, Gate]) -> CircuitStep:
    factors = []
    offset = 0
    for chunk in body.split("|"):
        start = offset + 1
        toks = [(m.group(), start + m.start()) for m in _TOKEN.finditer(chunk)]
        offset += len(chunk) + 1
        if not toks:
            raise ParseError("empty gate between '|' separators", lineno, start)
        (name, col), args = toks[0], toks[1:]
        name = GATE_ALIASES.get(name, name)
        if name not in gates:
            raise ParseError(f"unknown gate or directive {name!r}", lineno, col)
        qs = tuple(_number(tok, lineno, c, integer=True) for tok, c in args)
        factors.append(GateFactor(gates[name], qs))
    return CircuitStep(tuple(factors))


def format_circuit(circuit: Circuit) -> str:
    """Inverse of :func:`parse_circuit` (custom gates are declared up front)."""
    lines = [f"qubits {circuit.qubit_count}"]
    t = circuit.timing
    lines.append(f"tg {t.single_gate:g}")
    if t.two_qubit_gate is not None:
        lines.append(f"t2 {t.two_qubit_gate:g}")
    lines += [f"tm {t.measurement:g}", f"divisor {t.decoherence_divisor:g}"]
    for q in sorted(circuit.coherence):
        c = circuit.coherence[q]
        lines += [f"tmax {q} {c.tau_max:g}", f"tmin {q} {c.tau_min:g}"]
    declared = set()
    for s in circuit.steps:
        for f in s.factors:
            g = f.gate
            if STANDARD_GATES.get(g.name) != g and g.name not in declared:
                declared.add(g.name)
                opts = (" superpose" if g.creates_superposition else "") + f" {g.duration_class}"
                lines.append(f"gate {g.name} {g.arity}{opts}")
    for s in circuit.steps:
        lines.append(" | ".join(" ".join([f.gate.name, *map(str, f.qubits)]) for f in s.factors))
    return "\n".join(lines) + "\n"
