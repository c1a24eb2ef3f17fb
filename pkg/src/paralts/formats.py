"""JSON persistence and Graphviz export for PLTSs."""
from __future__ import annotations

import json
from numbers import Real

from .errors import ParseError
from .plts import Plts, PointedPlts, Transition

DECIMALS = 9


def fmt_weight(x: float) -> str:
    """Shortest decimal rendering: ``0.7``, ``1``, ``0.31``."""
    text = f"{round(x, DECIMALS):.{DECIMALS}f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _num(x):
    if isinstance(x, Real) and not isinstance(x, bool):
        return round(float(x), DECIMALS)
    return x


def to_dict(system: Plts) -> dict:
    doc = {"states": list(system.states), "labels": list(system.labels)}
    if isinstance(system, PointedPlts):
        doc["initial"] = system.initial
    doc["transitions"] = [
        {"from": t.source, "label": t.label, "to": t.target, "pos": _num(t.pos), "neg": _num(t.neg)}
        for t in system.transitions
    ]
    return doc


def dumps(system: Plts) -> str:
    return json.dumps(to_dict(system), indent=2, ensure_ascii=False) + "\n"


def from_dict(doc, check: bool = True) -> Plts:
    """Build a PLTS (pointed when ``initial`` is present) from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise ParseError("a PLTS document must be a JSON object")
    for key in ("states", "labels", "transitions"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
        if not isinstance(doc[key], list):
            raise ParseError(f"{key!r} must be a list")
    unknown = set(doc) - {"states", "labels", "transitions", "initial"}
    if unknown:
        raise ParseError(f"unexpected keys {sorted(unknown)}")
    for key in ("states", "labels"):
        for item in doc[key]:
            if not isinstance(item, str) or not item:
                raise ParseError(f"{key!r} entries must be non-empty strings, got {item!r}")
    transitions = []
    for n, entry in enumerate(doc["transitions"]):
        if not isinstance(entry, dict) or set(entry) != {"from", "label", "to", "pos", "neg"}:
            raise ParseError(f"transition #{n} must have exactly the keys from, label, to, pos, neg")
        for key in ("from", "label", "to"):
            if not isinstance(entry[key], str):
                raise ParseError(f"transition #{n}: {key!r} must be a string")
        for key in ("pos", "neg"):
            if not isinstance(entry[key], Real) or isinstance(entry[key], bool):
                raise ParseError(f"transition #{n}: {key!r} must be a number")
        transitions.append(Transition(entry["from"], entry["label"], entry["to"],
                                      float(entry["pos"]), float(entry["neg"])))
    if "initial" in doc and doc["initial"] is not None:
        if not isinstance(doc["initial"], str):
            raise ParseError("'initial' must be a string")
        return PointedPlts(doc["states"], doc["labels"], transitions, doc["initial"], check=check)
    return Plts(doc["states"], doc["labels"], transitions, check=check)


def loads(text: str, check: bool = True) -> Plts:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return from_dict(doc, check=check)


def load(path, check: bool = True) -> Plts:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), check=check)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(system: Plts, name: str = "plts") -> str:
    """One edge per transition, labelled ``(a,pos,neg)``; the initial state is double-circled."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    initial = system.initial if isinstance(system, PointedPlts) else None
    for s in system.states:
        attrs = " [shape=doublecircle]" if s == initial else ""
        lines.append(f"  {_quote(s)}{attrs};")
    for t in system.transitions:
        label = f"({t.label},{fmt_weight(t.pos)},{fmt_weight(t.neg)})"
        lines.append(f"  {_quote(t.source)} -> {_quote(t.target)} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
