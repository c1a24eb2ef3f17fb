"""Command-line front-end.

Exit status: 0 on success, 1 when an input violates a domain invariant,
2 on I/O or syntax errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import algebra, behavior, formats, quantum
from .errors import DomainError, ParseError
from .formats import fmt_weight
from .plts import Plts, PointedPlts, classify, morphism_violations, validate

OPS = ("restrict", "relabel", "product", "interleave", "sync", "sum", "prefix", "approx", "purge", "reach")


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _pair(p, n):
    return f"({fmt_weight(p)},{fmt_weight(n)})"


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_plts(path, check=True) -> Plts:
    return formats.loads(_read_text(path), check=check)


def _load_pointed(path) -> PointedPlts:
    system = _load_plts(path)
    if not isinstance(system, PointedPlts):
        raise DomainError(f"{path}: this operation needs a pointed system ('initial' is missing)")
    return system


def _is_json(path, text):
    return path.endswith(".json") or text.lstrip().startswith("{")


def _load_circuit_or_plts(path, model) -> PointedPlts:
    text = _read_text(path)
    if _is_json(path, text):
        system = formats.loads(text)
        if not isinstance(system, PointedPlts):
            raise DomainError(f"{path}: a circuit PLTS needs an initial state")
        return system
    return quantum.circuit_to_plts(quantum.parse_circuit(text), model)


def _parse_map(items, what):
    mapping = {}
    for item in items or ():
        if "=" not in item:
            raise CliError(f"{what} entries look like key=value, got {item!r}", 2)
        key, value = item.split("=", 1)
        mapping[key] = value
    return mapping


def _emit(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_system(args, system):
    fmt = args.format or "json"
    if fmt == "dot":
        _emit(args, formats.to_dot(system))
    elif fmt == "text":
        lines = [f"({t.source}, {t.label}, {t.target}) {_pair(t.pos, t.neg)}" for t in system.transitions]
        head = f"initial {system.initial}\n" if isinstance(system, PointedPlts) else ""
        _emit(args, head + "".join(line + "\n" for line in lines))
    else:
        _emit(args, formats.dumps(system))


def _json(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


# --- commands ---------------------------------------------------------------

def cmd_build(args):
    circuit = quantum.parse_circuit(_read_text(args.circuit))
    _emit_system(args, quantum.circuit_to_plts(circuit, quantum.WeightModel(args.model)))


def cmd_compare(args):
    model = quantum.WeightModel(args.model)
    t1 = quantum.maximal_weighted_trace(_load_circuit_or_plts(args.left, model))
    t2 = quantum.maximal_weighted_trace(_load_circuit_or_plts(args.right, model))
    verdict = quantum.compare_traces(t1, t2)
    if args.format == "json":
        _emit(args, _json({
            "verdict": verdict.value,
            "left": {"length": len(t1.labels), "pos": t1.pos, "neg": t1.neg},
            "right": {"length": len(t2.labels), "pos": t2.pos, "neg": t2.neg},
        }))
        return
    w1, w2 = _pair(t1.pos, t1.neg), _pair(t2.pos, t2.neg)
    line = {
        quantum.Effectiveness.SECOND: f"right more effective: {w2} dominates {w1}",
        quantum.Effectiveness.FIRST: f"left more effective: {w1} dominates {w2}",
        quantum.Effectiveness.EQUAL: f"equal: {w1}",
        quantum.Effectiveness.INCOMPARABLE: f"incomparable: {w1} vs {w2}",
    }[verdict]
    _emit(args, line + "\n")


def _relation_output(args, name, relation, holds=None):
    if holds is not None:
        if args.format == "json":
            _emit(args, _json({name: holds}))
        else:
            _emit(args, f"{name}: {'true' if holds else 'false'}\n")
        return
    pairs = sorted(relation)
    if args.format == "json":
        _emit(args, _json({"relation": [list(p) for p in pairs]}))
    else:
        _emit(args, "".join(f"{p} {q}\n" for p, q in pairs))


def cmd_sim(args):
    t1, t2 = _load_plts(args.left), _load_plts(args.right)
    mode = behavior.SimulationMode(args.mode)
    if args.states:
        p, q = args.states
        _relation_output(args, "similar", None, behavior.similar(p, q, t1, t2, mode))
    else:
        _relation_output(args, "similar", behavior.largest_simulation(t1, t2, mode))


def cmd_bisim(args):
    t1, t2 = _load_plts(args.left), _load_plts(args.right)
    if args.states:
        p, q = args.states
        _relation_output(args, "bisimilar", None, behavior.bisimilar(p, q, t1, t2))
    else:
        _relation_output(args, "bisimilar", behavior.largest_bisimulation(t1, t2))


def _longest_path(system, start):
    """Length of the longest path from ``start``, or None if a cycle is reachable."""
    memo, active = {}, set()

    def walk(s):
        if s in memo:
            return memo[s]
        if s in active:
            raise _Cycle
        active.add(s)
        best = max((1 + walk(t.target) for t in system.outgoing(s)), default=0)
        active.discard(s)
        memo[s] = best
        return best

    try:
        return walk(start)
    except _Cycle:
        return None


class _Cycle(Exception):
    pass


def cmd_traces(args):
    system = _load_plts(args.system)
    start = args.start
    if start is None:
        if not isinstance(system, PointedPlts):
            raise DomainError("--start is required for systems without an initial state")
        start = system.initial
    if not system.has_state(start):
        raise DomainError(f"unknown state {start!r}")
    depth = args.depth
    if depth is None:
        depth = _longest_path(system, start)
        if depth is None:
            raise DomainError("a cycle is reachable from the start state; --depth is required")
        depth = max(depth, 1)
    traces = sorted(behavior.weighted_traces(system, start, depth, maximal_only=args.maximal))
    if args.format == "json":
        _emit(args, _json([{"labels": list(t.labels), "pos": t.pos, "neg": t.neg} for t in traces]))
    else:
        _emit(args, "".join(f"<[{', '.join(t.labels)}], {fmt_weight(t.pos)}, {fmt_weight(t.neg)}>\n"
                            for t in traces))


def cmd_classify(args):
    if args.weights:
        pos, neg = args.weights
        _emit(args, classify(_weight(pos, "POS"), _weight(neg, "NEG")).value + "\n")
        return
    if not args.system:
        raise CliError("classify needs a system file or --weights POS NEG", 2)
    system = _load_plts(args.system)
    rows = [(t, classify(t.pos, t.neg).value) for t in system.transitions]
    if args.format == "json":
        _emit(args, _json([{"from": t.source, "label": t.label, "to": t.target, "class": c}
                           for t, c in rows]))
    else:
        _emit(args, "".join(f"({t.source}, {t.label}, {t.target}) {_pair(t.pos, t.neg)}: {c}\n"
                            for t, c in rows))


def cmd_morphism(args):
    t1, t2 = _load_plts(args.left), _load_plts(args.right)
    sigma = _parse_map(args.map, "--map")
    if args.pointed or args.labels is not None:
        if not (isinstance(t1, PointedPlts) and isinstance(t2, PointedPlts)):
            raise DomainError("pointed morphisms need both systems to have an initial state")
        m = algebra.PointedMorphism(sigma, _parse_map(args.labels, "--labels"))
        problems = algebra.pointed_morphism_violations(m, t1, t2)
    else:
        problems = [str(v) for v in morphism_violations(sigma, t1, t2)]
    _emit(args, f"morphism: {'false' if problems else 'true'}\n" + "".join(f"  {p}\n" for p in problems))


def cmd_op(args):
    name = args.op
    operands = [_load_pointed(p) for p in args.systems]
    binary = name in ("product", "interleave", "sync", "sum")
    if len(operands) != (2 if binary else 1):
        raise CliError(f"op {name} takes {2 if binary else 1} system file(s)", 2)
    t = operands[0]
    if name == "restrict":
        result = algebra.restrict(t, args.keep or [])
    elif name == "relabel":
        result = algebra.relabel(t, _parse_map(args.map, "--map"))
    elif name == "product":
        result = algebra.product(*operands)
    elif name == "interleave":
        result = algebra.interleave(*operands)
    elif name == "sync":
        result = algebra.sync_product(*operands)
    elif name == "sum":
        result = algebra.sum(*operands)
    elif name == "prefix":
        if args.label is None:
            raise CliError("op prefix needs --label", 2)
        result = algebra.prefix(args.label, _weight(args.pos, "--pos"), _weight(args.neg, "--neg"), t)
    elif name == "approx":
        result = algebra.v_approx(t, args.v, algebra.ApproxTarget(args.target))
    elif name == "purge":
        result = algebra.purge(t, _weight(args.p, "--p"), _weight(args.n, "--n"))
    else:
        result = algebra.reachable_part(t)
    _emit_system(args, result)


def _weight(x, flag):
    if not 0 <= x <= 1:
        raise DomainError(f"{flag} must lie in [0, 1], got {x}")
    return x


def cmd_validate(args):
    problems = validate(_load_plts(args.system, check=False))
    if problems:
        raise DomainError("\n".join(str(p) for p in problems))
    _emit(args, "ok\n")


def cmd_export_dot(args):
    _emit(args, formats.to_dot(_load_plts(args.system)))


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paralts", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, fmt=("text", "json")):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=fmt, default=None if "dot" in fmt else fmt[0])
        return p

    p = add("build", cmd_build, "translate a circuit file into a PLTS", ("json", "dot", "text"))
    p.add_argument("circuit")
    p.add_argument("--model", choices=[m.value for m in quantum.WeightModel], default="example")

    p = add("compare", cmd_compare, "compare the effectiveness of two circuits (or circuit PLTSs)")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--model", choices=[m.value for m in quantum.WeightModel], default="example")

    p = add("sim", cmd_sim, "largest simulation, or whether two states are similar")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--states", nargs=2, metavar=("P", "Q"))
    p.add_argument("--mode", choices=[m.value for m in behavior.SimulationMode], default="full")

    p = add("bisim", cmd_bisim, "largest bisimulation, or whether two states are bisimilar")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--states", nargs=2, metavar=("P", "Q"))

    p = add("traces", cmd_traces, "weighted traces from a state")
    p.add_argument("system")
    p.add_argument("--start")
    p.add_argument("--depth", type=int)
    p.add_argument("--maximal", action="store_true", help="only traces ending in a deadlock")

    p = add("classify", cmd_classify, "classify transitions as inconsistent, vague or consistent")
    p.add_argument("system", nargs="?")
    p.add_argument("--weights", nargs=2, type=float, metavar=("POS", "NEG"))

    p = add("morphism", cmd_morphism, "check a (pointed) morphism between two systems", ("text",))
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--map", nargs="*", default=[], metavar="STATE=IMAGE")
    p.add_argument("--labels", nargs="*", metavar="LABEL=IMAGE",
                   help="label map of a pointed morphism; unmapped labels are undefined")
    p.add_argument("--pointed", action="store_true")

    p = add("op", cmd_op, "apply an algebra operator", ("json", "dot", "text"))
    p.add_argument("op", choices=OPS)
    p.add_argument("systems", nargs="+")
    p.add_argument("--keep", nargs="*", metavar="LABEL")
    p.add_argument("--map", nargs="*", metavar="LABEL=IMAGE")
    p.add_argument("--label")
    p.add_argument("--pos", type=float, default=1.0)
    p.add_argument("--neg", type=float, default=0.0)
    p.add_argument("--v", type=float, default=0.0)
    p.add_argument("--target", choices=[t.value for t in algebra.ApproxTarget], default="positive")
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--n", type=float, default=1.0)

    p = add("validate", cmd_validate, "check the invariants of a PLTS document", ("text",))
    p.add_argument("system")

    p = add("export-dot", cmd_export_dot, "write a PLTS as Graphviz DOT", ("dot",))
    p.add_argument("system")
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors (2) and --help (0)
        return exc.code if isinstance(exc.code, int) else 2
    try:
        args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
