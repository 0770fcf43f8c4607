"""
Command line entry point.

Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 resource guard,
4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .closure import ClosureBounds, classic_closure, member_exact, skew_closure
from .linmap import DENSE_LIMIT, ResourceError, t, t_hat
from .partitions import Partition
from .symmetric import nontrivial_generators, star_oracle
from .verify import DEFAULT_SEED, SUITES, run_suite, section_five_suite
from .words import (
    SearchOracle, Word, emit_presentation_relations, is_strongly_invariant, lift_member,
    oracle_from_json, reduce,
)

MAX_POINTS_GUARD = 12
EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE, EXIT_INTERNAL = 1, 2, 3, 4


class InputError(ValueError):
    pass


def _load(arg: str, what: str):
    """Inline JSON, or a path to a JSON file."""
    if arg is None:
        raise InputError(f"missing {what}")
    text = arg
    if not arg.lstrip().startswith(("{", "[")) and os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc}") from exc


def _word(data) -> Word:
    if not isinstance(data, list) or not all(isinstance(x, int) and x >= 1 for x in data):
        raise InputError(f"a word is a JSON list of positive integers, got {data!r}")
    return reduce(data)


def _oracle(args):
    data = _load(args.oracle, "--oracle")
    if isinstance(data, dict) and data.get("type") == "search":
        if args.max_len is not None:
            data["maxLength"] = args.max_len
        if args.max_depth is not None:
            data["maxDepth"] = args.max_depth
    return oracle_from_json(data)


def _emit(args, payload, text: str | None = None):
    if args.format == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(payload, sort_keys=True))


def cmd_closure(args) -> int:
    data = _load(args.input, "closure request") if args.input else {}
    if not isinstance(data, dict):
        raise InputError("closure request must be a JSON object")
    kind = data.get("kind", args.kind)
    if kind not in ("skew", "classic"):
        raise InputError(f"unknown closure kind {kind!r}")
    max_points = args.max_points if args.max_points is not None else data.get("maxPoints", 10)
    if not isinstance(max_points, int):
        raise InputError("maxPoints must be an integer")
    if max_points > MAX_POINTS_GUARD:
        raise ResourceError(f"maxPoints {max_points} exceeds the guard {MAX_POINTS_GUARD}")
    gens = [Partition.from_json(g) for g in data.get("generators", [])]
    engine = skew_closure if kind == "skew" else classic_closure
    result = engine(gens, ClosureBounds(max_points, data.get("maxBlocks")))
    payload = {"elements": [p.to_json() for p in result.sorted()],
               "saturated": result.saturated}
    text = "\n".join(str(p) for p in result.sorted()) + f"\n# saturated: {result.saturated}"
    _emit(args, payload, text)
    return 0


def cmd_member(args) -> int:
    oracle = _oracle(args)
    if args.partition is not None:
        p = Partition.from_json(_load(args.partition, "--partition"))
        verdict = member_exact(p, oracle, args.lift)
    elif args.word is not None:
        w = _word(_load(args.word, "--word"))
        if w.letters and max(w.letters) > oracle.rank:
            verdict = lift_member(oracle, w, args.lift)
        else:
            verdict = oracle.member(w)
    else:
        raise InputError("member needs --word or --partition")
    _emit(args, {"verdict": verdict.value}, verdict.value)
    return 0


def cmd_eval(args) -> int:
    p = Partition.from_json(_load(args.partition, "--partition"))
    if args.n is None or args.n < 1:
        raise InputError("eval needs a positive --n")
    if args.n ** p.points > DENSE_LIMIT:
        raise ResourceError(f"{args.n}^{p.points} entries exceed {DENSE_LIMIT}")
    m = (t_hat if args.functor == "hat" else t)(p, args.n)
    lines = [f"{' '.join(map(str, o)) or '-'} <- {' '.join(map(str, i)) or '-'} : {c}"
             for (o, i), c in sorted(m.entries.items())]
    _emit(args, m.to_json(), "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    n = args.n if args.n is not None else 4
    reports = [run_suite(name, n=n, arity_bound=args.arity_bound,
                         max_points=args.max_points or 8, seed=args.seed) for name in names]
    payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
    _emit(args, payload, "\n".join(r.to_text() for r in reports))
    return 0 if all(r.status != "fail" for r in reports) else EXIT_FAIL


def cmd_easiness(args) -> int:
    oracle = _oracle(args)
    if args.generators is not None:
        gens = [_word(g) for g in _load(args.generators, "--generators")]
    elif isinstance(oracle, SearchOracle):
        gens = list(oracle.generators)
    else:
        raise InputError("a quotient oracle needs --generators (normal generators of N)")
    res = is_strongly_invariant(oracle, gens)
    payload = res.to_json()
    text = f"{res.verdict.value}" + "".join(
        f"\n  {g} under {sorted(m.items())} -> {im}" for g, m, im in res.witnesses[:10])
    _emit(args, payload, text)
    return 0


def cmd_present(args) -> int:
    data = _load(args.generators, "--generators") if args.generators else []
    if not isinstance(data, list) or not all(isinstance(g, list) for g in data):
        raise InputError("--generators must be a JSON list of multi-indices")
    if args.n is None:
        raise InputError("present needs --n")
    rels = emit_presentation_relations(data, args.n)
    _emit(args, rels, "\n".join(d["relation"] for d in rels))
    return 0


def cmd_example_s(args) -> int:
    n = args.n if args.n is not None else 4
    report = section_five_suite(n, seed=args.seed)
    payload = {"oracle": star_oracle(n).to_json(),
               "generators": [g.to_json() for g in nontrivial_generators(n)],
               "report": report.to_json()}
    _emit(args, payload, report.to_text())
    return 0 if report.status != "fail" else EXIT_FAIL


COMMANDS = {
    "closure": cmd_closure, "member": cmd_member, "eval": cmd_eval, "verify": cmd_verify,
    "easiness": cmd_easiness, "present": cmd_present, "example-s": cmd_example_s,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="dimension / ambient rank")
    common.add_argument("--max-points", type=int, help="closure bound on k + l")
    common.add_argument("--max-len", type=int, help="search oracle: longest word explored")
    common.add_argument("--max-depth", type=int, help="search oracle: longest move sequence")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled sweeps")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(
        prog="skewcat", description="Skew categories of partitions and their word calculus.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("closure", parents=[common], help="truncated closure of generators")
    p.add_argument("--input", help='JSON {"kind","generators","maxPoints"} or a path')
    p.add_argument("--kind", choices=("skew", "classic"), default="skew")

    p = sub.add_parser("member", parents=[common], help="membership of a word or partition")
    p.add_argument("--oracle", required=True, help="oracle JSON or a path")
    p.add_argument("--word", help="JSON list of letters")
    p.add_argument("--partition", help='JSON {"upper":[...],"lower":[...]}')
    p.add_argument("--lift", choices=("S", "sS"), default="S")

    p = sub.add_parser("eval", parents=[common], help="matrix entries of T or T-hat")
    p.add_argument("--partition", required=True)
    p.add_argument("--functor", choices=("hat", "plain"), default="hat")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--arity-bound", type=int, default=4)

    p = sub.add_parser("easiness", parents=[common], help="sS_n-invariance of N")
    p.add_argument("--oracle", required=True)
    p.add_argument("--generators", help="JSON list of words generating N as a normal subgroup")

    p = sub.add_parser("present", parents=[common], help="relations of the quantum group")
    p.add_argument("--generators", help="JSON list of multi-indices")

    sub.add_parser("example-s", parents=[common], help="the symmetric-group example")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.verb](args)
    except ResourceError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, KeyError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
