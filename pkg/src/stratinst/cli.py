"""Command-line front end: ``stratinst <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import entails, satisfies, satisfies_global
from .errors import StratError
from .kripke import parse_valuation, valuation_str
from .products import filtered_product, parse_filter
from .signature import LogicId, profile
from .syntax import load_model, load_signature, parse_sentence, render_sentence, save_model
from .verify import SUITES, SuiteConfig


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _Usage(f"{self.prog}: error: {message}")


def _logic(text: str) -> LogicId:
    try:
        return LogicId.parse(text)
    except (StratError, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stratinst", description="Stratified institution workbench.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def model_args(q, world=True):
        q.add_argument("--logic", type=_logic, required=True)
        q.add_argument("--sig", required=True, help="signature JSON file")
        q.add_argument("--model", required=True, help="model JSON file")
        if world:
            q.add_argument("--world", required=True,
                           help='state: a world name, or "x=0,y=1" for OFOL logics')
        q.add_argument("sentence")

    model_args(sub.add_parser("check", help="truth at one state"))
    model_args(sub.add_parser("global", help="truth at every state"), world=False)

    e = sub.add_parser("entail", help="bounded entailment")
    e.add_argument("--logic", type=_logic, required=True)
    e.add_argument("--sig", required=True)
    e.add_argument("--mode", choices=("local", "global"), default="local")
    e.add_argument("--hyp", action="append", default=[],
                   help="file with one hypothesis per line (repeatable)")
    e.add_argument("--goal", required=True)
    e.add_argument("--max-worlds", type=_positive, default=2)
    e.add_argument("--max-carrier", type=_positive, default=2)
    e.add_argument("-o", "--output", default="counterexample.json",
                   help="where to write a counterexample model")

    pr = sub.add_parser("product", help="filtered product of models indexed 1..n")
    pr.add_argument("--logic", type=_logic, required=True)
    pr.add_argument("--sig", required=True)
    pr.add_argument("--filter", required=True, help='e.g. "{1,2};{1,2,3}"')
    pr.add_argument("--models", nargs="+", required=True)
    pr.add_argument("-o", "--output", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--logic", type=_logic, action="append",
                   help="restrict to a logic (repeatable; default all)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--budget", type=_positive)
    v.add_argument("--case", type=int)
    v.add_argument("--depth", type=_positive)
    v.add_argument("--max-worlds", type=_positive)
    v.add_argument("--max-index", type=_positive, default=3)
    v.add_argument("--inject-fault", action="store_true")
    v.add_argument("--extend-all-vars", action="store_true",
                   help="satcond: extend the variable block for every OFOL-family logic")
    v.add_argument("--json", action="store_true", help="print the report as JSON")
    v.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    ps = sub.add_parser("parse", help="print the canonical form of a sentence")
    ps.add_argument("--logic", type=_logic, required=True)
    ps.add_argument("--sig", help="optional signature to check symbols against")
    ps.add_argument("sentence")
    return p


def _state(logic: LogicId, text: str):
    return text if profile(logic).kripke else parse_valuation(text)


def _state_text(state) -> str:
    return state if isinstance(state, str) else valuation_str(state)


def _read_hyps(logic, sig, paths: list[str]) -> list:
    out = []
    for path in paths:
        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                out.append(parse_sentence(logic, sig, line))
    return out


def _cmd_check(a) -> int:
    sig = load_signature(a.sig)
    model = load_model(a.logic, sig, a.model)
    s = parse_sentence(a.logic, sig, a.sentence)
    print(str(satisfies(a.logic, sig, model, _state(a.logic, a.world), s)).lower())
    return 0


def _cmd_global(a) -> int:
    sig = load_signature(a.sig)
    model = load_model(a.logic, sig, a.model)
    s = parse_sentence(a.logic, sig, a.sentence)
    print(str(satisfies_global(a.logic, sig, model, s)).lower())
    return 0


def _cmd_entail(a) -> int:
    sig = load_signature(a.sig)
    hyps = _read_hyps(a.logic, sig, a.hyp)
    goal = parse_sentence(a.logic, sig, a.goal)
    r = entails(a.logic, sig, hyps, goal, mode=a.mode,
                max_worlds=a.max_worlds, max_carrier=a.max_carrier)
    bounds = f"worlds<={a.max_worlds}, carrier<={a.max_carrier}"
    if r.holds:
        print(f"entailed ({a.mode}; {r.models_checked} models checked; {bounds})")
        return 0
    model, state = r.counterexample
    save_model(model, a.output)
    where = f" at {_state_text(state)}" if state is not None else ""
    print(f"not entailed ({a.mode}; {bounds})")
    print(f"counterexample{where} written to {a.output}")
    return 1


def _cmd_product(a) -> int:
    sig = load_signature(a.sig)
    family = {i: load_model(a.logic, sig, path) for i, path in enumerate(a.models, 1)}
    F = parse_filter(a.filter, family)
    result = filtered_product(a.logic, sig, F, family)
    save_model(result.model, a.output)
    J = result.j_min
    print(f"filter {F}; J_min = {{{','.join(map(str, J))}}}; wrote {a.output}")
    worlds, elems = result._tables[J]
    table = worlds if profile(a.logic).kripke else elems
    head = "world" if profile(a.logic).kripke else "element"
    rows = [(name, *parts) for name, parts in sorted(table.items())]
    widths = [max(len(str(r[k])) for r in rows + [(head, *map(str, J))]) for k in range(len(J) + 1)]
    for r in [(head, *map(str, J))] + rows:
        print("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip())
    return 0


def _cmd_verify(a) -> int:
    cfg = SuiteConfig(
        logics=tuple(a.logic or LogicId), seed=a.seed, budget=a.budget, case=a.case,
        depth=a.depth, max_worlds=a.max_worlds, max_index=a.max_index, fault=a.inject_fault,
        extend_all_vars=a.extend_all_vars,
    )
    report = SUITES[a.suite](cfg)
    if a.json:
        print(json.dumps(report.to_json(timing=a.timing), indent=2, sort_keys=True))
    else:
        print(report.to_text(timing=a.timing))
    return 0 if report.passed else 1


def _cmd_parse(a) -> int:
    sig = load_signature(a.sig) if a.sig else None
    print(render_sentence(parse_sentence(a.logic, sig, a.sentence)))
    return 0


COMMANDS = {
    "check": _cmd_check, "global": _cmd_global, "entail": _cmd_entail,
    "product": _cmd_product, "verify": _cmd_verify, "parse": _cmd_parse,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _Usage as e:
        print(e, file=sys.stderr)
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (StratError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
