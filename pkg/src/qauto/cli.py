"""Command-line front end: qauto value | check | determinize | synthesize |
solve-game | oracle | fixtures.

Exit codes: 0 Yes/value, 1 No/Unrealizable, 2 error, 3 Unknown.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from importlib import resources

from .games.arena import Arena, GameError, arena_from_json
from .model import Automaton, Lasso, ModelError, automaton_from_json, \
    automaton_to_json, check_valid, classify_automaton
from .rationals import format_rational, parse_rational
from .valuation import automaton_value, automaton_value_finite, automaton_value_lasso
from .verdicts import Verdict

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2
EXIT_UNKNOWN = 3


class CliError(Exception):
    pass


# ---------------------------------------------------------------------------
# fixtures API


def list_fixtures():
    root = resources.files("qauto") / "fixtures"
    return sorted(p.name for p in root.iterdir()
                  if p.name.endswith(".json") and p.name != "manifest.json")


def fixture_manifest() -> dict:
    root = resources.files("qauto") / "fixtures"
    return json.loads((root / "manifest.json").read_text())


def load_fixture(name: str) -> Automaton:
    root = resources.files("qauto") / "fixtures"
    if not name.endswith(".json"):
        name += ".json"
    try:
        text = (root / name).read_text()
    except FileNotFoundError:
        raise CliError(f"unknown fixture {name!r}")
    a = automaton_from_json(json.loads(text))
    check_valid(a)
    return a


def fixtures() -> dict:
    """The bundled corpus: automata plus the expected-verdict manifest."""
    return {"automata": {n: load_fixture(n) for n in list_fixtures()},
            "manifest": fixture_manifest()}


# ---------------------------------------------------------------------------
# helpers


def _load_automaton(path: str) -> Automaton:
    import os
    if not os.path.exists(path):
        name = path if path.endswith(".json") else path + ".json"
        if name in list_fixtures():
            return load_fixture(name)
    with open(path) as fh:
        a = automaton_from_json(json.load(fh))
    check_valid(a)
    return a


def _parse_word(raw: str):
    if raw.lstrip().startswith("{"):
        obj = json.loads(raw)
        unknown = set(obj) - {"prefix", "cycle"}
        if unknown:
            raise CliError(f"unknown word keys {sorted(unknown)}")
        return Lasso(obj.get("prefix", ""), obj["cycle"])
    return raw


def _emit(payload: dict, code: int) -> int:
    print(json.dumps(payload, indent=2, sort_keys=True))
    return code


def _verdict_exit(v: Verdict) -> int:
    if v.is_yes:
        return EXIT_YES
    if v.is_no:
        return EXIT_NO
    return EXIT_UNKNOWN


# ---------------------------------------------------------------------------
# subcommands


def _cmd_value(args) -> int:
    a = _load_automaton(args.automaton)
    word = _parse_word(args.word)
    value = automaton_value(a, word)
    return _emit({"value": format_rational(value),
                  "method": "valuation", "soundness": "exact"}, EXIT_YES)


def _cmd_check(args) -> int:
    from . import pruning, token_games
    a = _load_automaton(args.automaton)
    prop = args.property
    if prop in ("threshold-hd", "threshold-dbp") and args.t is None:
        raise CliError(f"--t is required for {prop}")
    if prop == "hd":
        v = token_games.decide_hd(a)
    elif prop == "gfg":
        v = token_games.decide_gfg(a)
    elif prop == "dbp":
        v = pruning.extract_dbp_witness(a, max_enum=args.max_enum)
    elif prop == "threshold-hd":
        v = token_games.decide_threshold_hd(a, parse_rational(args.t))
    else:
        v = pruning.threshold_dbp_witness(a, parse_rational(args.t),
                                          max_enum=args.max_enum)
    return _emit(v.to_json(), _verdict_exit(v))


def _cmd_determinize(args) -> int:
    from . import pruning
    a = _load_automaton(args.automaton)
    v = pruning.extract_dbp_witness(a, max_enum=args.max_enum)
    payload = v.to_json()
    if v.is_yes:
        choice = {(row["state"], row["letter"]):
                  pruning.Leaf(parse_rational(row["weight"]), row["to"])
                  for row in v.witness}
        payload["automaton"] = automaton_to_json(pruning.prune(a, choice))
    return _emit(payload, _verdict_exit(v))


def _cmd_synthesize(args) -> int:
    from . import synthesis
    a = _load_automaton(args.spec)
    a_io = synthesis.io_automaton(a)
    if args.mode in ("global-threshold", "local-threshold") and args.t is None:
        raise CliError(f"--t is required for mode {args.mode}")
    if args.mode == "global-threshold":
        v, tr = synthesis.global_threshold_synthesis(a_io, args.t,
                                                     assume_gfg=args.assume_gfg)
    elif args.mode == "global-value":
        value, tr = synthesis.global_value_synthesis(a_io,
                                                     assume_gfg=args.assume_gfg)
        payload = {"value": None if value is None else format_rational(value),
                   "transducer": tr.to_json() if tr else None,
                   "method": "synthesis-game", "soundness": "exact"}
        if args.assume_gfg:
            payload["assumed_gfg"] = True
        return _emit(payload, EXIT_YES)
    elif args.mode == "local-best":
        v, tr = synthesis.local_best_value_synthesis(a_io)
    else:
        v, tr = synthesis.local_threshold_synthesis(a_io, args.t)
    payload = v.to_json()
    payload["transducer"] = tr.to_json() if tr else None
    if args.assume_gfg:
        payload["assumed_gfg"] = True
    return _emit(payload, _verdict_exit(v))


def _cmd_solve_game(args) -> int:
    with open(args.arena) as fh:
        data = json.load(fh)
    extra = {k: data.pop(k, None) for k in ("bad", "targets")}
    arena = arena_from_json(data)
    obj = args.objective
    if obj == "safety":
        from .games.safety import solve_safety
        sol = solve_safety(arena, set(extra["bad"] or []))
        payload = {"eve_wins": arena.initial in sol["eve_region"],
                   "eve_region": sorted(map(str, sol["eve_region"]))}
    elif obj == "reachability":
        from .games.safety import solve_reachability
        region, _ = solve_reachability(arena, set(extra["targets"] or []))
        payload = {"eve_wins": arena.initial in region,
                   "eve_region": sorted(map(str, region))}
    elif obj == "parity":
        from .games.parity import solve_parity
        sol = solve_parity(arena)
        payload = {"eve_wins": arena.initial in sol["eve_region"],
                   "eve_region": sorted(map(str, sol["eve_region"]))}
    elif obj == "energy":
        from .games.energy import INF, NEG, solve_energy
        need, _ = solve_energy(arena)
        enc = {str(v): ("inf" if n is INF else "none" if n is NEG
                        else format_rational(n)) for v, n in need.items()}
        payload = {"need": enc,
                   "eve_wins": need[arena.initial] is not INF}
    elif obj == "mean-payoff":
        from .games.meanpayoff import solve_mean_payoff_value
        values, _ = solve_mean_payoff_value(arena)
        payload = {"values": {str(v): format_rational(x)
                              for v, x in values.items()},
                   "value": format_rational(values[arena.initial])}
    elif obj == "discounted":
        from .games.dsum import solve_discounted_value
        values, _, _ = solve_discounted_value(arena)
        payload = {"values": {str(v): format_rational(x)
                              for v, x in values.items()},
                   "value": format_rational(values[arena.initial])}
    else:
        raise CliError(f"unknown objective {obj!r}")
    payload["method"] = f"solve-game:{obj}"
    payload["soundness"] = "exact"
    code = EXIT_YES if payload.get("eve_wins", True) else EXIT_NO
    return _emit(payload, code)


def _cmd_oracle(args) -> int:
    from .letter_oracle import bounded_letter_game
    a = _load_automaton(args.automaton)
    t = parse_rational(args.t) if args.t is not None else None
    v = bounded_letter_game(a, side=args.side, threshold=t, depth=args.depth)
    return _emit(v.to_json(), _verdict_exit(v))


def _expected_checks(name: str, spec: dict):
    """(description, callable) pairs for one manifest entry."""
    from . import pruning, token_games
    from .letter_oracle import bounded_letter_game
    a = load_fixture(name)
    checks = []
    if "class" in spec:
        checks.append((f"{name}:class",
                       lambda a=a, want=spec["class"]: classify_automaton(a) == want))
    expect = spec.get("expect", {})
    for entry in expect.get("value", []):
        word = entry["word"]
        w = Lasso(word["prefix"], word["cycle"]) if isinstance(word, dict) else word
        want = parse_rational(entry["value"])
        checks.append((f"{name}:value:{word}",
                       lambda a=a, w=w, want=want: automaton_value(a, w) == want))
    simple = {
        "hd": lambda a: token_games.decide_hd(a),
        "gfg": lambda a: token_games.decide_gfg(a),
        "dbp": lambda a: pruning.extract_dbp_witness(a),
        "gfg-limsup": lambda a: token_games.decide_gfg_limsup(a),
        "g2-semicheck": lambda a: token_games.g2_semicheck(a),
        "adam-letter-game": lambda a: bounded_letter_game(a, side="adam", depth=3),
    }
    for key, fn in simple.items():
        if key in expect:
            checks.append((f"{name}:{key}",
                           lambda a=a, fn=fn, want=expect[key]: fn(a).tag == want))
    for entry in expect.get("threshold-hd", []):
        checks.append((f"{name}:threshold-hd:t={entry['t']}",
                       lambda a=a, e=entry: token_games.decide_threshold_hd(
                           a, parse_rational(e["t"])).tag == e["verdict"]))
    for entry in expect.get("threshold-dbp", []):
        checks.append((f"{name}:threshold-dbp:t={entry['t']}",
                       lambda a=a, e=entry: pruning.threshold_dbp_witness(
                           a, parse_rational(e["t"])).tag == e["verdict"]))
    return checks


def _cmd_fixtures(args) -> int:
    manifest = fixture_manifest()
    payload = {"fixtures": list_fixtures(), "manifest": manifest,
               "method": "fixtures", "soundness": "exact"}
    if args.check:
        checks = []
        for name, spec in manifest.items():
            checks.extend(_expected_checks(name, spec))
        if args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(lambda c: c[1](), checks))
        else:
            results = [fn() for _, fn in checks]
        report = {desc: bool(ok) for (desc, _), ok in zip(checks, results)}
        payload["checks"] = report
        if not all(results):
            payload["failed"] = sorted(d for d, ok in report.items() if not ok)
            return _emit(payload, EXIT_NO)
    return _emit(payload, EXIT_YES)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qauto",
                                description="quantitative automata toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("value", help="value of an automaton on a word")
    sp.add_argument("automaton")
    sp.add_argument("--word", required=True,
                    help='finite word "ab" or lasso JSON {"prefix":..,"cycle":..}')
    sp.set_defaults(fn=_cmd_value)

    sp = sub.add_parser("check", help="decide a property")
    sp.add_argument("automaton")
    sp.add_argument("--property", required=True,
                    choices=["hd", "gfg", "dbp", "threshold-hd", "threshold-dbp"])
    sp.add_argument("--t", default=None, help="threshold p/q")
    sp.add_argument("--max-enum", type=int, default=3 ** 12)
    sp.set_defaults(fn=_cmd_check)

    sp = sub.add_parser("determinize", help="determinize by pruning")
    sp.add_argument("automaton")
    sp.add_argument("--max-enum", type=int, default=3 ** 12)
    sp.set_defaults(fn=_cmd_determinize)

    sp = sub.add_parser("synthesize", help="synthesize a transducer")
    sp.add_argument("spec", help="IOAutomaton JSON (letters input|output)")
    sp.add_argument("--mode", required=True,
                    choices=["global-threshold", "global-value",
                             "local-best", "local-threshold"])
    sp.add_argument("--t", default=None)
    sp.add_argument("--assume-gfg", action="store_true")
    sp.set_defaults(fn=_cmd_synthesize)

    sp = sub.add_parser("solve-game", help="solve an arena objective")
    sp.add_argument("arena")
    sp.add_argument("--objective", required=True,
                    choices=["safety", "reachability", "parity", "energy",
                             "mean-payoff", "discounted"])
    sp.set_defaults(fn=_cmd_solve_game)

    sp = sub.add_parser("oracle", help="bounded letter-game refutation search")
    sp.add_argument("automaton")
    sp.add_argument("--side", default="eve", choices=["eve", "adam"])
    sp.add_argument("--t", default=None)
    sp.add_argument("--depth", type=int, default=6)
    sp.set_defaults(fn=_cmd_oracle)

    sp = sub.add_parser("fixtures", help="bundled corpus and manifest")
    sp.add_argument("--check", action="store_true",
                    help="verify expected verdicts")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0,
                    help="seed for randomized corpora (reserved)")
    sp.set_defaults(fn=_cmd_fixtures)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        return args.fn(args)
    except (CliError, ModelError, GameError, FileNotFoundError,
            json.JSONDecodeError, ValueError, KeyError) as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
