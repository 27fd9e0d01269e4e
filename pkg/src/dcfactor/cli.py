"""Command line entry point: ``dcfactor <subcommand> [options]``.

Every subcommand prints (or writes with ``--out``) one JSON report with a
top-level ``schema`` version, the effective configuration, a ``pass`` flag
and a ``generated`` timestamp, the only field that differs between two
identical runs.

Exit codes: 0 all checks pass, 1 mathematical mismatch or negative
verdict, 2 input or data error, 3 resource bound exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from . import suites
from .cosets import build_coset_space
from .errors import ConsistencyError, DataError, InputError, ResourceError
from .factor import (default_trials, square_dc_probabilistic, square_dc_search,
                     squaring_labels, triple_check)
from .hecke import intersection_numbers, squares_to_group
from .perm import Permutation
from .shipped import resolve_group, set_data_dir

SCHEMA = 1


def _types(arg: str | None, default) -> list[str]:
    return [t.strip() for t in arg.split(",") if t.strip()] if arg else list(default)


def _space(args):
    G = resolve_group(args.group)
    A = resolve_group(args.subgroup)
    return G, A, build_coset_space(G, A, args.bound)


def cmd_coxeter_table(args) -> dict:
    types = _types(args.types, suites.DEFAULT_TABLE_TYPES)
    if args.extended and not args.types:
        types += list(suites.EXTENDED_TABLE_TYPES)
    return suites.coxeter_table(types, args.bound)


def cmd_square_dc(args) -> dict:
    G, A, cs = _space(args)
    out = {"index": cs.index, "rank": cs.rank, "subdegrees": list(cs.subdegrees),
           "squaring_suborbits": squaring_labels(cs)}
    if args.probabilistic:
        trials = default_trials(cs.rank) if args.trials is None else args.trials
        out.update(method="probabilistic", trials=trials, witness=None, witness_suborbit=None)
        runs = []
        for j in range(cs.rank):
            if cs.inverse_label(j) != j:
                continue
            rep = square_dc_probabilistic(cs, cs.dc_rep(j), trials, args.seed)
            runs.append({"suborbit": j, "certain": rep.verdict, "unmarked": sorted(rep.unmarked)})
            if rep.verdict and out["witness"] is None:
                out["witness"], out["witness_suborbit"] = cs.dc_rep(j).cycles(), j
        out["runs"] = runs
    else:
        x = square_dc_search(cs, involution=args.involution, bound=args.bound)
        out.update(method="exact", witness=x.cycles() if x else None,
                   witness_suborbit=cs.dc_index(x) if x else None)
        if x is not None and args.involution:
            out["witness_order"] = x.order()
    out["pass"] = out["witness"] is not None
    return out


def cmd_triple_check(args) -> dict:
    G, A, cs = _space(args)
    out = {"index": cs.index, "rank": cs.rank, "subdegrees": list(cs.subdegrees)}
    if args.x:
        x = Permutation.from_cycles(args.x, G.degree)
        out["x"] = x.cycles()
        out["suborbit"] = cs.dc_index(x)
        out["pass"] = triple_check(cs, x)
    else:
        out["succeeding_suborbits"] = [j for j in range(cs.rank) if triple_check(cs, cs.dc_rep(j))]
        out["pass"] = bool(out["succeeding_suborbits"])
    return out


def cmd_hecke(args) -> dict:
    G, A, cs = _space(args)
    ca = intersection_numbers(cs, args.bound)
    out = ca.to_dict()
    out["squares"] = [squares_to_group(ca, i) for i in range(ca.rank)]
    out["pass"] = True
    return out


def cmd_dioid_verify(args) -> dict:
    types = _types(args.types, suites.LONGEST_SQUARE_TYPES)
    parts = {
        "longest_square": suites.longest_square_suite(types, args.bound),
        "bn_oracle": suites.bn_oracle_suite(),
        "axioms": suites.dioid_axiom_suite(args.seed),
    }
    return {"pass": all(p["pass"] for p in parts.values()), "suites": parts}


def cmd_verify_all(args) -> dict:
    types = list(suites.DEFAULT_TABLE_TYPES)
    if args.extended:
        types += list(suites.EXTENDED_TABLE_TYPES)
    parts = {
        "coxeter_table": suites.coxeter_table(types, args.bound),
        "longest_square": suites.longest_square_suite(bound=args.bound),
        "bn_oracle": suites.bn_oracle_suite(),
        "square_dc": suites.square_dc_suite(args.bound),
        "conjugate_triples": suites.conjugate_triple_suite(args.seed),
        "hecke": suites.hecke_suite(),
        "probabilistic": suites.probabilistic_suite(range(args.seed, args.seed + 10), args.trials),
        "dioid_axioms": suites.dioid_axiom_suite(args.seed),
    }
    return {"pass": all(p["pass"] for p in parts.values()), "suites": parts}


COMMANDS = {
    "coxeter-table": (cmd_coxeter_table, "Which Coxeter groups are a product of three conjugate parabolics"),
    "square-dc": (cmd_square_dc, "Search for a double coset whose square is the group"),
    "triple-check": (cmd_triple_check, "Test G = A A^x A for one x or every double coset"),
    "hecke": (cmd_hecke, "Intersection numbers and collapsed adjacency matrices"),
    "dioid-verify": (cmd_dioid_verify, "Longest-element square, oracle comparison and dioid laws"),
    "verify-all": (cmd_verify_all, "Run every verification suite"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all random choices (default 0)")
    common.add_argument("--trials", type=int, default=None,
                        help="trials for the random marker (default max(1000, 50*rank))")
    common.add_argument("--extended", action="store_true", help="include E7 and E8")
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    common.add_argument("--bound", type=int, default=10**6, help="enumeration and index bound")
    common.add_argument("--data-dir", default=None, help="directory replacing the shipped .perm files")

    parser = argparse.ArgumentParser(prog="dcfactor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name in ("square-dc", "triple-check", "hecke"):
            p.add_argument("group", help=".perm file or shipped name (e.g. m12)")
            p.add_argument("subgroup", help=".perm file or shipped name (e.g. m12_stab)")
        if name in ("coxeter-table", "dioid-verify"):
            p.add_argument("--types", default=None, help="comma-separated types, e.g. A3,B4,I2(5)")
        if name == "square-dc":
            p.add_argument("--probabilistic", action="store_true", help="use the random marker")
            p.add_argument("--involution", action="store_true",
                           help="require the witness to be an involution")
        if name == "triple-check":
            p.add_argument("--x", default=None, help="cycle notation for x, e.g. '(1,3)(2,4)'")
    return parser


def _config(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "out"}


def _plain(obj):
    """JSON fallback for numpy scalars."""
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.trials is not None and args.trials < 0:
        print("dcfactor: --trials must be non-negative", file=sys.stderr)
        return 2
    set_data_dir(args.data_dir)
    func = COMMANDS[args.command][0]
    try:
        result = func(args)
        code = 0 if result["pass"] else 1
    except (InputError, DataError) as exc:
        result, code = {"pass": False, "error": type(exc).__name__, "message": str(exc)}, 2
    except ResourceError as exc:
        result, code = {"pass": False, "error": "ResourceError", "message": str(exc)}, 3
    except ConsistencyError as exc:
        result, code = {"pass": False, "error": "ConsistencyError", "message": str(exc)}, 1
    finally:
        set_data_dir(None)
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "config": _config(args),
        "generated": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "pass": result.pop("pass"),
        "result": result,
    }
    text = json.dumps(report, indent=2, sort_keys=True, default=_plain) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == 2 or code == 3:
        print(f"dcfactor: {result['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
