"""Command-line interface.

Exit codes: 0 = conclusive, 10 = SAT found, 20 = UNSAT proven,
30 = inconclusive.  The SAT_SOLVER environment variable overrides the
solver binary for all solving subcommands.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import campaign as campaign_mod
from . import words as words_mod
from .encoding import EncodeOptions, build, to_dimacs
from .networks import Network, first_layer, unsorted_inputs
from .saturation import is_saturated
from .solver import SolverConfig, default_config, run_solver

EXIT_OK = 0
EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_INCONCLUSIVE = 30

GN_STREAM_LIMIT = 16  # beyond this, gn/sn report counts only


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _cmd_gen(args) -> int:
    n, kind = args.n, args.set
    if kind in ("gn", "sn"):
        if n > GN_STREAM_LIMIT:
            count = words_mod.telephone(n) if kind == "gn" else words_mod.counts(n, "s").s
            _write(args.out, f"{count}\n")
            return EXIT_OK
        fl = first_layer(n)
        lines = []
        for l2 in words_mod.matchings(n):
            net = Network(n, (fl, l2))
            if kind == "sn" and not is_saturated(net):
                continue
            lines.append(net.to_json())
        _write(args.out, "\n".join(lines) + "\n")
        return EXIT_OK
    key = {"rgn": "rgn", "rsn": "rsn", "rn": "rn"}[kind]
    lines = [words_mod.render_sentence(s) for s in words_mod.sentences(n, key)]
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _load_prefix(args) -> Network | None:
    if args.prefix is not None:
        return Network.from_json(Path(args.prefix).read_text())
    if args.prefix_index is not None:
        prefixes = campaign_mod.two_layer_prefixes(args.n)
        if not 0 <= args.prefix_index < len(prefixes):
            raise SystemExit(f"prefix index out of range (|R_{args.n}| = {len(prefixes)})")
        return prefixes[args.prefix_index]
    return None


def _cmd_encode(args) -> int:
    prefix = _load_prefix(args)
    opts = EncodeOptions(sigma1=not args.no_sigma1, sigma2=not args.no_sigma2,
                         sigma3=not args.no_sigma3, pad=args.pad, prefix=prefix)
    xs = unsorted_inputs(args.n, prefix)
    vm, cnf = build(args.n, args.depth, xs, opts)
    comment = f"sortnetopt n={args.n} d={args.depth} inputs={len(vm.inputs)} pad={args.pad}"
    _write(args.out, to_dimacs(cnf, comments=[comment]))
    return EXIT_OK


def _solver_config(args) -> SolverConfig:
    if args.solver:
        from .solver import DEFAULT_ARGS
        return SolverConfig(executable=args.solver,
                            args=DEFAULT_ARGS.get(Path(args.solver).name, ()),
                            timeout=args.timeout)
    return default_config(timeout=args.timeout)


def _cmd_solve(args) -> int:
    res = run_solver(Path(args.cnf).read_text(), _solver_config(args), name=Path(args.cnf).stem)
    print(f"s {res.verdict}")
    if res.verdict == "SAT":
        print("v " + " ".join(str(v) for v in sorted(res.true_vars)) + " 0")
        return EXIT_SAT
    return EXIT_UNSAT if res.verdict == "UNSAT" else EXIT_INCONCLUSIVE


def _cmd_find(args) -> int:
    mode = args.mode.replace("-", "_")
    witness, camp = campaign_mod.find_network_campaign(
        args.n, args.depth, mode, _solver_config(args), jobs=args.jobs)
    if witness is not None:
        print(witness.to_json())
        return EXIT_SAT
    print(json.dumps({"claim": camp.claim}))
    return EXIT_UNSAT if camp.claim.startswith("T(") else EXIT_INCONCLUSIVE


def _cmd_prove(args) -> int:
    pads = [int(p) for p in args.pads.split(",")] if args.pads else None
    camp = campaign_mod.prove_lower_bound(args.n, args.depth, pads,
                                          _solver_config(args), jobs=args.jobs)
    report = campaign_mod.campaign_to_json(camp)
    if args.out:
        _write(args.out, report + "\n")
    else:
        print(report)
    if camp.claim == f"T({args.n}) > {args.depth}":
        return EXIT_UNSAT
    if camp.claim.startswith(f"T({args.n}) <="):
        return EXIT_SAT
    return EXIT_INCONCLUSIVE


def _cmd_tables(args) -> int:
    csv_text, diff = campaign_mod.reproduce_tables(args.max_n)
    _write(args.out, csv_text)
    if diff:
        sys.stderr.write("differences against the published tables:\n" + diff)
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="sortnetopt",
                                     description="depth-optimal sorting network toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit prefix sentences or networks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", choices=("gn", "rgn", "sn", "rsn", "rn"), required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("encode", help="emit a DIMACS CNF instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--prefix", help="network JSON file fixing the first layers")
    p.add_argument("--prefix-index", type=int, help="index into the canonical R_n ordering")
    p.add_argument("--pad", type=int, default=0, help="window padding (0 = off)")
    p.add_argument("--no-sigma1", action="store_true")
    p.add_argument("--no-sigma2", action="store_true")
    p.add_argument("--no-sigma3", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("solve", help="run the SAT solver on a DIMACS file")
    p.add_argument("--cnf", required=True)
    p.add_argument("--solver")
    p.add_argument("--timeout", type=float, default=600.0)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("find", help="search for a depth-d sorting network")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--mode", choices=("free", "layer1", "two-layer"), default="two-layer")
    p.add_argument("--solver")
    p.add_argument("--timeout", type=float, default=600.0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_find)

    p = sub.add_parser("prove", help="lower-bound campaign over R_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--pads", help="comma-separated pad schedule, largest first")
    p.add_argument("--solver")
    p.add_argument("--timeout", type=float, default=600.0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the JSON campaign report here")
    p.set_defaults(func=_cmd_prove)

    p = sub.add_parser("tables", help="emit the count table as CSV")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_tables)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
