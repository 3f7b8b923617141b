"""Command-line interface: ``binpack <command> [options]``.

Exit status is 0 on success, 1 when a packing fails verification or a bound
is violated, and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import (PAPER_HEURISTICS, GeneratorSpec, emit_table, generate,
                    random_instances, run_suite)
from .core import (InstanceFormatError, format_packing, parse_packing,
                   read_instance_file, verify_packing, write_instance)
from .heuristics import HeuristicId, solve
from .oracle import (CLAIMS, DEFAULT_ITEM_LIMIT, InstanceTooLarge, check_claims,
                     exact_opt)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ALGO_NAMES = [h.value for h in HeuristicId]


class UsageError(Exception):
    pass


def _write(text: str, out) -> None:
    if out:
        Path(out).write_bytes(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        return read_instance_file(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    except InstanceFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_pack(args) -> int:
    inst = _load(args.input)
    packing = solve(inst, args.algo)
    problem = verify_packing(inst, packing)
    if problem is not None:
        print(f"error: {args.algo} produced an invalid packing: {problem}", file=sys.stderr)
        return EXIT_FAIL
    if args.assignment:
        _write(format_packing(packing), args.out)
        if args.out:
            print(packing.num_bins)
    else:
        _write(f"{packing.num_bins}\n", args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    kind = args.kind.replace("-", "_")
    try:
        spec = GeneratorSpec(kind, args.n, args.capacity, args.min_w, args.max_w, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(write_instance(generate(spec)), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    instances = [_load(p) for p in args.input]
    algos = [HeuristicId.from_name(a) for a in args.algo] if args.algo else list(PAPER_HEURISTICS)
    records = run_suite(instances, algos, args.repeats)
    _write(emit_table(records, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load(args.input)
    try:
        packing = parse_packing(Path(args.packing).read_bytes(), inst.capacity)
    except OSError as exc:
        raise UsageError(f"{args.packing}: {exc.strerror or exc}") from None
    except (InstanceFormatError, UnicodeDecodeError) as exc:
        raise UsageError(f"{args.packing}: {exc}") from None
    problem = verify_packing(inst, packing)
    if problem is not None:
        print(f"invalid: {problem}")
        return EXIT_FAIL
    print(f"valid: {packing.num_bins} bins")
    return EXIT_OK


def cmd_opt(args) -> int:
    inst = _load(args.input)
    try:
        print(exact_opt(inst, args.item_limit))
    except InstanceTooLarge as exc:
        raise UsageError(f"{exc}; raise --item-limit to try anyway") from None
    return EXIT_OK


def cmd_check_bounds(args) -> int:
    if args.input:
        instances = [_load(p) for p in args.input]
    else:
        if args.n is None:
            raise UsageError("check-bounds needs --input files or --n for generated instances")
        instances = random_instances(args.count, args.seed, (1, args.n),
                                     (args.capacity, args.capacity))
    violations = 0
    for inst in instances:
        try:
            opt = exact_opt(inst, args.item_limit)
        except InstanceTooLarge as exc:
            print(f"skip {inst.name}: {exc}", file=sys.stderr)
            continue
        for claim, bins, verdict in check_claims(inst, opt, CLAIMS):
            status = "holds" if verdict.holds else "VIOLATED"
            print(f"{inst.name}\t{claim}\t{bins} vs {float(verdict.rhs):g} (OPT={opt})\t{status}")
            violations += not verdict.holds
    print(f"{violations} violation(s)")
    return EXIT_FAIL if violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binpack", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pack", help="pack one instance with one heuristic")
    p.add_argument("--algo", required=True, choices=ALGO_NAMES)
    p.add_argument("--input", required=True)
    p.add_argument("--assignment", action="store_true",
                   help="write the bins (one line of item indices per bin) instead of the count")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--kind", choices=["uniform", "nf-adversarial"], default="uniform")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--capacity", type=int, default=1000)
    p.add_argument("--min-w", type=int, default=1)
    p.add_argument("--max-w", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time heuristics on instance files")
    p.add_argument("--input", required=True, nargs="+")
    p.add_argument("--algo", action="append", choices=ALGO_NAMES,
                   help="repeatable; defaults to MR+ FF++ FFD++ NF NFD+ BF++")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--format", choices=["markdown", "csv"], default="markdown")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="check a packing file against an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--packing", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("opt", help="exact optimum of a small instance")
    p.add_argument("--input", required=True)
    p.add_argument("--item-limit", type=int, default=DEFAULT_ITEM_LIMIT)
    p.set_defaults(func=cmd_opt)

    p = sub.add_parser("check-bounds", help="check the NF/FF/FFD worst-case bounds")
    p.add_argument("--input", nargs="+")
    p.add_argument("--n", type=int, help="maximum item count of generated instances")
    p.add_argument("--capacity", type=int, default=100)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--item-limit", type=int, default=DEFAULT_ITEM_LIMIT)
    p.set_defaults(func=cmd_check_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "repeats", 1) < 1:
        print("error: --repeats must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
