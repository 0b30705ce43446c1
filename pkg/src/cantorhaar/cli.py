"""Command-line entry point.

Exit status is 0 on success or PASS, 1 when a check FAILs and 2 for usage or
input-format errors.  Rationals are always printed as ``p/q``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .clopen import ClopenSet, partition_atoms
from .errors import CantorHaarError, LevelTooLarge
from .groups import abelianize_tower, load_tower, validate_tower
from .iso import iso_point
from .measure import check_openmap, check_pushforward_interval, exhaustive_pushforward, haar_measure
from .radix import CoCompactPoint, RadixSystem, level_points, parse_digits, phi, phi_cocompact, psi_gap_embed
from .sampling import SamplerConfig, empirical_vs_exact, run_uniformity_test

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
STAIRCASE_LIMIT = 10**6


def fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _verdict(ok: bool, out) -> int:
    print("PASS" if ok else "FAIL", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def _load_set(args, system: RadixSystem) -> ClopenSet:
    if args.set:
        return ClopenSet.load(system, args.set)
    if args.lo is None or args.hi is None or args.level is None:
        raise CantorHaarError("give --set FILE or all of --lo, --hi, --level")
    return ClopenSet.from_cli(system, args.lo, args.hi, args.level)


def cmd_phi(args, out) -> int:
    system = RadixSystem.load(args.system)
    p = parse_digits(args.digits, system)
    value = phi_cocompact(CoCompactPoint(p)) if args.cocompact else phi(p)
    print(fmt(value), file=out)
    return EXIT_OK


def cmd_measure(args, out) -> int:
    system = RadixSystem.load(args.system)
    print(fmt(haar_measure(_load_set(args, system))), file=out)
    return EXIT_OK


def cmd_check_pushforward(args, out) -> int:
    system = RadixSystem.load(args.system)
    if args.exhaustive:
        levels = range(1, args.level + 1) if args.all_levels else [args.level]
        print("level\tpairs\tfailures\tbackend", file=out)
        ok = True
        for n in levels:
            rep = exhaustive_pushforward(system, n)
            print(f"{n}\t{rep.pairs}\t{rep.failures}\t{rep.backend}", file=out)
            if rep.first_failure:
                a, b = rep.first_failure
                print(f"first failure: a={a} b={b}", file=out)
            ok &= rep.passed
        return _verdict(ok, out)
    if args.a is None or args.b is None:
        raise CantorHaarError("give --exhaustive or both --a and --b")
    a, b = parse_digits(args.a, system), parse_digits(args.b, system)
    if a.level != args.level or b.level != args.level:
        raise CantorHaarError(f"--a/--b must have exactly {args.level} digits")
    rep = check_pushforward_interval(a, b)
    print("a\tb\thaar\tlebesgue", file=out)
    print(f"{a}\t{b}\t{fmt(rep.haar_value)}\t{fmt(rep.lebesgue_value)}", file=out)
    return _verdict(rep.equal, out)


def cmd_check_openmap(args, out) -> int:
    system = RadixSystem.load(args.system)
    rep = check_openmap(_load_set(args, system))
    print("haar\tlebesgue", file=out)
    print(f"{fmt(rep.haar_value)}\t{fmt(rep.lebesgue_value)}", file=out)
    if rep.witness is not None:
        print(f"witness: [{rep.witness.lo}, {rep.witness.hi}] at level {rep.witness.level}", file=out)
    return _verdict(rep.equal, out)


def cmd_partition(args, out) -> int:
    system = RadixSystem.load(args.system)
    gens = [ClopenSet.load(system, path) for path in args.set or []]
    atoms = partition_atoms(gens, system)
    for atom in atoms:
        print(json.dumps(atom.to_json(), separators=(",", ":")) + f"\t{fmt(haar_measure(atom))}", file=out)
    return EXIT_OK


def cmd_tower_validate(args, out) -> int:
    violation = validate_tower(load_tower(args.tower))
    if violation is None:
        print("OK", file=out)
        return EXIT_OK
    print(f"INVALID {violation}", file=out)
    return EXIT_FAIL


def cmd_tower_abelianize(args, out) -> int:
    tower = load_tower(args.tower)
    violation = validate_tower(tower)
    if violation is not None:
        raise CantorHaarError(f"invalid tower: {violation}")
    system = abelianize_tower(tower)
    if args.out:
        Path(args.out).write_text(json.dumps(system.to_json()) + "\n")
    print(system, file=out)
    return EXIT_OK


def cmd_iso(args, out) -> int:
    sys1, sys2 = RadixSystem.load(args.source), RadixSystem.load(args.target)
    x = parse_digits(args.digits, sys1)
    res = iso_point(x, sys1, sys2, args.precision)
    print("digits=" + ",".join(map(str, res.digits.digits)), file=out)
    status = res.status.value if res.terminated else f"{res.status.value}({res.consumed})"
    print(f"status={status}", file=out)
    if res.terminated:
        print(f"value={fmt(res.value_check)}", file=out)
    return EXIT_OK


def cmd_sample(args, out) -> int:
    system = RadixSystem.load(args.system)
    cfg = SamplerConfig(system, args.depth, args.n, args.seed)
    if args.set:
        rep = empirical_vs_exact(ClopenSet.load(system, args.set), cfg)
        print(f"frequency={fmt(rep.frequency)} exact={fmt(rep.exact)} "
              f"deviation={rep.deviation:.6g} bound={rep.bound:.6g} n={rep.n}", file=out)
    else:
        rep = run_uniformity_test(cfg, bias=args.bias)
        print(f"statistic={rep.statistic:.6g} critical={rep.critical_value:.6g} n={rep.n}", file=out)
    return _verdict(rep.passed, out)


def emit_staircase(system: RadixSystem, level: int) -> list[tuple[Fraction, Fraction]]:
    """``(psi(p), phi(p))`` for every ``p`` in C_level, in lex order."""
    if system.size(level) > STAIRCASE_LIMIT:
        raise LevelTooLarge(f"|C_{level}| = {system.size(level)} exceeds {STAIRCASE_LIMIT}")
    return [(psi_gap_embed(p), phi(p)) for p in level_points(system, level)]


def staircase_csv(rows: Sequence[tuple[Fraction, Fraction]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["psi", "phi", "psi_decimal", "phi_decimal"])
    for psi, ph in rows:
        w.writerow([fmt(psi), fmt(ph), f"{float(psi):.12f}", f"{float(ph):.12f}"])
    return buf.getvalue()


def cmd_staircase(args, out) -> int:
    text = staircase_csv(emit_staircase(RadixSystem.load(args.system), args.level))
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def _add_set_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--set", help="clopen set JSON file")
    p.add_argument("--lo", help="lower endpoint digits, e.g. 0,1")
    p.add_argument("--hi", help="upper endpoint digits, e.g. 0,2")
    p.add_argument("--level", type=int)


def _add_pushforward_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--system", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true", help="check every pair a < b at the level")
    p.add_argument("--all-levels", action="store_true", help="with --exhaustive, sweep levels 1..LEVEL")
    p.add_argument("--a", help="lower endpoint digits")
    p.add_argument("--b", help="upper endpoint digits")
    p.set_defaults(func=cmd_check_pushforward)


def _add_openmap_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--system", required=True)
    _add_set_flags(p)
    p.set_defaults(func=cmd_check_openmap)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cantorhaar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phi", help="evaluate phi on a digit string")
    p.add_argument("--system", required=True)
    p.add_argument("--digits", required=True)
    p.add_argument("--cocompact", action="store_true", help="evaluate at the co-compact partner")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("measure", help="exact Haar measure of a clopen set")
    p.add_argument("--system", required=True)
    _add_set_flags(p)
    p.set_defaults(func=cmd_measure)

    _add_pushforward_flags(sub.add_parser("check-pushforward", help="Haar vs Lebesgue on intervals"))
    _add_openmap_flags(sub.add_parser("check-openmap", help="Haar vs Lebesgue on a clopen set"))
    check = sub.add_parser("check", help="grouped form of the check-* commands")
    kinds = check.add_subparsers(dest="kind", required=True)
    _add_pushforward_flags(kinds.add_parser("pushforward"))
    _add_openmap_flags(kinds.add_parser("openmap"))

    p = sub.add_parser("partition", help="atoms of the Boolean algebra generated by sets")
    p.add_argument("--system", required=True)
    p.add_argument("--set", action="append", help="generator set JSON (repeatable)")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("tower-validate", help="validate a tower directory")
    p.add_argument("--tower", required=True)
    p.set_defaults(func=cmd_tower_validate)

    p = sub.add_parser("tower-abelianize", help="radix system of the abelian replacement")
    p.add_argument("--tower", required=True)
    p.add_argument("--out", help="write the radix system JSON here")
    p.set_defaults(func=cmd_tower_abelianize)

    p = sub.add_parser("iso", help="convert digits between radix systems")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--digits", required=True)
    p.add_argument("--precision", type=int, default=64)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("sample", help="Haar sampling: KS uniformity or set frequency")
    p.add_argument("--system", required=True)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--set", help="clopen set JSON; report membership frequency instead of KS")
    p.add_argument("--bias", type=float, help="control sampler: P(first digit = 0)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("staircase", help="emit (psi, phi) rows as CSV")
    p.add_argument("--system", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_staircase)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (CantorHaarError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
