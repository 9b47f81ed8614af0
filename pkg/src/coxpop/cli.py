"""Command line interface: ``coxpop <command> ...``.

Exit codes: 0 success, 1 a verification or cross-check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import pipelines as pl
from .classical import (
    AffineSymmetricGroup,
    HyperoctahedralGroup,
    SymmetricGroup,
    parse_element,
)
from .coxeter import CoxeterError, CoxeterGroup, CoxeterMatrix, reduced_word
from .dynamics import max_orbit, orbit
from .lattice import FiniteMeetSemilattice, InvalidLattice, lattice_compulsive_search, lattice_pop, max_pop_orbit
from .plans import enumerate_forbidden
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


# ----------------------------------------------------------------- groups


def make_group(kind: str, rank: int | None, m: int | None = None):
    """Resolve ``--type``/``--rank`` to a group model.

    ``A`` and ``B`` use one-line permutation models, ``Atilde`` uses window
    notation with ``rank + 1`` entries; everything else is the generic engine.
    """
    if kind.startswith("matrix:"):
        path = Path(kind[len("matrix:"):])
        try:
            return CoxeterGroup(CoxeterMatrix.from_json(path.read_text()))
        except OSError as e:
            raise UsageError(str(e)) from e
    if kind in ("A", "B", "D", "Atilde") and rank is None:
        raise UsageError(f"--type {kind} needs --rank")
    if kind == "A":
        return SymmetricGroup(rank + 1)
    if kind == "B":
        return HyperoctahedralGroup(rank)
    if kind == "Atilde":
        if rank < 1:
            raise UsageError("rank must be positive")
        return AffineSymmetricGroup(rank + 1)
    if kind == "D":
        return CoxeterGroup(f"D{rank}")
    if kind == "I2":
        if m is None:
            raise UsageError("--type I2 needs --m")
        return CoxeterGroup(f"I2({m})")
    return CoxeterGroup(kind)


def format_element(group, w) -> str:
    if hasattr(group, "format"):
        return group.format(w)
    word = reduced_word(w)
    return "".join(f"s{i}" for i in word) or "e"


# ---------------------------------------------------------------- commands


def cmd_orbit(args) -> int:
    G = make_group(args.type, args.rank, args.m)
    w = parse_element(args.element, G)
    rec = orbit(w, G)
    out = [format_element(G, x) for x in rec.elements]
    if args.json:
        print(json.dumps({"orbit": out, "size": rec.size}))
    else:
        print(" -> ".join(out))
        print(f"orbit size {rec.size}")
    return 0


def cmd_max_orbit(args) -> int:
    G = make_group(args.type, args.rank, args.m)
    if isinstance(G, AffineSymmetricGroup):
        raise UsageError("affine groups are infinite: orbit sizes are unbounded")
    size, witness = max_orbit(G)
    if args.json:
        print(json.dumps({"max_orbit": size, "witness": format_element(G, witness),
                          "coxeter_number": G.coxeter_number()}))
    else:
        print(size)
        print(f"witness {format_element(G, witness)}")
    return 0


def cmd_count(args) -> int:
    rep = pl.count(args.family, args.t, args.n_max, args.method)
    if args.json:
        print(json.dumps(rep.to_json()))
    elif args.csv:
        w = csv.writer(sys.stdout)
        w.writerow(["n", "brute", "automaton", "status"])
        for n in sorted(rep.merged()):
            w.writerow([n, rep.brute.get(n, ""), rep.automaton.get(n, ""),
                        "FAILED" if n in rep.mismatches else "OK"])
    else:
        print(f"{'n':>3} {'brute':>12} {'automaton':>12}")
        for n in sorted(rep.merged()):
            b = rep.brute.get(n, "-")
            a = rep.automaton.get(n, "-")
            flag = "  MISMATCH" if n in rep.mismatches else ""
            print(f"{n:>3} {b!s:>12} {a!s:>12}{flag}")
        for note in rep.notes:
            print(note)
        print(rep.status)
    return 0 if rep.ok else 1


def cmd_gf(args) -> int:
    gf, series = pl.generating_function(args.family, args.t, args.series_terms)
    n_terms = args.series_terms or len(series)
    if args.json:
        print(json.dumps({**gf.to_json(), "series": gf.expand(n_terms - 1)}))
    else:
        print(gf)
        print(json.dumps(gf.to_json()))
        print("series", " ".join(str(c) for c in gf.expand(n_terms - 1)))
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.seed)
    if args.json:
        print(json.dumps([r.to_json() for r in results], indent=1))
    else:
        for r in results:
            print(f"[{'PASS' if r.ok else 'FAIL'}] {r.suite} ({r.seconds:.2f} s)")
            for c in r.checks:
                print(f"    {'ok  ' if c.ok else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else ""))
    return 0 if all(r.ok for r in results) else 1


def cmd_lattice_pop(args) -> int:
    try:
        M = FiniteMeetSemilattice.from_json(Path(args.file).read_text())
    except OSError as e:
        raise UsageError(str(e)) from e
    table = {str(x): lattice_pop(M, x) for x in M.elements}
    data = {"pop": table, "max_pop_orbit": max_pop_orbit(M)}
    if args.search_compulsive:
        hit = lattice_compulsive_search(M)
        data["compulsive"] = None if hit is None else {
            "map": {str(x): y for x, y in hit[0].items()}, "max_orbit": hit[1]}
    if args.json:
        print(json.dumps(data))
    else:
        for x, y in table.items():
            print(f"Pop({x}) = {y}")
        print(f"max Pop orbit {data['max_pop_orbit']}")
        if args.search_compulsive:
            c = data["compulsive"]
            if c is None:
                print("no compulsive map beats Pop")
            else:
                print(f"compulsive map with orbit {c['max_orbit']}: {c['map']}")
    return 0


def cmd_forbidden(args) -> int:
    cat = enumerate_forbidden(args.t, args.l_max)
    if args.calibrate is not None:
        pl.calibrate(cat, args.calibrate)
    if args.out:
        Path(args.out).write_text(json.dumps(cat.to_json(), indent=1))
    if args.json:
        print(json.dumps(cat.to_json()))
    else:
        print(f"t={cat.t}: {len(cat.segments)} minimal forbidden segments, K'={cat.k_prime}")
        if not args.out:
            for s in cat.to_json()["segments"]:
                print(s)
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxpop", description="Pop-stack sorting on Coxeter groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def group_args(sp):
        sp.add_argument("--type", required=True,
                        help="A, B, D, H3, F4, I2, Atilde, any preset name, or matrix:<file>")
        sp.add_argument("--rank", type=int)
        sp.add_argument("--m", type=int, help="edge label for I2")
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("orbit", help="forward Pop orbit of one element")
    group_args(sp)
    sp.add_argument("--element", required=True, help="one-line, reduced word (s1s2 or 1,2) or window JSON")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("max-orbit", help="largest Pop orbit in a finite group")
    group_args(sp)
    sp.set_defaults(func=cmd_max_orbit)

    sp = sub.add_parser("count", help="count t-pop-stack-sortable elements")
    sp.add_argument("--family", choices=["A", "B", "Atilde"], required=True)
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--method", choices=["brute", "automaton", "both"], default="both")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("gf", help="rational generating function of the counts")
    sp.add_argument("--family", choices=["A", "B", "Atilde"], required=True)
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("--series-terms", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gf)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("lattice-pop", help="Pop on a finite meet-semilattice")
    sp.add_argument("--file", required=True)
    sp.add_argument("--search-compulsive", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_lattice_pop)

    sp = sub.add_parser("forbidden", help="catalog of minimal forbidden segments")
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("--l-max", type=int, required=True)
    sp.add_argument("--out")
    sp.add_argument("--calibrate", type=int, metavar="N", help="check type-A counts up to N")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_forbidden)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except pl.CalibrationFailed as e:
        print(f"coxpop: {e}", file=sys.stderr)
        return 1
    except (UsageError, CoxeterError, InvalidLattice, ValueError, KeyError) as e:
        print(f"coxpop: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
