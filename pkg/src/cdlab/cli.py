"""Command-line front end.

Exit codes: 0 when everything checked passes, 1 on a verification failure,
2 on bad input. Output is deterministic for fixed seed and flags.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from cdlab import chains, chords, report, simplicial
from cdlab.analytic import borsuk_ulam, scan, sections
from cdlab.analytic.trig import TrigPolynomial

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

fmt = report.fmt


class InputError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


def default_seed() -> int:
    raw = os.environ.get("CDLAB_SEED", "1")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"CDLAB_SEED must be an integer, got {raw!r}") from None


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- homology ----------------------------------------------------------------


def cmd_homology(args) -> int:
    try:
        c = chains.load_complex(args.path)
    except (OSError, chains.ChainError) as exc:
        raise InputError(str(exc)) from None
    problems = chains.validate(c)
    if args.json:
        out = {"name": c.name, "valid": not problems, "violations": [str(p) for p in problems]}
        if not problems:
            out["betti"] = chains.betti(c)
            out["euler_characteristic"] = chains.euler_characteristic(c)
        _emit(json.dumps(out, indent=2))
        return EXIT_OK if not problems else EXIT_INPUT
    if problems:
        _emit(f"invalid complex {c.name!r}:")
        for p in problems:
            _emit(f"  {p}")
        return EXIT_INPUT
    _emit(f"complex {c.name!r}: valid, cells per dimension {' '.join(map(str, c.counts()))}")
    _emit("betti: " + " ".join(str(b) for b in chains.betti(c)))
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.list:
        for st in report.REGISTRY:
            _emit(f"{st.statement_id}: {st.claim}")
        return EXIT_OK
    only = None
    if args.only:
        only = [x.strip() for x in args.only.split(",") if x.strip()]
        unknown = sorted(set(only) - set(report.registry_ids()))
        if unknown:
            raise InputError(f"unknown statement ids: {', '.join(unknown)}")
    settings = report.Settings(seed=args.seed)
    if args.quick:
        settings = report.Settings(
            seed=args.seed, bu_pairs=100, trivialization_pairs=100, gimel_points=20,
            rank_diagrams=100, scan_subspaces=2, scan_grid=12,
        )
    entries = report.verify_report(settings, only)
    _emit(report.render_json(entries) if args.json else report.render_text(entries))
    return EXIT_OK if all(e.status == report.PASS for e in entries) else EXIT_FAIL


# -- bu ----------------------------------------------------------------------

_TERM = re.compile(r"^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\*?(cos|sin)?(\d*)$")


def parse_trig(spec: str) -> TrigPolynomial:
    """Parse a trig polynomial.

    Accepts JSON (``{"a0": 0, "cos": [1], "sin": []}``), a path to such a
    JSON file, or a sum of terms like ``1 + 0.5*cos2 - sin``.
    """
    text = spec.strip()
    if text.startswith("{"):
        try:
            return TrigPolynomial.from_json(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"bad trig polynomial JSON: {exc}") from None
    if text.endswith(".json"):
        try:
            return TrigPolynomial.from_json(json.loads(Path(text).read_text()))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise InputError(f"cannot read trig polynomial from {text}: {exc}") from None
    compact = text.replace(" ", "")
    if not compact:
        raise InputError("empty trig polynomial")
    terms = [t for t in re.split(r"(?<![eE])(?=[+-])", compact) if t]
    a0, cos_c, sin_c = 0.0, {}, {}
    for term in terms:
        m = _TERM.match(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise InputError(f"cannot parse term {term!r} in {spec!r}")
        sign, coef_text, kind, k_text = m.groups()
        coef = float(coef_text) if coef_text else 1.0
        if sign == "-":
            coef = -coef
        if kind is None:
            if k_text:
                raise InputError(f"cannot parse term {term!r} in {spec!r}")
            a0 += coef
            continue
        k = int(k_text) if k_text else 1
        if k < 1:
            raise InputError(f"harmonic must be positive in {term!r}")
        target = cos_c if kind == "cos" else sin_c
        target[k] = target.get(k, 0.0) + coef
    n = max([0, *cos_c, *sin_c])
    return TrigPolynomial(a0, [cos_c.get(k, 0.0) for k in range(1, n + 1)], [sin_c.get(k, 0.0) for k in range(1, n + 1)])


def _bu_row(index: int, f: TrigPolynomial, g: TrigPolynomial) -> dict:
    res = borsuk_ulam.bu_roots(f, g)
    return {
        "pair": index,
        "parity": str(res.parity),
        "roots": [fmt(r.phi) for r in res.roots],
        "directions": [[fmt(r.direction.lam), fmt(r.direction.mu)] for r in res.roots],
        "reason": res.reason,
    }


def cmd_bu(args) -> int:
    if args.random is not None:
        if args.fspec or args.gspec:
            raise InputError("give either two function specs or --random, not both")
        if args.random < 1 or args.degree < 1:
            raise InputError("--random and --degree must be positive")
        rng = np.random.default_rng(args.seed)
        pairs = [borsuk_ulam.random_pair(rng, args.degree) for _ in range(args.random)]
    else:
        if not (args.fspec and args.gspec):
            raise InputError("need two function specs f and g, or --random N")
        pairs = [(parse_trig(args.fspec), parse_trig(args.gspec))]
    rows = [_bu_row(i, f, g) for i, (f, g) in enumerate(pairs)]
    counts = {str(p): sum(r["parity"] == str(p) for r in rows) for p in borsuk_ulam.Parity}
    if args.json:
        _emit(json.dumps({"rows": rows, "summary": counts}, indent=2))
    else:
        for r in rows:
            line = f"{r['pair']:4d} {r['parity']:10s} roots [{', '.join(r['roots'])}]"
            if r["directions"]:
                line += " directions [" + ", ".join(f"({a}, {b})" for a, b in r["directions"]) + "]"
            if r["reason"]:
                line += f" ({r['reason']})"
            _emit(line)
        _emit("summary: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
    return EXIT_FAIL if counts[str(borsuk_ulam.Parity.EVEN)] else EXIT_OK


# -- rank --------------------------------------------------------------------


def cmd_rank(args) -> int:
    try:
        d = chords.parse_diagram(args.diagram)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    p = chords.partition(d)
    if args.json:
        blocks = [[fmt(x.angle) for x in b] for b in p.blocks]
        _emit(json.dumps({"rank": chords.rank(d), "partition": blocks}, indent=2))
    else:
        _emit(f"rank: {chords.rank(d)}")
        _emit(f"partition: {p}")
    return EXIT_OK


# -- scan-f7 -----------------------------------------------------------------


def containment_rate(coarse: scan.ScanResult, fine: scan.ScanResult) -> float:
    """Fraction of coarse flagged cells within one fine step of a fine flagged cell."""
    if not coarse.flagged:
        return 1.0
    if fine.grid % coarse.grid:
        raise ValueError("fine grid must be a multiple of the coarse grid")
    ratio = fine.grid // coarse.grid
    n = fine.grid
    hits = 0
    for cell in coarse.flagged:
        centre = [i * ratio for i in cell]
        found = False
        for delta in np.ndindex(*(3,) * len(centre)):
            probe = tuple((c + d - 1) % n for c, d in zip(centre, delta))
            if probe in fine.flagged:
                found = True
                break
        hits += found
    return hits / len(coarse.flagged)


def cmd_scan_f7(args) -> int:
    if args.grid < 12:
        raise InputError("--grid must be at least 12")
    if args.tol < 0:
        raise InputError("--tol must be nonnegative")
    rng = np.random.default_rng(args.seed)
    space = scan.random_subspace(rng)
    result = scan.degeneracy_scan(space, args.grid, args.tol)
    lines = [
        f"seed {args.seed}: random 7-dimensional space of degree-3 maps to R^3",
        result.summary(),
        f"smallest relative sigma_6 on the grid: {fmt(result.min_grid_sigma)}",
    ]
    for i, comp in enumerate(sorted(result.components, key=lambda c: -c.size)[:5]):
        lines.append(f"component {i}: {comp.size} cells, grid spans {list(comp.spans)}")
    lines.append(
        "two-parameter proxy: a component spans >= 2 grid steps in >= 2 parameters "
        f"-> {'yes' if result.two_parameter else 'no'} (sampled extent, not a dimension proof)"
    )
    out = {
        "seed": args.seed,
        "grid": args.grid,
        "tol": args.tol,
        "flagged": len(result.flagged),
        "components": [{"size": c.size, "spans": list(c.spans)} for c in result.components],
        "two_parameter": result.two_parameter,
        "nonempty": result.nonempty,
    }
    if args.compare is not None:
        other = scan.degeneracy_scan(space, args.compare, args.tol)
        coarse, fine = (result, other) if args.grid < args.compare else (other, result)
        try:
            rate = containment_rate(coarse, fine)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        lines.append(
            f"containment: {fmt(rate)} of the {len(coarse.flagged)} flagged cells at grid {coarse.grid} "
            f"lie within one step of a flagged cell at grid {fine.grid}"
        )
        out["containment_rate"] = rate
    if args.tol == 0:
        verdict = "skipped"
        lines.append("nonempty flagged set: not checked (tol = 0 flags only exact zeros)")
    else:
        verdict = "pass" if result.nonempty else "fail"
        lines.append(f"nonempty flagged set: {verdict}")
    out["status"] = verdict
    _emit(json.dumps(out, indent=2) if args.json else "\n".join(lines))
    if args.tol == 0:
        return EXIT_OK
    return EXIT_OK if result.nonempty else EXIT_FAIL


# -- klein / monodromy -------------------------------------------------------


def cmd_klein(args) -> int:
    if args.n < 3:
        raise InputError("--n must be at least 3")
    k = simplicial.klein_bottle(args.n)
    t = simplicial.torus(args.n)
    w = simplicial.restricted_W(k)
    square = simplicial.cup_square_pairing(k, w)
    torus = [simplicial.cup_square_pairing(t, x) for x in simplicial.cohomology_basis_h1(t)]
    rows = {
        "klein_betti": k.complex.betti(),
        "W_on_u": w.pair(k.loop_u),
        "W_on_v": w.pair(k.loop_v),
        "W_squared": square,
        "torus_squares": torus,
        "sw_cube": simplicial.truncated_poly_cube([1, 1, 1], 3, 3),
        "sw_inverse_cube": simplicial.truncated_poly_cube([1, 1, 1], -3, 2),
    }
    if args.json:
        _emit(json.dumps(rows, indent=2))
    else:
        _emit(f"Klein bottle ({2 * args.n * args.n} triangles): betti {' '.join(map(str, rows['klein_betti']))}")
        _emit(f"W on u = {rows['W_on_u']}, W on v = {rows['W_on_v']}, <W^2, [K]> = {square}")
        _emit(f"torus control: squares of basis classes {torus}")
        _emit(f"(1+W+W^2)^3 = {rows['sw_cube']}, (1+W+W^2)^-3 = {rows['sw_inverse_cube']}")
    ok = (rows["W_on_u"], rows["W_on_v"], square) == (1, 0, 1) and not any(torus)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_monodromy(args) -> int:
    if args.steps < 4:
        raise InputError("--steps must be at least 4")
    out = {}
    for loop in sections.Loop:
        out[loop.value] = {
            "single": sections.monodromy_sign(loop, args.steps, 1),
            "doubled": sections.monodromy_sign(loop, args.steps, 2),
        }
    if args.json:
        _emit(json.dumps(out, indent=2))
    else:
        for name, v in out.items():
            _emit(f"{name}: {v['single']:+d} (doubled loop {v['doubled']:+d})")
    ok = all(v["single"] == -1 and v["doubled"] == 1 for v in out.values())
    return EXIT_OK if ok else EXIT_FAIL


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdlab", description="Chord-diagram complexes and their checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="validate a chain-complex JSON file and print mod 2 Betti numbers")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("verify", help="run the verification report")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--list", action="store_true", help="list statement ids without running")
    p.add_argument("--only", help="comma-separated statement ids")
    p.add_argument("--quick", action="store_true", help="smaller randomized suites")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bu", help="antipodal critical points of combinations of two functions")
    p.add_argument("fspec", nargs="?")
    p.add_argument("gspec", nargs="?")
    p.add_argument("--random", type=int, default=None, metavar="N")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bu)

    p = sub.add_parser("rank", help="rank and endpoint partition of a chord diagram")
    p.add_argument("diagram")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("scan-f7", help="degenerate chord pairs for a random 7-dimensional map space")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--grid", type=int, default=24)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--compare", type=int, default=None, metavar="GRID", help="also scan at GRID and report containment")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scan_f7)

    p = sub.add_parser("klein", help="cup square of W on the Klein bottle cycle")
    p.add_argument("--n", type=int, default=4, help="grid size of the triangulation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_klein)

    p = sub.add_parser("monodromy", help="orientation behaviour of the diameter frames")
    p.add_argument("--steps", type=int, default=64)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_monodromy)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
