"""The verification report: one entry per checked statement, in registry order.

Every check draws its random numbers from its own PCG64 stream seeded by
``(seed, position in the registry)``, so adding or skipping a check never
shifts another check's inputs.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from cdlab import chains, chords, f2, simplicial
from cdlab.analytic import borsuk_ulam, scan, sections
from cdlab.analytic.trig import TrigPolynomial, cos
from cdlab.complexes import NamedComplexBundle, cd1_complex, cd2_complex, load_fixture

PASS = "pass"
FAIL = "fail"
DEGENERATE = "degenerate"


def fmt(x: float) -> str:
    """Floats in reports carry 9 significant digits."""
    return f"{x:.9g}"


@dataclass(frozen=True)
class ReportEntry:
    statement_id: str
    status: str
    detail: str

    def line(self) -> str:
        return f"[{self.status.upper():4}] {self.statement_id}: {self.detail}"


@dataclass
class Settings:
    """Sizes of the randomized suites; the defaults are the acceptance sizes."""

    seed: int = 1
    bu_pairs: int = 1000
    bu_degree: int = 4
    trivialization_pairs: int = 1000
    gimel_points: int = 100
    rank_diagrams: int = 500
    scan_subspaces: int = 20
    scan_grid: int = 24
    scan_tol: float = 1e-6
    cd2: Optional[NamedComplexBundle] = field(default=None, repr=False)


@dataclass(frozen=True)
class Statement:
    statement_id: str
    claim: str
    run: Callable[[Settings, np.random.Generator], tuple[str, str]]


def rng_for(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64([seed, index]))


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def _cd2(s: Settings) -> NamedComplexBundle:
    return s.cd2 if s.cd2 is not None else cd2_complex()


# -- chain level -------------------------------------------------------------


def check_cd2_boundary(s: Settings, rng) -> tuple[str, str]:
    c = _cd2(s).complex
    problems = chains.validate(c)
    if problems:
        return FAIL, "; ".join(str(p) for p in problems)
    high = sum(len(c.cells_of(k)) for k in range(3, c.top_dim + 1))
    top = sum(len(c.cells_of(k)) for k in range(2, c.top_dim + 1))
    return PASS, f"d o d = 0 on the {high} cells of dimension >= 3 and on all {top} of dimension >= 2"


def check_cd2_counts(s: Settings, rng) -> tuple[str, str]:
    c = _cd2(s).complex
    counts = c.counts()
    ranks = chains.boundary_ranks(c)[1:]
    ok = counts == [1, 5, 10, 9, 3] and ranks == [0, 4, 5, 3, 0]
    return _verdict(ok), f"cells per dimension {counts}; ranks of d1..d4 {ranks[:4]}"


def check_cd2_betti(s: Settings, rng) -> tuple[str, str]:
    c = _cd2(s).complex
    try:
        b = chains.betti(c)
    except chains.ChainError as exc:
        return FAIL, str(exc)
    chi = chains.euler_characteristic(c)
    alt = sum((-1) ** k * x for k, x in enumerate(b))
    ok = b == [1, 1, 1, 1, 0] and chi == alt == 0
    return _verdict(ok), f"betti {b}; euler characteristic {chi}"


def check_cd2_generators(s: Settings, rng) -> tuple[str, str]:
    bundle = _cd2(s)
    c, named = bundle.complex, bundle.distinguished_chains
    try:
        pre = c.boundary_chain(named["c_inf"])
        h3 = chains.homology_basis(c, 3)
        h2 = chains.homology_basis(c, 2)
        h1 = chains.homology_basis(c, 1)
        e_sum = named["e_inf_sum"]
        ok = (
            pre == named["Gamma_inf"] + named["Theta_inf"]
            and chains.homologous(c, named["Gamma_inf"], named["Theta_inf"])
            and len(h3) == 1
            and chains.homologous(c, h3[0], named["C_inf"])
            and not chains.is_boundary(c, named["C_inf"])
            and len(h2) == 1
            and chains.is_cycle(c, e_sum)
            and not chains.is_boundary(c, e_sum)
            and chains.homologous(c, h2[0], e_sum)
            and len(h1) == 1
            and chains.homologous(c, h1[0], named["Gamma_inf"])
        )
    except chains.ChainError as exc:
        return FAIL, str(exc)
    return _verdict(ok), (
        f"d(c_inf) = {pre}; H3 generated by C_inf; "
        f"H2 generated by ep_inf + em_inf (not a boundary); H1 generated by Gamma_inf"
    )


def check_cd1(s: Settings, rng) -> tuple[str, str]:
    bundle = cd1_complex()
    c = bundle.complex
    b = chains.betti(c)
    basis = chains.homology_basis(c, 1)
    ok = (
        not chains.validate(c)
        and b == [1, 1, 0]
        and len(basis) == 1
        and chains.homologous(c, basis[0], bundle.distinguished_chains["L_cd1"])
    )
    return _verdict(ok), f"betti {b}; H1 generated by the chord through the marked point (cell L)"


def check_fixtures(s: Settings, rng) -> tuple[str, str]:
    same = []
    for name, bundle in (("cd1", cd1_complex()), ("cd2", cd2_complex())):
        loaded = load_fixture(name)
        same.append(chains.complex_to_json(loaded) == chains.complex_to_json(bundle.complex))
    return _verdict(all(same)), "cd1.json and cd2.json match the compiled-in tables"


# -- cup products ------------------------------------------------------------


def check_klein_cup(s: Settings, rng) -> tuple[str, str]:
    k = simplicial.klein_bottle()
    w = simplicial.restricted_W(k)
    on_u, on_v = w.pair(k.loop_u), w.pair(k.loop_v)
    square = simplicial.cup_square_pairing(k, w)
    t = simplicial.torus()
    torus_squares = [simplicial.cup_square_pairing(t, x) for x in simplicial.cohomology_basis_h1(t)]
    torus_squares.append(simplicial.cup_square_pairing(t, simplicial.solve_cocycle(t, 1, 1)))
    ok = (on_u, on_v, square) == (1, 0, 1) and not any(torus_squares) and k.complex.betti() == [1, 2, 1]
    return _verdict(ok), (
        f"W restricted to the Klein bottle pairs {on_u} with u and {on_v} with v; "
        f"<W^2, [K]> = {square}; torus control squares {torus_squares}"
    )


def check_poly_identities(s: Settings, rng) -> tuple[str, str]:
    cube = simplicial.truncated_poly_cube([1, 1, 1], 3, 3)
    inv = simplicial.truncated_poly_cube([1, 1, 1], -3, 2)
    ok = cube == [1, 1, 0, 1] and inv == [1, 1, 1]
    return _verdict(ok), f"(1+W+W^2)^3 = {cube} through W^3; (1+W+W^2)^-3 = {inv} through W^2"


# -- analytic ----------------------------------------------------------------


def check_bu(s: Settings, rng) -> tuple[str, str]:
    counts = {p: 0 for p in borsuk_ulam.Parity}
    for _ in range(s.bu_pairs):
        f, g = borsuk_ulam.random_pair(rng, s.bu_degree)
        counts[borsuk_ulam.bu_parity(f, g)] += 1
    known = borsuk_ulam.bu_roots(cos(), TrigPolynomial.sin_k(2))
    expected = [0.0, math.pi / 4, 3 * math.pi / 4]
    roots = [r.phi for r in known.roots]
    known_ok = len(roots) == 3 and all(abs(a - b) <= 1e-8 for a, b in zip(roots, expected))
    odd = counts[borsuk_ulam.Parity.ODD]
    ok = counts[borsuk_ulam.Parity.EVEN] == 0 and odd >= math.ceil(0.95 * s.bu_pairs) and known_ok
    return _verdict(ok), (
        f"{odd} odd, {counts[borsuk_ulam.Parity.DEGENERATE]} degenerate, "
        f"{counts[borsuk_ulam.Parity.EVEN]} even of {s.bu_pairs} random pairs; "
        f"(cos, sin 2phi) roots {[fmt(r) for r in roots]}"
    )


def check_section_zero(s: Settings, rng) -> tuple[str, str]:
    z = sections.section_zeros_on_klein_cycle(cos())
    if z.degenerate:
        return DEGENERATE, z.reason
    ok = len(z.zeros) == 1 and abs(z.zeros[0][0] - math.pi / 2) <= 1e-8 and abs(z.zeros[0][1].value() + 1) <= 1e-8
    shown = [(fmt(p), fmt(a.value())) for p, a in z.zeros]
    return _verdict(ok), f"the cos section vanishes only at (phi, alpha) = {shown}"


def check_monodromy(s: Settings, rng) -> tuple[str, str]:
    results = {}
    for loop in sections.Loop:
        for steps in (64, 128, 256):
            results[(loop.value, steps, 1)] = sections.monodromy_sign(loop, steps, 1)
            results[(loop.value, steps, 2)] = sections.monodromy_sign(loop, steps, 2)
    ok = all(v == (-1 if turns == 1 else 1) for (_, _, turns), v in results.items())
    return _verdict(ok), (
        f"diameter frame {results[('cd1-diameters', 64, 1)]:+d}, two-point derivative frame "
        f"{results[('gamma-inf-frame', 64, 1)]:+d}, doubled loops +1, for 64/128/256 steps"
    )


def random_crossing_pair(rng, marked: float = 0.0, gap: float = 1e-3) -> tuple[chords.Chord, chords.Chord]:
    """A chord through ``marked`` and a second chord crossing it."""
    while True:
        a = rng.uniform(0.0, chords.TWO_PI)
        b = rng.uniform(0.0, a)
        c = rng.uniform(a, chords.TWO_PI)
        pts = sorted([0.0, a, b, c])
        if min(np.diff(pts + [chords.TWO_PI])) > gap:
            first = chords.Chord(marked, marked + a)
            second = chords.Chord(marked + b, marked + c)
            return first, second


def mirror_pair(rng) -> tuple[chords.Chord, chords.Chord]:
    """Two nested chords symmetric about a common diameter."""
    axis = rng.uniform(0.0, chords.TWO_PI)
    s, t = sorted(rng.uniform(0.05, math.pi - 0.05, 2))
    if t - s < 1e-3:
        t = s + 0.01
    return chords.Chord(axis + s, axis - s), chords.Chord(axis + t, axis - t)


def check_trivialization(s: Settings, rng) -> tuple[str, str]:
    smallest = math.inf
    for _ in range(s.trivialization_pairs):
        pair = random_crossing_pair(rng)
        if not chords.crossing(*pair):
            return FAIL, "generator produced a non-crossing pair"
        smallest = min(smallest, sections.fourier1_trivialization_check(pair, marked_point_on_first=True))
    largest_mirror = 0.0
    for _ in range(100):
        pair = mirror_pair(rng)
        largest_mirror = max(largest_mirror, sections.fourier1_trivialization_check(pair))
    known = sections.fourier1_trivialization_check(
        (chords.Chord(0.0, math.pi), chords.Chord(math.pi / 2, 3 * math.pi / 2))
    )
    ok = smallest > 0 and largest_mirror <= 1e-10 and abs(known - 4.0) <= 1e-12
    return _verdict(ok), (
        f"min |det| over {s.trivialization_pairs} crossing pairs {fmt(smallest)}; "
        f"max |det| over mirror pairs {fmt(largest_mirror)}"
    )


def check_gimel_resolution(s: Settings, rng) -> tuple[str, str]:
    alphas = [chords.Projective.of(a) for a in (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0)] + [chords.INF]
    eps = 0.1
    worst_jump = 0.0
    for _ in range(s.gimel_points):
        phi = rng.uniform(0.0, chords.TWO_PI)
        for alpha in alphas:
            pair = chords.chords_for_gimel(phi, alpha, eps)
            if pair[0] == pair[1]:
                return FAIL, f"chords coincide at phi={fmt(phi)}, alpha={alpha}"
            twin = chords.chords_for_gimel(phi + math.pi, alpha.inverse(), eps)
            if not chords.same_chord_pair(pair, twin):
                return FAIL, f"(phi, alpha) and (phi + pi, 1/alpha) disagree at phi={fmt(phi)}"
        # one-sided limits at alpha = 0 and alpha = inf
        for centre, near in ((chords.Projective(0.0, 1.0), 1e-12), (chords.INF, 1e-12)):
            left = chords.chords_for_gimel(phi, _nudge(centre, -near), eps)
            right = chords.chords_for_gimel(phi, _nudge(centre, near), eps)
            worst_jump = max(worst_jump, _pair_distance(left, right))
    ok = worst_jump <= 1e-9
    return _verdict(ok), (
        f"{s.gimel_points} points x {len(alphas)} parameters: distinct, symmetric under "
        f"(phi, alpha) -> (phi + pi, 1/alpha); largest jump across alpha = 0, inf: {fmt(worst_jump)}"
    )


def _nudge(alpha: chords.Projective, delta: float) -> chords.Projective:
    if alpha.is_infinite:
        return chords.Projective(1.0, delta)
    return chords.Projective(alpha.value() + delta, 1.0)


def _chord_distance(x: chords.Chord, y: chords.Chord) -> float:
    d = chords.circle_distance
    xa, xb, ya, yb = x.a.angle, x.b.angle, y.a.angle, y.b.angle
    return min(max(d(xa, ya), d(xb, yb)), max(d(xa, yb), d(xb, ya)))


def _pair_distance(x, y) -> float:
    """Distance between unordered chord pairs, minimized over both matchings."""
    straight = max(_chord_distance(x[0], y[0]), _chord_distance(x[1], y[1]))
    crossed = max(_chord_distance(x[0], y[1]), _chord_distance(x[1], y[0]))
    return min(straight, crossed)


def check_rank_oracle(s: Settings, rng) -> tuple[str, str]:
    mismatches = 0
    for _ in range(s.rank_diagrams):
        d = chords.random_diagram(rng)
        if chords.rank(d) != chords.numeric_rank(d, rng):
            mismatches += 1
    ex = chords.ChordDiagram([(0.5, 1.5), (1.5, 2.5)])
    tri = chords.ChordDiagram([(0.5, 1.5), (1.5, 2.5), (0.5, 2.5)])
    ok = mismatches == 0 and chords.rank(ex) == 2 and chords.rank(tri) == 2
    return _verdict(ok), f"{mismatches} mismatches between union-find and numeric rank on {s.rank_diagrams} diagrams"


def check_f7_scan(s: Settings, rng) -> tuple[str, str]:
    nonempty = 0
    extended = 0
    sizes = []
    for _ in range(s.scan_subspaces):
        space = scan.random_subspace(rng)
        r = scan.degeneracy_scan(space, s.scan_grid, s.scan_tol)
        nonempty += r.nonempty
        extended += r.two_parameter
        sizes.append(len(r.flagged))
    need = s.scan_subspaces - (s.scan_subspaces // 10)
    ok = nonempty == s.scan_subspaces and extended >= need
    return _verdict(ok), (
        f"flagged sets nonempty in {nonempty}/{s.scan_subspaces} random spaces; a component spans >= 2 grid "
        f"steps in >= 2 parameters in {extended} (grid-extent proxy for a 2-parameter family, not a dimension proof); "
        f"flagged cell counts {min(sizes, default=0)}..{max(sizes, default=0)}"
    )


REGISTRY: tuple[Statement, ...] = (
    Statement("cd2.boundary", "the tabulated boundary operators of CD2-bar satisfy d o d = 0", check_cd2_boundary),
    Statement("cd2.cells", "CD2-bar has 1, 5, 10, 9, 3 cells in dimensions 0..4", check_cd2_counts),
    Statement("cd2.betti", "mod 2 homology of CD2-bar is Z2 in dimensions 0-3 and 0 above", check_cd2_betti),
    Statement(
        "cd2.generators",
        "H3, H2, H1 of CD2-bar are generated by C_inf, e+_inf + e-_inf, and Gamma_inf ~ Theta_inf",
        check_cd2_generators,
    ),
    Statement("cd1.betti", "CD1-bar has H2 = 0 and H1 generated by the chord through the marked point", check_cd1),
    Statement("fixtures.agree", "the JSON fixtures reproduce the compiled-in cell tables", check_fixtures),
    Statement("klein.cup_square", "W restricted to the Klein bottle cycle has nonzero square", check_klein_cup),
    Statement("sw.polynomials", "(1+W+W^2)^3 = 1+W+W^3 and (1+W+W^2)^-3 = 1+W+W^2 mod 2", check_poly_identities),
    Statement(
        "bu.parity",
        "a generic pair has an odd number of combinations with derivative vanishing at antipodes",
        check_bu,
    ),
    Statement("klein.section_zero", "the cos section meets the zero section once, at alpha = -1", check_section_zero),
    Statement("sw.monodromy", "both diameter frames reverse orientation after a half turn", check_monodromy),
    Statement(
        "sw.trivialization",
        "no nonzero degree-one function is constant on two crossing chords",
        check_trivialization,
    ),
    Statement(
        "cd2.regular_cycle",
        "the two-chord resolution of the Klein bottle cycle is well defined and continuous",
        check_gimel_resolution,
    ),
    Statement("chords.rank", "diagram rank equals #endpoints - #components", check_rank_oracle),
    Statement(
        "f7.degeneracy",
        "every 7-dimensional space of maps to R^3 has a 2-parameter family of degenerate chord pairs",
        check_f7_scan,
    ),
)


def registry_ids() -> list[str]:
    return [st.statement_id for st in REGISTRY]


def verify_report(settings: Optional[Settings] = None, only: Optional[list[str]] = None) -> list[ReportEntry]:
    settings = settings or Settings()
    out = []
    for index, st in enumerate(REGISTRY):
        if only is not None and st.statement_id not in only:
            continue
        try:
            status, detail = st.run(settings, rng_for(settings.seed, index))
        except Exception as exc:  # a crashing check is a failed check
            status, detail = FAIL, f"{type(exc).__name__}: {exc}"
        out.append(ReportEntry(st.statement_id, status, f"{st.claim} -- {detail}"))
    return out


def render_text(entries: list[ReportEntry]) -> str:
    lines = [e.line() for e in entries]
    passed = sum(e.status == PASS for e in entries)
    lines.append(f"{passed}/{len(entries)} statements pass")
    return "\n".join(lines) + "\n"


def render_json(entries: list[ReportEntry]) -> str:
    return json.dumps([asdict(e) for e in entries], indent=2) + "\n"


def corrupted_cd2(cell: str = "A", drop: str = "a") -> NamedComplexBundle:
    """CD2-bar with one boundary term removed, for fault-injection checks."""
    bundle = cd2_complex()
    faces = set(bundle.complex.boundary_of(cell)) - {drop}
    return NamedComplexBundle(bundle.complex.with_boundary(cell, faces), bundle.distinguished_chains)
