"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Random inputs come from PCG64 streams seeded by ``(SEED, criterion number)``.
"""

from __future__ import annotations

import math

import numpy as np

from cdlab import chains, chords, simplicial
from cdlab.analytic import borsuk_ulam, scan, sections
from cdlab.analytic.borsuk_ulam import Parity
from cdlab.analytic.trig import TrigPolynomial, cos
from cdlab.chords import INF, Chord, Projective
from cdlab.complexes import cd1_complex, cd2_complex

SEED = 1


def stream(criterion: int) -> np.random.Generator:
    return np.random.default_rng([SEED, criterion])


def test_c01_cd2_boundary_squares_to_zero(record):
    c = cd2_complex().complex
    problems = chains.validate(c)
    high = [x for k in (3, 4) for x in c.cells_of(k)]
    # independent recomputation of d o d for every cell of dimension >= 2
    nonzero = []
    for k in range(2, c.top_dim + 1):
        for cell in c.cells_of(k):
            acc = set()
            for face in c.boundary_of(cell):
                acc ^= set(c.boundary_of(face))
            if acc:
                nonzero.append(cell)
    ok = not problems and not nonzero and len(high) == 12
    record(1, ok, f"d o d = 0 on the 12 cells of dimension 3, 4 and on all {sum(c.counts()[2:])} of dimension >= 2")
    assert ok


def test_c02_cd2_betti(record):
    c = cd2_complex().complex
    b = chains.betti(c)
    brute = chains.betti_bruteforce(c)
    ok = b == brute == [1, 1, 1, 1, 0]
    record(2, ok, f"betti {b} (brute force {brute})")
    assert ok


def test_c03_cd1(record):
    bundle = cd1_complex()
    c = bundle.complex
    b = chains.betti(c)
    basis = chains.homology_basis(c, 1)
    ok = b == [1, 1, 0] and len(basis) == 1 and chains.homologous(c, basis[0], bundle.distinguished_chains["L_cd1"])
    record(3, ok, f"betti {b}; H1 generated by {basis[0] if basis else None}")
    assert ok


def test_c04_cd2_generators(record):
    bundle = cd2_complex()
    c, named = bundle.complex, bundle.distinguished_chains
    gamma, theta = named["Gamma_inf"], named["Theta_inf"]
    e_sum = named["e_inf_sum"]
    checks = {
        "d(c_inf) = Gamma_inf + Theta_inf": c.boundary_chain(named["c_inf"]) == gamma + theta,
        "Gamma_inf ~ Theta_inf": chains.homologous(c, gamma, theta),
        "Gamma_inf not a boundary": not chains.is_boundary(c, gamma),
        "C_inf cycle, not a boundary": chains.is_cycle(c, named["C_inf"]) and not chains.is_boundary(c, named["C_inf"]),
        "H3 rank 1": chains.betti(c)[3] == 1,
        "e+ + e- cycle, not a boundary": chains.is_cycle(c, e_sum) and not chains.is_boundary(c, e_sum),
        "H2 rank 1": chains.betti(c)[2] == 1,
    }
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    record(4, ok, "all generator checks hold" if ok else f"failed: {failed}")
    assert ok


def test_c05_klein_cup_square(record):
    k = simplicial.klein_bottle()
    w = simplicial.restricted_W(k)
    pairs = (w.pair(k.loop_u), w.pair(k.loop_v))
    square = simplicial.cup_square_pairing(k, w)
    t = simplicial.torus()
    torus = [simplicial.cup_square_pairing(t, x) for x in simplicial.cohomology_basis_h1(t)]
    ok = pairs == (1, 0) and square == 1 and torus == [0, 0]
    record(5, ok, f"W pairs {pairs} with (u, v); <W^2,[K]> = {square}; torus squares {torus}")
    assert ok


def test_c06_polynomial_identities(record):
    cube = simplicial.truncated_poly_cube([1, 1, 1], 3, 3)
    inverse = simplicial.truncated_poly_cube([1, 1, 1], -3, 2)
    ok = cube == [1, 1, 0, 1] and inverse == [1, 1, 1]
    record(6, ok, f"(1+W+W^2)^3 = {cube}, (1+W+W^2)^-3 = {inverse}")
    assert ok


def test_c07_bu_parity(record):
    rng = stream(7)
    counts = {p: 0 for p in Parity}
    for _ in range(1000):
        counts[borsuk_ulam.bu_parity(*borsuk_ulam.random_pair(rng, 4))] += 1
    roots = [r.phi for r in borsuk_ulam.bu_roots(cos(), TrigPolynomial.sin_k(2)).roots]
    expected = [0.0, math.pi / 4, 3 * math.pi / 4]
    roots_ok = len(roots) == 3 and max(abs(a - b) for a, b in zip(roots, expected)) <= 1e-8
    ok = counts[Parity.ODD] >= 950 and counts[Parity.EVEN] == 0 and roots_ok
    record(
        7, ok,
        f"Odd {counts[Parity.ODD]}, Degenerate {counts[Parity.DEGENERATE]}, Even {counts[Parity.EVEN]} of 1000; "
        f"(cos, sin 2phi) roots {[f'{r:.9g}' for r in roots]}",
    )
    assert ok


def test_c08_section_zero(record):
    z = sections.section_zeros_on_klein_cycle(cos())
    ok = (
        not z.degenerate
        and len(z.zeros) == 1
        and abs(z.zeros[0][0] - math.pi / 2) <= 1e-8
        and abs(z.zeros[0][1].value() + 1) <= 1e-8
    )
    record(8, ok, f"zeros {[(f'{p:.9g}', f'{a.value():.9g}') for p, a in z.zeros]}")
    assert ok


def test_c09_monodromy(record):
    signs = {}
    for loop in sections.Loop:
        for steps in (64, 100, 257, 1000):
            signs[(loop.value, steps)] = (
                sections.monodromy_sign(loop, steps, 1),
                sections.monodromy_sign(loop, steps, 2),
            )
    ok = all(v == (-1, 1) for v in signs.values())
    record(9, ok, "single loops -1, doubled loops +1 for steps 64, 100, 257, 1000" if ok else str(signs))
    assert ok


def test_c10_degree_one_trivialization(record):
    rng = stream(10)
    smallest = math.inf
    n = 0
    while n < 1000:
        a, b, c = np.sort(rng.uniform(0.0, 2 * math.pi, 3))
        if min(a, b - a, c - b, 2 * math.pi - c) < 1e-3:
            continue
        pair = (Chord(0.0, b), Chord(a, c))
        assert chords.crossing(*pair)
        smallest = min(smallest, sections.fourier1_trivialization_check(pair, marked_point_on_first=True))
        n += 1
    largest_mirror = 0.0
    for _ in range(200):
        axis = rng.uniform(0.0, 2 * math.pi)
        s, t = rng.uniform(0.05, 1.5), rng.uniform(1.6, math.pi - 0.05)
        pair = (Chord(axis + s, axis - s), Chord(axis + t, axis - t))
        assert not chords.crossing(*pair)
        largest_mirror = max(largest_mirror, sections.fourier1_trivialization_check(pair))
    ok = smallest > 0 and largest_mirror <= 1e-10
    record(10, ok, f"min |det| on 1000 crossing pairs {smallest:.9g}; max on 200 mirror pairs {largest_mirror:.9g}")
    assert ok


def _chord_distance(x: Chord, y: Chord) -> float:
    d = chords.circle_distance
    return min(
        max(d(x.a.angle, y.a.angle), d(x.b.angle, y.b.angle)),
        max(d(x.a.angle, y.b.angle), d(x.b.angle, y.a.angle)),
    )


def _pair_distance(x, y) -> float:
    return min(
        max(_chord_distance(x[0], y[0]), _chord_distance(x[1], y[1])),
        max(_chord_distance(x[0], y[1]), _chord_distance(x[1], y[0])),
    )


def test_c11_gimel_resolution(record):
    rng = stream(11)
    eps = 0.1
    alphas = [Projective.of(a) for a in (0.0, 1e-3, -1e-3, 0.5, -0.5, 1.0, -1.0, 3.0, -3.0, 1e3, -1e3)] + [INF]
    distinct = invariant = True
    jump = 0.0
    for _ in range(200):
        phi = rng.uniform(0.0, 2 * math.pi)
        for alpha in alphas:
            pair = chords.chords_for_gimel(phi, alpha, eps)
            distinct &= not pair[0] == pair[1]
            invariant &= chords.same_chord_pair(pair, chords.chords_for_gimel(phi + math.pi, alpha.inverse(), eps))
        for tiny in (1e-10, 1e-13):
            at_zero = chords.chords_for_gimel(phi, 0.0, eps)
            jump = max(jump, _pair_distance(at_zero, chords.chords_for_gimel(phi, tiny, eps)))
            jump = max(jump, _pair_distance(at_zero, chords.chords_for_gimel(phi, -tiny, eps)))
            at_inf = chords.chords_for_gimel(phi, INF, eps)
            jump = max(jump, _pair_distance(at_inf, chords.chords_for_gimel(phi, Projective(1.0, tiny), eps)))
            jump = max(jump, _pair_distance(at_inf, chords.chords_for_gimel(phi, Projective(1.0, -tiny), eps)))
    ok = distinct and invariant and jump <= 1e-9
    record(11, ok, f"distinct {distinct}, (phi, alpha) ~ (phi + pi, 1/alpha) {invariant}, max jump at 0/inf {jump:.9g}")
    assert ok


def test_c12_rank_oracle(record):
    rng = stream(12)
    mismatches = 0
    for _ in range(500):
        d = chords.random_diagram(rng, max_chords=6, max_points=8)
        assert len(d) <= 6 and len({round(float(p), 9) for p in d.endpoints()}) <= 8
        mismatches += chords.rank(d) != chords.numeric_rank(d, rng)
    ok = mismatches == 0
    record(12, ok, f"{mismatches} mismatches in 500 diagrams")
    assert ok


def test_c13_f7_degeneracy(record):
    rng = stream(13)
    nonempty = extended = 0
    sizes = []
    for _ in range(20):
        r = scan.degeneracy_scan(scan.random_subspace(rng), grid=24)
        nonempty += r.nonempty
        extended += r.two_parameter
        sizes.append(len(r.flagged))
    ok = nonempty == 20 and extended >= 18
    record(
        13, ok,
        f"nonempty {nonempty}/20; component spanning >= 2 steps in >= 2 parameters {extended}/20 "
        f"(grid-extent proxy, not a dimension proof); flagged cells {min(sizes)}..{max(sizes)}",
    )
    assert ok
