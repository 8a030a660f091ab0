"""Sections and frames of the canonical normal bundle along the diameter cycles."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from cdlab.analytic.roots import antiperiodic_roots
from cdlab.analytic.trig import TrigPolynomial
from cdlab.chords import Chord, Projective, circle_distance

TWO_PI = 2.0 * math.pi


@dataclass
class SectionZeros:
    """Points ``gimel(phi, phi + pi; alpha)`` of the Klein-bottle cycle containing ``f``."""

    zeros: list[tuple[float, Projective]] = field(default_factory=list)
    degenerate: bool = False
    reason: str = ""


def diameter_difference(f: TrigPolynomial) -> TrigPolynomial:
    """``phi -> f(phi + pi) - f(phi)``, antiperiodic by construction."""
    return f.shifted_by_pi() - f


def section_zeros_on_klein_cycle(f: TrigPolynomial, grid: int = 256, tol: float = 1e-12) -> SectionZeros:
    d = diameter_difference(f)
    scale = max(f.norm(), 1.0)
    if d.norm() <= 1e-12 * scale:
        return SectionZeros(degenerate=True, reason="f(phi) = f(phi + pi) for every phi")
    scan = antiperiodic_roots(d, grid, tol, zero_threshold=tol * scale)
    if scan.degenerate:
        return SectionZeros(degenerate=True, reason=scan.reason)
    df = f.derivative()
    out = []
    for phi in scan.roots:
        p, q = float(df(phi)), float(df(phi + math.pi))
        if max(abs(p), abs(q)) <= tol * scale:
            return SectionZeros(degenerate=True, reason=f"f' vanishes at both ends of the diameter at {phi:.9g}")
        out.append((phi, Projective(p, q)))
    return SectionZeros(out)


# -- monodromy of evaluation frames -------------------------------------------


class Loop(enum.Enum):
    CD1_DIAMETERS = "cd1-diameters"
    GAMMA_INF_FRAME = "gamma-inf-frame"


@dataclass(frozen=True)
class Atom:
    """``coeff * f^(order)(point)``"""

    point: float
    order: int
    coeff: float


Functional = tuple[Atom, ...]


def _initial_frame(loop: Loop, phi: float) -> list[Functional]:
    if loop is Loop.CD1_DIAMETERS:
        return [(Atom(phi + math.pi, 0, 1.0), Atom(phi, 0, -1.0))]
    if loop is Loop.GAMMA_INF_FRAME:
        return [(Atom(phi + math.pi, 1, 1.0),), (Atom(phi, 1, 1.0),)]
    raise ValueError(f"unknown loop {loop!r}")


def _test_functions(degree: int = 3) -> list[TrigPolynomial]:
    out = [TrigPolynomial.constant(1.0)]
    for k in range(1, degree + 1):
        out += [TrigPolynomial.cos_k(k), TrigPolynomial.sin_k(k)]
    return out


def _evaluate(frame: list[Functional], tests: list[TrigPolynomial]) -> np.ndarray:
    out = np.zeros((len(frame), len(tests)))
    for j, f in enumerate(tests):
        derivs = {}
        for i, functional in enumerate(frame):
            for atom in functional:
                if atom.order not in derivs:
                    derivs[atom.order] = f.derivative(atom.order)
                out[i, j] += atom.coeff * float(derivs[atom.order](atom.point))
    return out


def transport(frame: list[Functional], start: float, turns: float, steps: int) -> list[Functional]:
    """Carry each atom along as the base diameter rotates by ``turns * pi``.

    At every step an atom moves to whichever endpoint of the new diameter is
    nearest to its previous position.
    """
    frame = [tuple(functional) for functional in frame]
    for k in range(1, steps + 1):
        phi = start + turns * math.pi * k / steps
        ends = (phi, phi + math.pi)
        moved = []
        for functional in frame:
            new = []
            for atom in functional:
                dists = [circle_distance(atom.point, e) for e in ends]
                nearest = int(np.argmin(dists))
                if dists[nearest] >= math.pi / 4:
                    raise ValueError("step too large to match endpoints by continuity")
                new.append(Atom(ends[nearest], atom.order, atom.coeff))
            moved.append(tuple(new))
        frame = moved
    return frame


def holonomy(loop: Loop, steps: int = 64, turns: int = 1, start: float = 0.0) -> np.ndarray:
    """Matrix expressing the transported frame in the original one."""
    if steps < 4:
        raise ValueError("need at least 4 steps")
    initial = _initial_frame(loop, start)
    final = transport(initial, start, turns, steps * turns)
    tests = _test_functions()
    a = _evaluate(initial, tests)
    b = _evaluate(final, tests)
    m, *_ = np.linalg.lstsq(a.T, b.T, rcond=None)
    m = m.T
    if not np.allclose(m @ a, b, atol=1e-9):
        raise ValueError("transported frame left the fibre")
    return m


def monodromy_sign(loop, steps: int = 64, turns: int = 1) -> int:
    """Sign of the holonomy determinant; ``turns=2`` is the doubled loop."""
    det = float(np.linalg.det(holonomy(Loop(loop), steps, turns)))
    return 1 if det > 0 else -1


# -- degree one trivialization -------------------------------------------------


def fourier1_matrix(pair: tuple[Chord, Chord]) -> np.ndarray:
    rows = []
    for c in pair:
        x, y = c.a.angle, c.b.angle
        rows.append((math.cos(x) - math.cos(y), math.sin(x) - math.sin(y)))
    return np.array(rows)


def fourier1_trivialization_check(
    pair: tuple[Chord, Chord], marked_point_on_first: bool = False, marked: float = 0.0
) -> float:
    """``|det|`` of the chord conditions restricted to ``lam1 cos + lam2 sin``.

    A nonzero value certifies that no nonzero degree-one function is
    constant on both chords. With ``marked_point_on_first`` the first chord
    must have an endpoint at ``marked``.
    """
    first, second = pair
    ends = [first.a, first.b, second.a, second.b]
    for i in range(4):
        for j in range(i):
            if ends[i] == ends[j]:
                raise ValueError("the two chords must have four distinct endpoints")
    if marked_point_on_first and not (first.a == marked or first.b == marked):
        raise ValueError("first chord does not pass through the marked point")
    m = fourier1_matrix(pair)
    return abs(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
