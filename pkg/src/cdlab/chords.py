"""Chord diagrams on the circle and the limit algebras of their closure.

Points of the circle are angles reduced into ``[0, 2pi)`` and compared with
a fixed tolerance :data:`EPS_PT`. A chord ``{phi, psi}`` stands for the
condition ``f(phi) = f(psi)``; a diagram's rank is the codimension of the
subalgebra its chords cut out, which equals the number of distinct
endpoints minus the number of connected components of the endpoint graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from cdlab.analytic.trig import TrigPolynomial

TWO_PI = 2.0 * math.pi
EPS_PT = 1e-9


def canonical_angle(x: float) -> float:
    r = math.fmod(x, TWO_PI)
    if r < 0:
        r += TWO_PI
    if r >= TWO_PI:
        r -= TWO_PI
    return r


def circle_distance(x: float, y: float) -> float:
    d = abs(canonical_angle(x) - canonical_angle(y))
    return min(d, TWO_PI - d)


@dataclass(frozen=True, eq=False)
class CirclePoint:
    angle: float

    def __post_init__(self):
        if not math.isfinite(self.angle):
            raise ValueError(f"angle must be finite, got {self.angle}")
        object.__setattr__(self, "angle", canonical_angle(self.angle))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, float)):
            other = CirclePoint(other)
        if not isinstance(other, CirclePoint):
            return NotImplemented
        return circle_distance(self.angle, other.angle) <= EPS_PT

    __hash__ = None

    def __float__(self) -> float:
        return self.angle

    def __add__(self, delta: float) -> "CirclePoint":
        return CirclePoint(self.angle + delta)

    def __sub__(self, delta: float) -> "CirclePoint":
        return CirclePoint(self.angle - delta)

    def __repr__(self) -> str:
        return f"CirclePoint({self.angle!r})"


def _pt(x: Union[float, CirclePoint]) -> CirclePoint:
    return x if isinstance(x, CirclePoint) else CirclePoint(float(x))


@dataclass(frozen=True, eq=False)
class Chord:
    a: CirclePoint
    b: CirclePoint

    def __init__(self, a, b):
        a, b = _pt(a), _pt(b)
        if a == b:
            raise ValueError(f"chord endpoints coincide: {a.angle} and {b.angle}")
        if b.angle < a.angle:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def endpoints(self) -> tuple[CirclePoint, CirclePoint]:
        return (self.a, self.b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chord):
            return NotImplemented
        return (self.a == other.a and self.b == other.b) or (self.a == other.b and self.b == other.a)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Chord({self.a.angle!r}, {self.b.angle!r})"


@dataclass(frozen=True, eq=False)
class ChordDiagram:
    chords: tuple[Chord, ...]

    def __init__(self, chords: Iterable[Union[Chord, Sequence[float]]]):
        cs = tuple(c if isinstance(c, Chord) else Chord(*c) for c in chords)
        for i, c in enumerate(cs):
            for d in cs[:i]:
                if c == d:
                    raise ValueError(f"repeated chord {c}")
        object.__setattr__(self, "chords", cs)

    def __len__(self) -> int:
        return len(self.chords)

    def endpoints(self) -> list[CirclePoint]:
        return [p for c in self.chords for p in c.endpoints]


class DisjointSet:
    """Union-find over ``0..size-1`` with path halving and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return True

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def _identify(points: Sequence[CirclePoint]) -> tuple[list[CirclePoint], list[int]]:
    """Distinct points (up to EPS_PT) and the index of each input among them."""
    distinct: list[CirclePoint] = []
    where = []
    for p in points:
        for i, q in enumerate(distinct):
            if p == q:
                where.append(i)
                break
        else:
            where.append(len(distinct))
            distinct.append(p)
    return distinct, where


@dataclass(frozen=True, eq=False)
class Partition:
    """Blocks of chord-connected endpoints; singletons are omitted."""

    blocks: tuple[tuple[CirclePoint, ...], ...]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        if len(self.blocks) != len(other.blocks):
            return False
        remaining = list(other.blocks)
        for block in self.blocks:
            for i, cand in enumerate(remaining):
                if _same_block(block, cand):
                    del remaining[i]
                    break
            else:
                return False
        return True

    __hash__ = None

    def rank(self) -> int:
        return sum(len(b) - 1 for b in self.blocks)

    def __str__(self) -> str:
        return " | ".join("{" + ", ".join(f"{p.angle:.9g}" for p in b) + "}" for b in self.blocks)


def _same_block(x: Sequence[CirclePoint], y: Sequence[CirclePoint]) -> bool:
    return len(x) == len(y) and all(any(p == q for q in y) for p in x)


def _components(d: ChordDiagram) -> tuple[list[CirclePoint], DisjointSet]:
    points, where = _identify(d.endpoints())
    ds = DisjointSet(len(points))
    for k in range(len(d.chords)):
        ds.union(where[2 * k], where[2 * k + 1])
    return points, ds


def rank(d: ChordDiagram) -> int:
    points, ds = _components(d)
    return len(points) - len(ds.groups())


def partition(d: ChordDiagram) -> Partition:
    points, ds = _components(d)
    blocks = []
    for group in ds.groups():
        if len(group) > 1:
            blocks.append(tuple(sorted((points[i] for i in group), key=lambda p: p.angle)))
    blocks.sort(key=lambda b: b[0].angle)
    return Partition(tuple(blocks))


def same_point(d1: ChordDiagram, d2: ChordDiagram) -> bool:
    return partition(d1) == partition(d2)


def crossing(c1: Chord, c2: Chord) -> bool:
    """True iff the endpoints of ``c2`` separate those of ``c1`` on the circle."""
    for p in c2.endpoints:
        if p == c1.a or p == c1.b:
            raise ValueError("crossing is only defined for chords with four distinct endpoints")
    lo, hi = c1.a.angle, c1.b.angle
    inside = sum(1 for p in c2.endpoints if lo < p.angle < hi)
    return inside == 1


# -- projective parameter and limit algebras ---------------------------------


@dataclass(frozen=True, eq=False)
class Projective:
    """A point ``(p : q)`` of the real projective line, ``alpha = p / q``; ``(1 : 0)`` is infinity."""

    p: float
    q: float

    def __post_init__(self):
        if self.p == 0 and self.q == 0:
            raise ValueError("(0 : 0) is not a projective point")

    @classmethod
    def of(cls, alpha) -> "Projective":
        if isinstance(alpha, Projective):
            return alpha
        if alpha is None or (isinstance(alpha, float) and math.isinf(alpha)):
            return INF
        return cls(float(alpha), 1.0)

    def inverse(self) -> "Projective":
        return Projective(self.q, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Projective):
            other = Projective.of(other)
        return self.p * other.q == self.q * other.p

    __hash__ = None

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def value(self) -> float:
        return math.inf if self.q == 0 else self.p / self.q

    def nonnegative(self) -> bool:
        """Whether alpha lies in the closed arc [0, +inf]."""
        return self.p * self.q >= 0

    def __repr__(self) -> str:
        return "Projective(inf)" if self.q == 0 else f"Projective({self.p / self.q!r})"


INF = Projective(1.0, 0.0)


@dataclass(frozen=True, eq=False)
class GimelAlgebra:
    """Functions with ``f(phi) = f(psi)`` and ``f'(phi) = alpha f'(psi)``."""

    phi: CirclePoint
    psi: CirclePoint
    alpha: Projective

    def __init__(self, phi, psi, alpha):
        phi, psi = _pt(phi), _pt(psi)
        if phi == psi:
            raise ValueError("gimel algebra needs two distinct points")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "alpha", Projective.of(alpha))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GimelAlgebra):
            return NotImplemented
        if self.phi == other.phi and self.psi == other.psi and self.alpha == other.alpha:
            return True
        return self.phi == other.psi and self.psi == other.phi and self.alpha == other.alpha.inverse()

    __hash__ = None

    def swapped(self) -> "GimelAlgebra":
        return GimelAlgebra(self.psi, self.phi, self.alpha.inverse())


@dataclass(frozen=True)
class StarAlgebra:
    """Functions with ``f'(phi) = 0`` and ``f'''(phi) = alpha f''(phi)``."""

    phi: CirclePoint
    alpha: float

    def __init__(self, phi, alpha: float):
        if not math.isfinite(alpha):
            raise ValueError("star algebra parameter must be finite")
        object.__setattr__(self, "phi", _pt(phi))
        object.__setattr__(self, "alpha", float(alpha))


@dataclass(frozen=True)
class DoubleStarAlgebra:
    """Functions with ``f'(phi) = f''(phi) = 0``."""

    phi: CirclePoint

    def __init__(self, phi):
        object.__setattr__(self, "phi", _pt(phi))


Algebra = Union[ChordDiagram, GimelAlgebra, StarAlgebra, DoubleStarAlgebra]


def contains(a: Algebra, f: TrigPolynomial, tol: float = 1e-9) -> bool:
    """Whether ``f`` satisfies the defining conditions of ``a`` within ``tol``."""
    if isinstance(a, ChordDiagram):
        return all(abs(f(c.a.angle) - f(c.b.angle)) <= tol for c in a.chords)
    df = f.derivative()
    if isinstance(a, GimelAlgebra):
        x, y = a.phi.angle, a.psi.angle
        if abs(f(x) - f(y)) > tol:
            return False
        # q f'(phi) = p f'(psi), which reads f'(psi) = 0 at alpha = inf.
        return abs(a.alpha.q * df(x) - a.alpha.p * df(y)) <= tol
    if isinstance(a, StarAlgebra):
        x = a.phi.angle
        d2 = df.derivative()
        d3 = d2.derivative()
        return abs(df(x)) <= tol and abs(d3(x) - a.alpha * d2(x)) <= tol
    if isinstance(a, DoubleStarAlgebra):
        x = a.phi.angle
        return abs(df(x)) <= tol and abs(df.derivative()(x)) <= tol
    raise TypeError(f"not an algebra descriptor: {type(a).__name__}")


def chords_for_gimel(phi, alpha, eps: float) -> tuple[Chord, Chord]:
    """Resolve a point ``gimel(phi, phi + pi; alpha)`` of the Klein-bottle cycle into two chords."""
    if not 0 < eps < math.pi / 4:
        raise ValueError("eps must lie in (0, pi/4)")
    phi = float(_pt(phi).angle)
    alpha = Projective.of(alpha)
    size = abs(alpha.p) + abs(alpha.q)
    a = abs(alpha.p) / size
    b = abs(alpha.q) / size
    if alpha.nonnegative():
        first = Chord(phi + eps * a, phi + math.pi + eps * b)
        second = Chord(phi - eps * a, phi + math.pi - eps * b)
    else:
        first = Chord(phi + eps * a, phi + math.pi - eps * b)
        second = Chord(phi - eps * a, phi + math.pi + eps * b)
    return first, second


def same_chord_pair(x: Sequence[Chord], y: Sequence[Chord]) -> bool:
    return (x[0] == y[0] and x[1] == y[1]) or (x[0] == y[1] and x[1] == y[0])


def parse_diagram(text: str) -> ChordDiagram:
    """Parse ``"0.0-1.5708,2.0-3.0"``: comma-separated chords, endpoints split by ``-``."""
    chords = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        # A leading minus belongs to the first angle.
        cut = item.find("-", 1)
        while cut > 0 and item[cut - 1] in "eE":
            cut = item.find("-", cut + 1)
        if cut <= 0:
            raise ValueError(f"chord {item!r} is not of the form angle-angle")
        chords.append(Chord(float(item[:cut]), float(item[cut + 1:])))
    if not chords:
        raise ValueError("empty diagram")
    return ChordDiagram(chords)


def numeric_rank(d: ChordDiagram, rng, degree: int = 4, n_functions: int | None = None) -> int:
    """Rank of the chord conditions evaluated on random trig polynomials.

    Row ``i`` holds ``f(phi_i) - f(psi_i)`` for each test function. This is
    an independent check of :func:`rank`, which uses union-find instead.
    """
    points = {p.angle for p in d.endpoints()}
    if n_functions is None:
        n_functions = max(2 * len(points), 4)
    funcs = [TrigPolynomial.random(rng, degree) for _ in range(n_functions)]
    m = np.array([[f(c.a.angle) - f(c.b.angle) for f in funcs] for c in d.chords])
    return int(np.linalg.matrix_rank(m, tol=1e-9 * max(1.0, float(np.abs(m).max()))))


def random_diagram(rng, max_chords: int = 6, max_points: int = 8, min_gap: float = 0.05) -> ChordDiagram:
    """Random diagram on at most ``max_points`` well-separated points."""
    n_points = int(rng.integers(2, max_points + 1))
    while True:
        angles = np.sort(rng.uniform(0.0, TWO_PI, n_points))
        gaps = np.diff(np.concatenate([angles, angles[:1] + TWO_PI]))
        if gaps.min() > min_gap:
            break
    pairs = [(i, j) for i in range(n_points) for j in range(i + 1, n_points)]
    k = int(rng.integers(1, min(max_chords, len(pairs)) + 1))
    chosen = rng.choice(len(pairs), size=k, replace=False)
    return ChordDiagram(Chord(angles[pairs[c][0]], angles[pairs[c][1]]) for c in sorted(chosen))
