"""Ordered simplicial complexes, mod 2 cochains and the Alexander-Whitney cup product.

Simplices are stored as strictly increasing vertex tuples, so the front
face ``(v0..vp)`` and back face ``(vp..v_{p+q})`` of the cup formula are
plain slices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from cdlab import f2

Simplex = tuple


class CochainError(ValueError):
    pass


@dataclass(frozen=True)
class OrderedSimplicialComplex:
    vertices: tuple
    simplices: tuple[tuple[Simplex, ...], ...]

    @classmethod
    def from_maximal(cls, maximal: Iterable[Sequence]) -> "OrderedSimplicialComplex":
        """Close a list of top simplices under taking faces."""
        faces: set[Simplex] = set()
        for s in maximal:
            s = tuple(sorted(s))
            if len(set(s)) != len(s):
                raise ValueError(f"simplex {s} repeats a vertex")
            for r in range(1, len(s) + 1):
                faces.update(itertools.combinations(s, r))
        dim = max((len(s) for s in faces), default=0) - 1
        by_dim = tuple(tuple(sorted(s for s in faces if len(s) == k + 1)) for k in range(dim + 1))
        vertices = tuple(s[0] for s in by_dim[0]) if by_dim else ()
        return cls(vertices, by_dim)

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def of_dim(self, k: int) -> tuple[Simplex, ...]:
        if 0 <= k < len(self.simplices):
            return self.simplices[k]
        return ()

    def index(self, k: int) -> dict:
        return {s: i for i, s in enumerate(self.of_dim(k))}

    def validate(self) -> list[str]:
        """Face-closure and ordering problems; empty when the complex is sound."""
        problems = []
        present = [set(level) for level in self.simplices]
        order = {v: i for i, v in enumerate(self.vertices)}
        for k, level in enumerate(self.simplices):
            for s in level:
                if len(s) != k + 1:
                    problems.append(f"{s} stored in dimension {k}")
                if any(order[a] >= order[b] for a, b in zip(s, s[1:])):
                    problems.append(f"{s} is not increasing")
                if k > 0:
                    for face in itertools.combinations(s, k):
                        if face not in present[k - 1]:
                            problems.append(f"face {face} of {s} missing")
        return problems

    def coboundary_matrix(self, k: int) -> f2.BitMatrix:
        """delta^k as a matrix: rows are (k+1)-simplices, columns k-simplices."""
        idx = self.index(k)
        rows = []
        for s in self.of_dim(k + 1):
            row = 0
            for i in range(len(s)):
                row ^= 1 << idx[s[:i] + s[i + 1:]]
            rows.append(row)
        return f2.BitMatrix(len(rows), len(idx), tuple(rows))

    def betti(self) -> list[int]:
        ranks = [f2.rank(self.coboundary_matrix(k)) for k in range(self.dimension)]
        out = []
        for k in range(self.dimension + 1):
            below = ranks[k - 1] if k > 0 else 0
            above = ranks[k] if k < self.dimension else 0
            out.append(len(self.of_dim(k)) - below - above)
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(level) for k, level in enumerate(self.simplices))


@dataclass(frozen=True)
class Cochain:
    """A mod 2 cochain, stored as the set of simplices where it is 1."""

    degree: int
    support: frozenset

    @classmethod
    def of(cls, degree: int, simplices: Iterable[Simplex]) -> "Cochain":
        return cls(degree, frozenset(tuple(s) for s in simplices))

    @classmethod
    def zero(cls, degree: int) -> "Cochain":
        return cls(degree, frozenset())

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.degree != self.degree:
            raise CochainError("degree mismatch")
        return Cochain(self.degree, self.support ^ other.support)

    def __call__(self, simplex: Simplex) -> int:
        return 1 if tuple(simplex) in self.support else 0

    def pair(self, chain: Iterable[Simplex]) -> int:
        """Kronecker pairing with a chain given as a set of simplices."""
        return sum(self(s) for s in chain) & 1

    def is_zero(self) -> bool:
        return not self.support


def _check_cochain(c: OrderedSimplicialComplex, x: Cochain) -> None:
    level = set(c.of_dim(x.degree))
    stray = [s for s in x.support if s not in level]
    if stray:
        raise CochainError(f"cochain of degree {x.degree} is supported off the complex: {stray[0]}")


def cochain_from_vector(c: OrderedSimplicialComplex, degree: int, v: int) -> Cochain:
    return Cochain(degree, frozenset(s for i, s in enumerate(c.of_dim(degree)) if (v >> i) & 1))


def cochain_to_vector(c: OrderedSimplicialComplex, x: Cochain) -> int:
    idx = c.index(x.degree)
    v = 0
    for s in x.support:
        v |= 1 << idx[s]
    return v


def coboundary(c: OrderedSimplicialComplex, x: Cochain) -> Cochain:
    if x.degree >= c.dimension:
        raise CochainError(f"no coboundary out of degree {x.degree} on a {c.dimension}-complex")
    _check_cochain(c, x)
    out = set()
    for s in c.of_dim(x.degree + 1):
        total = 0
        for i in range(len(s)):
            total ^= x(s[:i] + s[i + 1:])
        if total:
            out.add(s)
    return Cochain(x.degree + 1, frozenset(out))


def cup(c: OrderedSimplicialComplex, x: Cochain, y: Cochain) -> Cochain:
    p, q = x.degree, y.degree
    if p + q > c.dimension:
        raise CochainError(f"cup of degrees {p} and {q} exceeds dimension {c.dimension}")
    _check_cochain(c, x)
    _check_cochain(c, y)
    out = frozenset(s for s in c.of_dim(p + q) if x(s[: p + 1]) and y(s[p:]))
    return Cochain(p + q, out)


def cocycle_basis(c: OrderedSimplicialComplex, degree: int) -> list[Cochain]:
    return [cochain_from_vector(c, degree, v) for v in f2.kernel_basis(c.coboundary_matrix(degree))]


# -- marked surfaces ---------------------------------------------------------


@dataclass(frozen=True)
class MarkedSurface:
    """A triangulated closed surface with two marked loops.

    ``loop_v`` runs along the base direction (the cross-section of the
    fibration by diameters), ``loop_u`` along a fibre.
    """

    complex: OrderedSimplicialComplex
    loop_u: frozenset
    loop_v: frozenset
    fundamental_class: frozenset
    name: str = ""


def _grid_surface(n: int, twisted: bool, name: str) -> MarkedSurface:
    if n < 3:
        raise ValueError("grid size must be at least 3")

    def vertex(i: int, j: int) -> tuple[int, int]:
        # (t, 0) ~ (t, 1); (0, s) ~ (1, 1 - s) for the Klein bottle, (1, s) for the torus.
        if i == n:
            i, j = 0, (n - j if twisted else j)
        return (i, j % n)

    triangles = []
    for i in range(n):
        for j in range(n):
            a, b = vertex(i, j), vertex(i + 1, j)
            cc, d = vertex(i + 1, j + 1), vertex(i, j + 1)
            triangles.append((a, b, cc))
            triangles.append((a, d, cc))
    cx = OrderedSimplicialComplex.from_maximal(triangles)
    if len(cx.of_dim(2)) != 2 * n * n or len(cx.of_dim(1)) != 3 * n * n:
        raise ValueError(f"grid {n} does not give a simplicial complex")

    def path(points):
        return frozenset(tuple(sorted((points[k], points[k + 1]))) for k in range(len(points) - 1))

    loop_v = path([vertex(i, 0) for i in range(n + 1)])
    loop_u = path([vertex(0, j) for j in range(n + 1)])
    return MarkedSurface(cx, loop_u, loop_v, frozenset(cx.of_dim(2)), name)


def klein_bottle(n: int = 4) -> MarkedSurface:
    """The Klein bottle as an ``n x n`` grid quotient of the unit square."""
    return _grid_surface(n, twisted=True, name="klein")


def torus(n: int = 4) -> MarkedSurface:
    """Control surface: the same grid with orientation-preserving gluing."""
    return _grid_surface(n, twisted=False, name="torus")


def is_cycle(c: OrderedSimplicialComplex, chain: Iterable[Simplex]) -> bool:
    counts: dict = {}
    for s in chain:
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            counts[face] = counts.get(face, 0) ^ 1
    return not any(counts.values())


def solve_cocycle(s: MarkedSurface, on_u: int, on_v: int) -> Cochain:
    """A 1-cocycle with prescribed pairings against the two marked loops."""
    cx = s.complex
    delta = cx.coboundary_matrix(1)
    idx = cx.index(1)
    pair_u = sum(1 << idx[e] for e in s.loop_u)
    pair_v = sum(1 << idx[e] for e in s.loop_v)
    m = f2.BitMatrix(delta.rows + 2, delta.cols, delta.data + (pair_u, pair_v))
    rhs = ((on_u & 1) << delta.rows) | ((on_v & 1) << (delta.rows + 1))
    x = f2.solve(m, rhs)
    if x is None:
        raise CochainError(f"no 1-cocycle pairs ({on_u}, {on_v}) with (u, v) on {s.name or 'surface'}")
    return cochain_from_vector(cx, 1, x)


def restricted_W(s: MarkedSurface) -> Cochain:
    """The 1-cocycle taking 1 on the fibre loop and 0 on the cross-section."""
    return solve_cocycle(s, on_u=1, on_v=0)


def cup_square_pairing(s: MarkedSurface, x: Cochain) -> int:
    if x.degree != 1:
        raise CochainError("cup_square_pairing expects a 1-cochain")
    if not coboundary(s.complex, x).is_zero():
        raise CochainError("cup_square_pairing expects a cocycle")
    return cup(s.complex, x, x).pair(s.fundamental_class)


def cohomology_basis_h1(s: MarkedSurface) -> list[Cochain]:
    """Cocycles dual to (loop_u, loop_v); raises if the loops are not a homology basis."""
    return [solve_cocycle(s, 1, 0), solve_cocycle(s, 0, 1)]


# -- truncated polynomials over GF(2) ----------------------------------------


def _poly_mul(a: Sequence[int], b: Sequence[int], max_degree: int) -> list[int]:
    out = [0] * (max_degree + 1)
    for i, ai in enumerate(a[: max_degree + 1]):
        if ai & 1:
            for j, bj in enumerate(b[: max_degree + 1 - i]):
                out[i + j] ^= bj & 1
    return out


def _poly_inverse(a: Sequence[int], max_degree: int) -> list[int]:
    # Power series inverse; solvable because the constant term is 1.
    inv = [1] + [0] * max_degree
    for k in range(1, max_degree + 1):
        total = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            total ^= a[i] & inv[k - i]
        inv[k] = total
    return inv


def truncated_poly_cube(total_class: Sequence[int], power: int = 3, max_degree: int = 3) -> list[int]:
    """``total_class ** power`` in GF(2)[W] / (W^(max_degree+1)); negative powers invert first.

    Coefficients are listed by degree, constant term first.
    """
    if not total_class or total_class[0] & 1 != 1:
        raise ValueError("a total class must have constant term 1")
    base = [b & 1 for b in total_class]
    if power < 0:
        base = _poly_inverse(base, max_degree)
        power = -power
    out = [1] + [0] * max_degree
    for _ in range(power):
        out = _poly_mul(out, base, max_degree)
    return out
