"""Chord pairs where a space of maps ``S^1 -> R^3`` fails to surject onto the chord conditions.

For a pair of chords ``(x1, y1), (x2, y2)`` and a space ``F`` of maps, the
six conditions ``f_c(x_i) - f_c(y_i)`` define a linear map ``F -> R^6``.
When ``dim F = 7`` the pairs where it drops rank are expected to form a
2-parameter family.

The scan measures the smallest singular value of that map after
whitening the conditions: each component's two chord functionals are
replaced by an orthonormal basis of their span in the coefficient metric.
This keeps the measure bounded by 1 and stops short or nearly equal
chords from looking degenerate merely because their raw rows are small.

A grid cell is flagged only when a point inside it is certified: a
Gauss-Newton refinement started from a low grid value reaches a chord
pair whose relative smallest singular value is below ``tol``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from cdlab.analytic.svd import jacobi_singular_values
from cdlab.analytic.trig import MapTriple, TrigPolynomial
from cdlab.chords import Chord, DisjointSet

TWO_PI = 2.0 * math.pi

# Gram matrices of the basis with condition number above this are rejected.
MAX_GRAM_CONDITION = 1e10


@dataclass(frozen=True)
class FunctionSubspace:
    basis: tuple[MapTriple, ...]

    def __init__(self, basis: Sequence[MapTriple]):
        basis = tuple(basis)
        object.__setattr__(self, "basis", basis)
        if basis:
            coeffs = self.coefficient_matrix(with_constants=True)
            gram = coeffs.T @ coeffs
            cond = np.linalg.cond(gram)
            if not np.isfinite(cond) or cond > MAX_GRAM_CONDITION:
                raise ValueError(f"basis is not numerically independent (Gram condition {cond:.3g})")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.basis), default=0)

    def coefficient_matrix(self, with_constants: bool = False, degree: int | None = None) -> np.ndarray:
        """Columns are basis maps; rows run over components then harmonics.

        Within a component the layout is ``[a0,] cos1, sin1, cos2, sin2, ...``.
        """
        d = self.degree if degree is None else degree
        width = 2 * d + (1 if with_constants else 0)
        out = np.zeros((3 * width, self.dim))
        for j, m in enumerate(self.basis):
            for c, f in enumerate(m.components):
                base = c * width
                if with_constants:
                    out[base, j] = f.a0
                    base += 1
                k = min(len(f.cos), d)
                out[base: base + 2 * k: 2, j] = f.cos[:k]
                out[base + 1: base + 2 * k: 2, j] = f.sin[:k]
        return out

    def recombined(self, q: np.ndarray) -> "FunctionSubspace":
        """Basis ``b'_j = sum_i q[i, j] b_i``."""
        d = self.degree
        coeffs = self.coefficient_matrix(with_constants=True) @ np.asarray(q)
        width = 2 * d + 1
        basis = []
        for j in range(coeffs.shape[1]):
            comps = []
            for c in range(3):
                block = coeffs[c * width: (c + 1) * width, j]
                comps.append(TrigPolynomial(block[0], block[1::2], block[2::2]))
            basis.append(MapTriple(tuple(comps)))
        return FunctionSubspace(basis)


def random_subspace(rng: np.random.Generator, dim: int = 7, degree: int = 3) -> FunctionSubspace:
    """``dim`` random maps whose components have coefficients uniform in [-1, 1]."""
    basis = []
    for _ in range(dim):
        basis.append(MapTriple(tuple(TrigPolynomial.random(rng, degree) for _ in range(3))))
    return FunctionSubspace(basis)


def degree_one_space() -> FunctionSubspace:
    """The six maps whose components are ``lam1 cos + lam2 sin``."""
    zero = TrigPolynomial()
    basis = []
    for c in range(3):
        for f in (TrigPolynomial.cos_k(1), TrigPolynomial.sin_k(1)):
            comps = [zero, zero, zero]
            comps[c] = f
            basis.append(MapTriple(tuple(comps)))
    return FunctionSubspace(basis)


def evaluation_matrix(pair: Sequence[Chord], space: FunctionSubspace) -> np.ndarray:
    """Row ``(chord i, component c)``, column ``j``: ``f_jc(x_i) - f_jc(y_i)``."""
    if len(pair) != 2:
        raise ValueError("expected two chords")
    if pair[0] == pair[1]:
        raise ValueError("chords must be distinct")
    out = np.zeros((6, space.dim))
    for i, chord in enumerate(pair):
        x, y = chord.a.angle, chord.b.angle
        for j, m in enumerate(space.basis):
            out[3 * i: 3 * i + 3, j] = m(x) - m(y)
    return out


def smallest_singular_value(pair: Sequence[Chord], space: FunctionSubspace) -> float:
    """Sixth singular value of :func:`evaluation_matrix` (one-sided Jacobi)."""
    s = jacobi_singular_values(evaluation_matrix(pair, space))
    return float(s[5]) if len(s) > 5 else 0.0


class _Whitened:
    """Batched whitened evaluation matrices for one subspace."""

    def __init__(self, space: FunctionSubspace):
        d = max(space.degree, 1)
        coeffs = space.coefficient_matrix(degree=d)
        u, s, _ = np.linalg.svd(coeffs, full_matrices=False)
        keep = s > 1e-10 * max(s[0], 1e-300) if len(s) else s
        self.basis = u[:, keep]  # orthonormal basis of the non-constant parts
        self.d = d
        self.rank = int(keep.sum())

    def _features(self, x: np.ndarray) -> np.ndarray:
        k = np.arange(1, self.d + 1)
        ang = np.multiply.outer(x, k)
        e = np.empty(x.shape + (2 * self.d,))
        e[..., 0::2] = np.cos(ang)
        e[..., 1::2] = np.sin(ang)
        return e

    def _kernel(self, t: np.ndarray) -> np.ndarray:
        k = np.arange(1, self.d + 1)
        return np.cos(np.multiply.outer(t, k)).sum(-1)

    def values(self, x: np.ndarray) -> np.ndarray:
        """(..., 3, rank): basis maps evaluated at ``x``."""
        e = self._features(x)
        b = self.basis.reshape(3, 2 * self.d, self.rank)
        return np.einsum("...m,cmr->...cr", e, b)

    def matrices(self, theta: np.ndarray) -> np.ndarray:
        """(C, 6, rank) whitened matrices for chord pairs ``theta = (x1, y1, x2, y2)``."""
        x1, y1, x2, y2 = (theta[:, i] for i in range(4))
        raw = np.stack([self.values(x1) - self.values(y1), self.values(x2) - self.values(y2)], axis=1)
        kern = self._kernel
        g11 = 2.0 * (kern(np.zeros_like(x1)) - kern(x1 - y1))
        g22 = 2.0 * (kern(np.zeros_like(x2)) - kern(x2 - y2))
        g12 = kern(x1 - x2) - kern(x1 - y2) - kern(y1 - x2) + kern(y1 - y2)
        # inverse Cholesky factor of [[g11, g12], [g12, g22]]
        l11 = np.sqrt(g11)
        l21 = g12 / l11
        l22 = np.sqrt(np.maximum(g22 - l21 * l21, 0.0))
        w = np.zeros(theta.shape[:1] + (2, 2))
        w[:, 0, 0] = 1.0 / l11
        w[:, 1, 0] = -l21 / (l11 * l22)
        w[:, 1, 1] = 1.0 / l22
        mixed = np.einsum("nab,nbcr->nacr", w, raw)
        return mixed.reshape(len(theta), 6, self.rank)

    def sigma(self, theta: np.ndarray) -> np.ndarray:
        """(C, 2): smallest and largest singular values."""
        if self.rank < 6:
            return np.zeros((len(theta), 2))
        s = np.linalg.svd(self.matrices(theta), compute_uv=False)
        return np.stack([s[:, 5], s[:, 0]], axis=1)


def whitened_sigma(pair: Sequence[Chord], space: FunctionSubspace) -> tuple[float, float]:
    """(smallest, largest) singular value of the whitened evaluation map for one pair."""
    theta = np.array([[pair[0].a.angle, pair[0].b.angle, pair[1].a.angle, pair[1].b.angle]])
    lo, hi = _Whitened(space).sigma(theta)[0]
    return float(lo), float(hi)


def _refine(ev: _Whitened, theta: np.ndarray, step_cap: float, iterations: int = 25) -> np.ndarray:
    """Gauss-Newton on ``N(theta)^T w = 0`` with ``|w| = 1``, batched over starts.

    Unknowns are the four angles and ``w`` on the unit sphere; the
    minimum-norm step is taken, so each start drifts to a nearby point of
    the degeneracy locus.
    """
    theta = theta.copy()
    n_rows = 6
    u, s, _ = np.linalg.svd(ev.matrices(theta))
    w = u[:, :, n_rows - 1]
    h = 1e-7
    for _ in range(iterations):
        m = ev.matrices(theta)
        r = np.einsum("ncr,nc->nr", m, w)
        jac_theta = np.empty(r.shape + (4,))
        for i in range(4):
            shifted = theta.copy()
            shifted[:, i] += h
            jac_theta[:, :, i] = (np.einsum("ncr,nc->nr", ev.matrices(shifted), w) - r) / h
        # tangent basis of the sphere at w
        proj = np.eye(n_rows)[None] - np.einsum("na,nb->nab", w, w)
        q, _ = np.linalg.qr(proj)
        tangent = q[:, :, : n_rows - 1]
        jac_w = np.einsum("ncr,nct->nrt", m, tangent)
        jac = np.concatenate([jac_theta, jac_w], axis=2)
        step = -np.einsum("nvr,nr->nv", np.linalg.pinv(jac), r)
        dtheta = step[:, :4]
        big = np.abs(dtheta).max(axis=1, keepdims=True)
        factor = np.minimum(1.0, step_cap / np.maximum(big, 1e-300))
        theta = theta + factor * dtheta
        w = w + factor * np.einsum("nct,nt->nc", tangent, step[:, 4:])
        w /= np.linalg.norm(w, axis=1, keepdims=True)
    return theta


@dataclass(frozen=True)
class ComponentSummary:
    size: int
    spans: tuple[int, int, int, int]

    @property
    def extent_dimension(self) -> int:
        """Number of parameters along which the component spans at least 2 grid steps."""
        return sum(1 for s in self.spans if s >= 2)


@dataclass
class ScanResult:
    grid: int
    tol: float
    flagged: frozenset
    components: list[ComponentSummary] = field(default_factory=list)
    candidates: int = 0
    certified: int = 0
    min_grid_sigma: float = math.nan

    @property
    def nonempty(self) -> bool:
        return bool(self.flagged)

    @property
    def two_parameter(self) -> bool:
        return any(c.extent_dimension >= 2 for c in self.components)

    def summary(self) -> str:
        best = max((c.extent_dimension for c in self.components), default=0)
        return (
            f"grid={self.grid} tol={self.tol:.3g} flagged={len(self.flagged)} "
            f"components={len(self.components)} max_extent_dim={best} "
            f"candidates={self.candidates} certified={self.certified}"
        )


def _cyclic_span(values: set[int], n: int) -> int:
    pts = sorted(values)
    if len(pts) <= 1:
        return 0
    gaps = [b - a for a, b in zip(pts, pts[1:])] + [pts[0] + n - pts[-1]]
    return n - max(gaps)


def _symmetric_images(cell: tuple[int, int, int, int]) -> set[tuple[int, int, int, int]]:
    x1, y1, x2, y2 = cell
    out = set()
    for a, b in ((x1, y1), (y1, x1)):
        for c, d in ((x2, y2), (y2, x2)):
            out.add((a, b, c, d))
            out.add((c, d, a, b))
    return out


def _components(flagged: frozenset, n: int) -> list[ComponentSummary]:
    cells = sorted(flagged)
    index = {c: i for i, c in enumerate(cells)}
    ds = DisjointSet(len(cells))
    for c, i in index.items():
        for axis in range(4):
            nb = list(c)
            nb[axis] = (nb[axis] + 1) % n
            j = index.get(tuple(nb))
            if j is not None:
                ds.union(i, j)
    out = []
    for group in ds.groups():
        members = [cells[i] for i in group]
        spans = tuple(_cyclic_span({m[a] for m in members}, n) for a in range(4))
        out.append(ComponentSummary(len(members), spans))
    out.sort(key=lambda c: (-c.size, c.spans))
    return out


def canonical_pairs(n: int) -> np.ndarray:
    """Grid chord pairs with ``x1 < y1``, ``x2 < y2`` and ``(x1, y1) < (x2, y2)``."""
    chords = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pairs = [a + b for a, b in itertools.combinations(chords, 2)]
    return np.array(pairs, dtype=int).reshape(-1, 4)


# grid values of the smallest singular value below this seed a refinement
PREFILTER = 0.05


def degeneracy_scan(space: FunctionSubspace, grid: int = 24, tol: float = 1e-6) -> ScanResult:
    if space.dim != 7:
        raise ValueError(f"degeneracy scan expects a 7-dimensional space, got {space.dim}")
    if grid < 4:
        raise ValueError("grid must have at least 4 points per axis")
    step = TWO_PI / grid
    ev = _Whitened(space)
    cells = canonical_pairs(grid)
    theta0 = cells * step
    sig = ev.sigma(theta0)
    rel = sig[:, 0] / np.maximum(sig[:, 1], 1e-300)
    min_grid = float(rel.min()) if len(rel) else math.nan
    if tol <= 0:
        return ScanResult(grid, tol, frozenset(), [], 0, 0, min_grid)

    seeds = rel < PREFILTER
    start = theta0[seeds]
    refined = _refine(ev, start, step_cap=step / 2) if len(start) else start
    sig_r = ev.sigma(refined) if len(refined) else np.zeros((0, 2))
    rel_r = sig_r[:, 0] / np.maximum(sig_r[:, 1], 1e-300)

    flagged = set()
    certified = 0
    for th, r in zip(refined, rel_r):
        if not (r < tol):
            continue
        idx = np.rint(np.mod(th, TWO_PI) / step).astype(int) % grid
        x1, y1, x2, y2 = (int(v) for v in idx)
        # drop refinements that collapsed a chord or merged the two chords
        if x1 == y1 or x2 == y2 or {x1, y1} == {x2, y2}:
            continue
        certified += 1
        flagged |= _symmetric_images((x1, y1, x2, y2))
    flagged_set = frozenset(flagged)
    return ScanResult(
        grid, tol, flagged_set, _components(flagged_set, grid), int(seeds.sum()), certified, min_grid
    )
