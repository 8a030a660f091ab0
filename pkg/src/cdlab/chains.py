"""Cellular chain complexes with GF(2) coefficients.

A complex is a list of named cells graded by dimension together with the
mod 2 incidence sets ``boundary[cell]``. Chains are sets of cells of one
dimension; symmetric difference is chain addition.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from cdlab import f2


class ChainError(ValueError):
    """A chain or complex does not satisfy an operation's precondition."""


@dataclass(frozen=True)
class Chain:
    dimension: int
    support: frozenset[str]

    @classmethod
    def of(cls, dimension: int, cells: Iterable[str]) -> "Chain":
        return cls(dimension, frozenset(cells))

    def __add__(self, other: "Chain") -> "Chain":
        if other.dimension != self.dimension:
            raise ChainError(f"cannot add chains of dimensions {self.dimension} and {other.dimension}")
        return Chain(self.dimension, self.support ^ other.support)

    def __len__(self) -> int:
        return len(self.support)

    def __str__(self) -> str:
        if not self.support:
            return "0"
        return " + ".join(sorted(self.support))


@dataclass(frozen=True)
class Violation:
    cell: str
    message: str

    def __str__(self) -> str:
        return f"{self.cell}: {self.message}"


@dataclass(frozen=True)
class ChainComplex:
    """Named cells by dimension plus mod 2 boundary sets.

    The constructor does not enforce the structural invariants, so that
    malformed data can be loaded and then diagnosed with :func:`validate`.
    """

    cells: Mapping[int, tuple[str, ...]]
    boundary: Mapping[str, frozenset[str]]
    name: str = ""
    _dim_of: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        cells = {int(k): tuple(v) for k, v in sorted(self.cells.items()) if len(v)}
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "boundary", {k: frozenset(v) for k, v in self.boundary.items()})
        dim_of = {}
        for k, names in cells.items():
            for n in names:
                dim_of.setdefault(n, k)
        object.__setattr__(self, "_dim_of", dim_of)

    @classmethod
    def build(
        cls,
        cells: Mapping[int, Sequence[str]],
        boundary: Optional[Mapping[str, Iterable[str]]] = None,
        name: str = "",
    ) -> "ChainComplex":
        boundary = boundary or {}
        return cls(
            {k: tuple(v) for k, v in cells.items()},
            {k: frozenset(v) for k, v in boundary.items()},
            name,
        )

    @property
    def top_dim(self) -> int:
        return max(self.cells, default=-1)

    def cells_of(self, k: int) -> tuple[str, ...]:
        return self.cells.get(k, ())

    def dim_of(self, cell: str) -> int:
        try:
            return self._dim_of[cell]
        except KeyError:
            raise ChainError(f"unknown cell {cell!r}") from None

    def boundary_of(self, cell: str) -> frozenset[str]:
        self.dim_of(cell)
        return self.boundary.get(cell, frozenset())

    def counts(self) -> list[int]:
        return [len(self.cells_of(k)) for k in range(self.top_dim + 1)]

    def boundary_matrix(self, k: int) -> f2.BitMatrix:
        """Matrix of d_k : C_k -> C_{k-1}; column j is the boundary of the j-th k-cell."""
        src = self.cells_of(k)
        dst = self.cells_of(k - 1)
        index = {n: i for i, n in enumerate(dst)}
        columns = []
        for cell in src:
            col = 0
            for face in self.boundary.get(cell, ()):
                col |= 1 << index[face]
            columns.append(col)
        return f2.BitMatrix.from_columns(columns, len(dst))

    def to_vector(self, chain: Chain) -> int:
        index = {n: i for i, n in enumerate(self.cells_of(chain.dimension))}
        v = 0
        for cell in chain.support:
            if cell not in index:
                if cell in self._dim_of:
                    raise ChainError(
                        f"cell {cell!r} has dimension {self._dim_of[cell]}, chain has {chain.dimension}"
                    )
                raise ChainError(f"unknown cell {cell!r}")
            v |= 1 << index[cell]
        return v

    def from_vector(self, k: int, v: int) -> Chain:
        names = self.cells_of(k)
        return Chain(k, frozenset(n for i, n in enumerate(names) if (v >> i) & 1))

    def boundary_chain(self, chain: Chain) -> Chain:
        self.to_vector(chain)
        out: frozenset[str] = frozenset()
        for cell in chain.support:
            out = out ^ self.boundary.get(cell, frozenset())
        return Chain(chain.dimension - 1, out)

    def with_boundary(self, cell: str, faces: Iterable[str]) -> "ChainComplex":
        """Copy of the complex with one boundary entry replaced."""
        boundary = dict(self.boundary)
        boundary[cell] = frozenset(faces)
        return ChainComplex(self.cells, boundary, self.name)


def validate(c: ChainComplex) -> list[Violation]:
    """All structural violations of ``c``; an empty list means the complex is valid."""
    out: list[Violation] = []
    seen: dict[str, int] = {}
    for k, names in c.cells.items():
        if k < 0:
            out.append(Violation(names[0], f"negative dimension {k}"))
        for n in names:
            if n in seen:
                out.append(Violation(n, f"duplicate cell name (dimensions {seen[n]} and {k})"))
            else:
                seen[n] = k
    for cell, faces in c.boundary.items():
        if cell not in seen:
            out.append(Violation(cell, "boundary given for unknown cell"))
            continue
        for face in sorted(faces):
            if face not in seen:
                out.append(Violation(cell, f"boundary face {face!r} is not a cell"))
            elif seen[face] != seen[cell] - 1:
                out.append(
                    Violation(cell, f"boundary face {face!r} has dimension {seen[face]}, expected {seen[cell] - 1}")
                )
    if out:
        return out
    for k in sorted(c.cells):
        for cell in c.cells[k]:
            dd: frozenset[str] = frozenset()
            for face in c.boundary.get(cell, ()):
                dd = dd ^ c.boundary.get(face, frozenset())
            if dd:
                out.append(Violation(cell, "d(d(cell)) = " + " + ".join(sorted(dd)) + " != 0"))
    return out


def _require_valid(c: ChainComplex) -> None:
    problems = validate(c)
    if problems:
        raise ChainError(f"invalid complex {c.name!r}: {problems[0]}")


def boundary_ranks(c: ChainComplex) -> list[int]:
    """``ranks[k]`` = rank of d_k over GF(2), for k = 0..top_dim+1 (d_0 = 0)."""
    return [0] + [f2.rank(c.boundary_matrix(k)) for k in range(1, c.top_dim + 2)]


def betti(c: ChainComplex) -> list[int]:
    _require_valid(c)
    ranks = boundary_ranks(c)
    counts = c.counts()
    return [counts[k] - ranks[k] - ranks[k + 1] for k in range(c.top_dim + 1)]


def euler_characteristic(c: ChainComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(c.counts()))


def is_cycle(c: ChainComplex, z: Chain) -> bool:
    return not c.boundary_chain(z).support


def is_boundary(c: ChainComplex, z: Chain) -> bool:
    if not is_cycle(c, z):
        raise ChainError(f"chain {z} is not a cycle")
    return preimage(c, z) is not None


def preimage(c: ChainComplex, z: Chain) -> Optional[Chain]:
    """A (k+1)-chain whose boundary is ``z``, or None."""
    k = z.dimension
    v = c.to_vector(z)
    x = f2.solve(c.boundary_matrix(k + 1), v)
    if x is None:
        return None
    return c.from_vector(k + 1, x)


def homologous(c: ChainComplex, z1: Chain, z2: Chain) -> bool:
    for z in (z1, z2):
        if not is_cycle(c, z):
            raise ChainError(f"chain {z} is not a cycle")
    return is_boundary(c, z1 + z2)


# Past this many cycles the exhaustive minimal-support search is skipped.
_ENUMERATION_LIMIT = 16


def _canonical_key(names: Sequence[str], v: int) -> tuple:
    support = sorted(n for i, n in enumerate(names) if (v >> i) & 1)
    return (len(support), support)


def homology_basis(c: ChainComplex, k: int) -> list[Chain]:
    """Cycle representatives of a GF(2) basis of H_k.

    Representatives are chosen greedily among cycles ordered by support
    size, then by the sorted list of cell names, keeping a cycle whenever it
    is independent of the boundaries and of the cycles already kept.
    """
    _require_valid(c)
    names = c.cells_of(k)
    cycles = f2.kernel_basis(c.boundary_matrix(k))
    image = [c.boundary_matrix(k + 1).column(j) for j in range(len(c.cells_of(k + 1)))]
    target = len(cycles) - f2.span_rank(image)
    if target == 0:
        return []

    if len(cycles) <= _ENUMERATION_LIMIT:
        candidates = set()
        for mask in range(1, 1 << len(cycles)):
            v = 0
            for i, z in enumerate(cycles):
                if (mask >> i) & 1:
                    v ^= z
            candidates.add(v)
        ordered = sorted(candidates, key=lambda v: _canonical_key(names, v))
    else:
        ordered = sorted(cycles, key=lambda v: _canonical_key(names, v))

    chosen: list[int] = []
    current = f2.span_rank(image)
    for v in ordered:
        r = f2.span_rank(image + chosen + [v])
        if r > current:
            chosen.append(v)
            current = r
            if len(chosen) == target:
                break
    return [c.from_vector(k, v) for v in chosen]


def betti_bruteforce(c: ChainComplex) -> list[int]:
    """Betti numbers by enumerating every chain; only for tiny complexes."""
    out = []
    for k in range(c.top_dim + 1):
        names = c.cells_of(k)
        cycles = 0
        for r in range(len(names) + 1):
            for combo in itertools.combinations(names, r):
                if is_cycle(c, Chain.of(k, combo)):
                    cycles += 1
        bounds = set()
        upper = c.cells_of(k + 1)
        for r in range(len(upper) + 1):
            for combo in itertools.combinations(upper, r):
                bounds.add(c.boundary_chain(Chain.of(k + 1, combo)).support)
        out.append((cycles // len(bounds)).bit_length() - 1)
    return out


# -- JSON format -------------------------------------------------------------


def complex_from_json(data: Mapping) -> ChainComplex:
    """Parse ``{"name", "cells": [{"id", "dim"}], "boundary": {id: [ids]}}``."""
    try:
        cells_raw = data["cells"]
    except (KeyError, TypeError):
        raise ChainError("chain-complex JSON needs a 'cells' list") from None
    cells: dict[int, list[str]] = {}
    for entry in cells_raw:
        if not isinstance(entry, Mapping) or "id" not in entry or "dim" not in entry:
            raise ChainError(f"malformed cell entry {entry!r}")
        cid, dim = entry["id"], entry["dim"]
        if not isinstance(cid, str) or not isinstance(dim, int) or isinstance(dim, bool):
            raise ChainError(f"malformed cell entry {entry!r}")
        cells.setdefault(dim, []).append(cid)
    boundary = {}
    for cid, faces in (data.get("boundary") or {}).items():
        if not isinstance(faces, list) or not all(isinstance(x, str) for x in faces):
            raise ChainError(f"boundary of {cid!r} must be a list of ids")
        if len(set(faces)) != len(faces):
            raise ChainError(f"duplicate id in boundary of {cid!r}")
        boundary[cid] = faces
    return ChainComplex.build(cells, boundary, name=str(data.get("name", "")))


def complex_to_json(c: ChainComplex) -> dict:
    cells = [{"id": n, "dim": k} for k in sorted(c.cells) for n in c.cells[k]]
    boundary = {}
    for k in sorted(c.cells):
        for n in c.cells[k]:
            faces = c.boundary.get(n)
            if faces:
                order = {m: i for i, m in enumerate(c.cells_of(k - 1))}
                boundary[n] = sorted(faces, key=lambda m: order.get(m, len(order)))
    return {"name": c.name, "cells": cells, "boundary": boundary}


def load_complex(path) -> ChainComplex:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChainError(f"{path}: not valid JSON ({exc})") from None
    return complex_from_json(data)
