"""Real trigonometric polynomials ``a0 + sum_k a_k cos(k phi) + b_k sin(k phi)``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    a0: float
    cos: np.ndarray
    sin: np.ndarray

    def __init__(self, a0: float = 0.0, cos: Sequence[float] = (), sin: Sequence[float] = ()):
        n = max(len(cos), len(sin))
        c = np.zeros(n)
        s = np.zeros(n)
        c[: len(cos)] = cos
        s[: len(sin)] = sin
        if not (np.isfinite(a0) and np.all(np.isfinite(c)) and np.all(np.isfinite(s))):
            raise ValueError("trig polynomial coefficients must be finite")
        c.flags.writeable = False
        s.flags.writeable = False
        object.__setattr__(self, "a0", float(a0))
        object.__setattr__(self, "cos", c)
        object.__setattr__(self, "sin", s)

    @classmethod
    def constant(cls, value: float) -> "TrigPolynomial":
        return cls(value)

    @classmethod
    def cos_k(cls, k: int, scale: float = 1.0) -> "TrigPolynomial":
        coeffs = [0.0] * k
        coeffs[k - 1] = scale
        return cls(0.0, coeffs, [])

    @classmethod
    def sin_k(cls, k: int, scale: float = 1.0) -> "TrigPolynomial":
        coeffs = [0.0] * k
        coeffs[k - 1] = scale
        return cls(0.0, [], coeffs)

    @classmethod
    def random(cls, rng: np.random.Generator, degree: int, constant: bool = True) -> "TrigPolynomial":
        """Coefficients uniform in [-1, 1] up to ``degree``."""
        a0 = rng.uniform(-1.0, 1.0) if constant else 0.0
        return cls(a0, rng.uniform(-1.0, 1.0, degree), rng.uniform(-1.0, 1.0, degree))

    @property
    def degree(self) -> int:
        nz = np.nonzero((self.cos != 0) | (self.sin != 0))[0]
        return int(nz[-1]) + 1 if len(nz) else 0

    def __call__(self, phi):
        phi = np.asarray(phi, dtype=float)
        k = np.arange(1, len(self.cos) + 1)
        if len(k) == 0:
            return self.a0 + 0.0 * phi
        angles = np.multiply.outer(phi, k)
        return self.a0 + np.cos(angles) @ self.cos + np.sin(angles) @ self.sin

    eval = __call__

    def derivative(self, order: int = 1) -> "TrigPolynomial":
        p = self
        k = np.arange(1, len(self.cos) + 1, dtype=float)
        for _ in range(order):
            p = TrigPolynomial(0.0, k * p.sin, -k * p.cos)
        return p

    def shifted_by_pi(self) -> "TrigPolynomial":
        """``phi -> f(phi + pi)``: harmonic k picks up the sign (-1)^k."""
        sign = (-1.0) ** np.arange(1, len(self.cos) + 1)
        return TrigPolynomial(self.a0, sign * self.cos, sign * self.sin)

    # complex form c_k, k = -d..d, with f = sum c_k e^{ik phi}
    def _complex(self) -> np.ndarray:
        d = len(self.cos)
        out = np.zeros(2 * d + 1, dtype=complex)
        out[d] = self.a0
        pos = 0.5 * (self.cos - 1j * self.sin)
        out[d + 1:] = pos
        out[:d] = np.conj(pos[::-1])
        return out

    @classmethod
    def _from_complex(cls, c: np.ndarray) -> "TrigPolynomial":
        d = (len(c) - 1) // 2
        pos = c[d + 1:]
        return cls(c[d].real, 2.0 * pos.real, -2.0 * pos.imag)

    def __mul__(self, other):
        if isinstance(other, TrigPolynomial):
            return TrigPolynomial._from_complex(np.convolve(self._complex(), other._complex()))
        return TrigPolynomial(self.a0 * other, self.cos * other, self.sin * other)

    __rmul__ = __mul__

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        n = max(len(self.cos), len(other.cos))
        return TrigPolynomial(
            self.a0 + other.a0,
            _pad(self.cos, n) + _pad(other.cos, n),
            _pad(self.sin, n) + _pad(other.sin, n),
        )

    def __neg__(self) -> "TrigPolynomial":
        return TrigPolynomial(-self.a0, -self.cos, -self.sin)

    def __sub__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return self + (-other)

    def coefficients(self) -> np.ndarray:
        return np.concatenate([[self.a0], self.cos, self.sin])

    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients()))

    def same_coefficients(self, other: "TrigPolynomial") -> bool:
        n = max(len(self.cos), len(other.cos))
        return (
            self.a0 == other.a0
            and np.array_equal(_pad(self.cos, n), _pad(other.cos, n))
            and np.array_equal(_pad(self.sin, n), _pad(other.sin, n))
        )

    def to_json(self) -> dict:
        return {"a0": self.a0, "cos": self.cos.tolist(), "sin": self.sin.tolist()}

    @classmethod
    def from_json(cls, data: Mapping) -> "TrigPolynomial":
        if not isinstance(data, Mapping):
            raise ValueError(f"trig polynomial must be an object, got {data!r}")
        unknown = set(data) - {"a0", "cos", "sin"}
        if unknown:
            raise ValueError(f"unknown trig polynomial keys {sorted(unknown)}")
        return cls(float(data.get("a0", 0.0)), list(data.get("cos", [])), list(data.get("sin", [])))

    def __repr__(self) -> str:
        return f"TrigPolynomial(a0={self.a0!r}, cos={self.cos.tolist()!r}, sin={self.sin.tolist()!r})"


def _pad(x: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(n)
    out[: len(x)] = x
    return out


def cos() -> TrigPolynomial:
    return TrigPolynomial.cos_k(1)


def sin() -> TrigPolynomial:
    return TrigPolynomial.sin_k(1)


@dataclass(frozen=True)
class MapTriple:
    """A map ``S^1 -> R^3`` with trigonometric components."""

    components: tuple[TrigPolynomial, TrigPolynomial, TrigPolynomial]

    def __post_init__(self):
        if len(self.components) != 3:
            raise ValueError("a map triple has exactly three components")

    def __call__(self, phi) -> np.ndarray:
        return np.stack([f(phi) for f in self.components], axis=-1)

    @property
    def degree(self) -> int:
        return max(f.degree for f in self.components)
