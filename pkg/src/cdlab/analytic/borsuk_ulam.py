"""Linear combinations of two functions with derivative vanishing at antipodes.

``lam f + mu g`` has zero derivative at ``phi`` and ``phi + pi`` for some
``(lam : mu)`` exactly when the 2x2 matrix

    [ f'(phi)       g'(phi)      ]
    [ f'(phi + pi)  g'(phi + pi) ]

is singular, i.e. when ``h(phi) = f'(phi) g'(phi+pi) - g'(phi) f'(phi+pi)``
vanishes. ``h`` is antiperiodic, so its simple zeros on ``[0, pi)`` are odd
in number.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from cdlab.analytic.roots import antiperiodic_roots
from cdlab.analytic.trig import TrigPolynomial

# h is a degenerate pair when its coefficients are this small relative to |f'| |g'|.
DEGENERATE_PAIR_RATIO = 1e-8
DEFAULT_TOL = 1e-12


class Parity(enum.Enum):
    ODD = "Odd"
    EVEN = "Even"
    DEGENERATE = "Degenerate"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class KernelDirection:
    """Unit vector ``(lam, mu)`` with first nonzero coordinate positive."""

    lam: float
    mu: float

    @classmethod
    def normalized(cls, lam: float, mu: float) -> "KernelDirection":
        n = math.hypot(lam, mu)
        if n == 0:
            raise ValueError("kernel direction cannot be zero")
        lam, mu = lam / n, mu / n
        if lam < 0 or (lam == 0 and mu < 0):
            lam, mu = -lam, -mu
        return cls(lam + 0.0, mu + 0.0)


@dataclass(frozen=True)
class BURoot:
    phi: float
    direction: KernelDirection


@dataclass
class BUResult:
    roots: list[BURoot]
    degenerate: bool = False
    reason: str = ""

    @property
    def parity(self) -> Parity:
        if self.degenerate:
            return Parity.DEGENERATE
        return Parity.ODD if len(self.roots) % 2 else Parity.EVEN


def bu_determinant_poly(f: TrigPolynomial, g: TrigPolynomial) -> TrigPolynomial:
    """``h`` as a trig polynomial, built as ``P - P(. + pi)`` with ``P = f' g'(. + pi)``.

    Writing it this way makes ``h(phi + pi) = -h(phi)`` hold coefficient by
    coefficient, not just up to rounding.
    """
    p = f.derivative() * g.derivative().shifted_by_pi()
    return p - p.shifted_by_pi()


def bu_determinant(f: TrigPolynomial, g: TrigPolynomial, phi):
    df, dg = f.derivative(), g.derivative()
    return df(phi) * dg(np.asarray(phi) + math.pi) - dg(phi) * df(np.asarray(phi) + math.pi)


def kernel_direction(f: TrigPolynomial, g: TrigPolynomial, phi: float) -> KernelDirection:
    df, dg = f.derivative(), g.derivative()
    rows = [(float(df(phi)), float(dg(phi))), (float(df(phi + math.pi)), float(dg(phi + math.pi)))]
    a, b = max(rows, key=lambda r: math.hypot(*r))
    if a == 0 and b == 0:
        return KernelDirection(1.0, 0.0)
    return KernelDirection.normalized(-b, a)


def default_samples(f: TrigPolynomial, g: TrigPolynomial) -> int:
    return max(64, 16 * (f.degree + g.degree))


def bu_roots(
    f: TrigPolynomial,
    g: TrigPolynomial,
    samples: int | None = None,
    tol: float = DEFAULT_TOL,
) -> BUResult:
    if samples is None:
        samples = default_samples(f, g)
    if samples < 8 * (f.degree + g.degree):
        raise ValueError(f"need at least {8 * (f.degree + g.degree)} samples, got {samples}")
    h = bu_determinant_poly(f, g)
    scale = f.derivative().norm() * g.derivative().norm()
    if scale == 0 or h.norm() <= DEGENERATE_PAIR_RATIO * scale:
        return BUResult([], degenerate=True, reason="h vanishes identically")
    # the zero threshold is relative to |f'| |g'|, which bounds the size of h
    scan = antiperiodic_roots(h, samples, tol, zero_threshold=tol * scale)
    if scan.degenerate:
        return BUResult([], degenerate=True, reason=scan.reason)
    return BUResult([BURoot(r, kernel_direction(f, g, r)) for r in scan.roots])


def bu_parity(f: TrigPolynomial, g: TrigPolynomial, samples: int | None = None) -> Parity:
    return bu_roots(f, g, samples).parity


def random_pair(rng: np.random.Generator, degree: int = 4) -> tuple[TrigPolynomial, TrigPolynomial]:
    """Two trig polynomials with every coefficient up to ``degree`` uniform in [-1, 1]."""
    return TrigPolynomial.random(rng, degree), TrigPolynomial.random(rng, degree)
