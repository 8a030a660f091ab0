"""Sign-change root certification for antiperiodic functions.

A function with ``h(phi + pi) = -h(phi)`` changes sign an odd number of
times on any half-open window of length pi, provided its zeros are simple.
The scanner below samples one window, brackets every sign change and
refines it by bisection. Samples with ``|h|`` under the zero threshold
are skipped when both neighbours certify a crossing; runs of three or
more such samples, or a touch-and-return without crossing, mark the
function as degenerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

DEGENERATE_RUN = 3


@dataclass
class RootScan:
    roots: list[float] = field(default_factory=list)
    degenerate: bool = False
    reason: str = ""


def bisect(h: Callable[[float], float], lo: float, hi: float, h_lo: float, tol: float) -> float:
    """Shrink a sign-change bracket ``[lo, hi]`` to width ``tol``."""
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        h_mid = h(mid)
        if h_mid == 0.0:
            return mid
        if (h_mid > 0) == (h_lo > 0):
            lo, h_lo = mid, h_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def antiperiodic_roots(
    h: Callable,
    samples: int,
    tol: float,
    zero_threshold: float,
) -> RootScan:
    """Certified zeros of an antiperiodic ``h`` on ``[0, pi)``.

    ``h`` must accept numpy arrays. ``zero_threshold`` is the absolute value
    below which a sample is treated as numerically zero.
    """
    grid = np.arange(samples) * (math.pi / samples)
    values = np.asarray(h(grid), dtype=float)
    zero = np.abs(values) <= zero_threshold
    if zero.all():
        return RootScan(degenerate=True, reason="h vanishes on every sample")

    # walk one full period starting at the first clearly nonzero sample
    start = int(np.argmax(~zero))

    def sample(m: int) -> tuple[float, float, bool]:
        i, wraps = m % samples, m // samples
        sign = -1.0 if wraps % 2 else 1.0
        return grid[i] + wraps * math.pi, sign * values[i], bool(zero[i])

    def scalar_h(x: float) -> float:
        return float(h(np.array([x]))[0])

    roots = []
    prev_x, prev_v, _ = sample(start)
    run = 0
    for m in range(start + 1, start + samples + 1):
        x, v, is_zero = sample(m)
        if is_zero:
            run += 1
            if run >= DEGENERATE_RUN:
                return RootScan(degenerate=True, reason=f"|h| below threshold on {run} consecutive samples near {x:.6g}")
            continue
        if (v > 0) != (prev_v > 0):
            r = bisect(scalar_h, prev_x, x, prev_v, tol)
            roots.append(r)
        elif run:
            return RootScan(degenerate=True, reason=f"h touches zero without crossing near {prev_x:.6g}")
        prev_x, prev_v, run = x, v, 0

    folded = []
    for r in roots:
        r = math.fmod(r, math.pi)
        if r < 0:
            r += math.pi
        if math.pi - r <= tol:
            r = 0.0
        folded.append(r)
    return RootScan(sorted(folded))
