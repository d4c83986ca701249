"""Small 1-D maximization utilities (golden-section with a unimodality pre-scan)."""

from __future__ import annotations

import math
from typing import Callable

__all__ = ["golden_section_max", "NumericFailure"]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class NumericFailure(RuntimeError):
    """A numeric search failed to bracket or refine an optimum."""


def golden_section_max(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-8,
    prescan: int = 31,
) -> tuple[float, float]:
    """Maximize f on [a, b]; returns (x_max, f(x_max)).

    A coarse prescan locates the best of `prescan` equispaced points and
    asserts the maximum is interior (or at a usable edge bracket); golden
    section then refines inside the two neighboring points.
    """
    if not b > a:
        raise NumericFailure(f"invalid bracket [{a}, {b}]")
    xs = [a + (b - a) * i / (prescan - 1) for i in range(prescan)]
    fs = [f(x) for x in xs]
    k = max(range(prescan), key=fs.__getitem__)
    lo = xs[max(k - 1, 0)]
    hi = xs[min(k + 1, prescan - 1)]
    c = hi - (hi - lo) * _INVPHI
    d = lo + (hi - lo) * _INVPHI
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - (hi - lo) * _INVPHI
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + (hi - lo) * _INVPHI
            fd = f(d)
    x = 0.5 * (lo + hi)
    return x, f(x)
