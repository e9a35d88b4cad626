"""Base class for parametrized surfaces r(q1, q2) embedded in R^3."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

# Relative step sizes (fraction of the coordinate span) for charts that
# only provide the point map.
FIRST_DERIVATIVE_STEP = 1e-5
# Second differences lose about eps/h^2 to roundoff, hence the larger step.
SECOND_DERIVATIVE_STEP = 1e-4


class SurfaceChart:
    """A chart r(q1, q2) on a rectangular domain.

    Subclasses implement :meth:`point`. Built-in surfaces also override
    :meth:`tangents` and :meth:`second_derivatives` with closed forms;
    otherwise second-order central differences are used. The unit normal
    is ``normal_sign * (r_1 x r_2) / |r_1 x r_2|``.
    """

    name: str = ""
    normal_sign: float = 1.0
    periodic: tuple[bool, bool] = (False, False)

    def __init__(self, domain: tuple[tuple[float, float], tuple[float, float]]):
        (a1, b1), (a2, b2) = domain
        if not (b1 > a1 and b2 > a2):
            raise ValueError(f"empty chart domain: {domain!r}")
        self.domain = ((float(a1), float(b1)), (float(a2), float(b2)))

    def point(self, q1: float, q2: float) -> np.ndarray:
        raise NotImplementedError

    @property
    def spans(self) -> tuple[float, float]:
        (a1, b1), (a2, b2) = self.domain
        return b1 - a1, b2 - a2

    def contains(self, q1: float, q2: float) -> bool:
        """Interior test; periodic coordinates accept any finite value."""
        (a1, b1), (a2, b2) = self.domain
        p1, p2 = self.periodic
        ok1 = math.isfinite(q1) and (p1 or a1 < q1 < b1)
        ok2 = math.isfinite(q2) and (p2 or a2 < q2 < b2)
        return ok1 and ok2

    def tangents(self, q1: float, q2: float) -> tuple[np.ndarray, np.ndarray]:
        h1, h2 = (FIRST_DERIVATIVE_STEP * s for s in self.spans)
        r1 = (self.point(q1 + h1, q2) - self.point(q1 - h1, q2)) / (2 * h1)
        r2 = (self.point(q1, q2 + h2) - self.point(q1, q2 - h2)) / (2 * h2)
        return r1, r2

    def second_derivatives(
        self, q1: float, q2: float
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (r_11, r_12, r_22)."""
        h1, h2 = (SECOND_DERIVATIVE_STEP * s for s in self.spans)
        p = self.point
        r0 = p(q1, q2)
        r11 = (p(q1 + h1, q2) - 2 * r0 + p(q1 - h1, q2)) / (h1 * h1)
        r22 = (p(q1, q2 + h2) - 2 * r0 + p(q1, q2 - h2)) / (h2 * h2)
        r12 = (
            p(q1 + h1, q2 + h2)
            - p(q1 + h1, q2 - h2)
            - p(q1 - h1, q2 + h2)
            + p(q1 - h1, q2 - h2)
        ) / (4 * h1 * h2)
        return r11, r12, r22

    def normal(self, q1: float, q2: float) -> np.ndarray:
        r1, r2 = self.tangents(q1, q2)
        cross = np.cross(r1, r2)
        return self.normal_sign * cross / np.linalg.norm(cross)

    def interior_points(self, count: int, seed: int = 0, margin: float = 0.1):
        """Uniform random points at least ``margin * span`` from the edges."""
        rng = np.random.default_rng(seed)
        (a1, b1), (a2, b2) = self.domain
        s1, s2 = self.spans
        q1 = rng.uniform(a1 + margin * s1, b1 - margin * s1, count)
        q2 = rng.uniform(a2 + margin * s2, b2 - margin * s2, count)
        return list(zip(q1.tolist(), q2.tolist()))

    def describe(self) -> str:
        return self.name


class FunctionChart(SurfaceChart):
    """User surface given only by its point map; derivatives are numeric."""

    def __init__(
        self,
        func: Callable[[float, float], "np.ndarray"],
        domain: tuple[tuple[float, float], tuple[float, float]],
        name: str = "function",
    ):
        super().__init__(domain)
        self._func = func
        self.name = name

    def point(self, q1: float, q2: float) -> np.ndarray:
        return np.asarray(self._func(q1, q2), dtype=float)
