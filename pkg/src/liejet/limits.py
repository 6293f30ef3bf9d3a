"""Limit extraction on geometric step sequences and power-law rate fits."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

EPS = np.finfo(float).eps


def geometric_steps(epsilon: float, steps: int) -> list[float]:
    """``epsilon * 2**-k`` for ``k = 1..steps``."""
    return [epsilon * 2.0 ** (-k) for k in range(1, steps + 1)]


def richardson_table(values, ratio: float, levels: int) -> list[list]:
    """Richardson table for samples at ``s_k = s_0 / ratio**k``.

    ``values[k]`` is assumed to behave like ``L + a_1 s_k + a_2 s_k**2 + ...``;
    row ``j`` of the table has the first ``j`` error terms eliminated.
    Entries may be numbers or anything supporting ``+``, ``-`` and division
    by a float.
    """
    table = [list(values)]
    for j in range(1, levels + 1):
        prev = table[-1]
        if len(prev) < 2:
            break
        w = ratio ** j
        table.append([(prev[k + 1] * w - prev[k]) / (w - 1.0) for k in range(len(prev) - 1)])
    return table


@dataclass
class RateFit:
    """Least-squares fit of ``residual ~ c * x**rate`` on the points above the noise floor.

    ``rate`` is ``inf`` when every residual sits at the noise floor (the
    quantity vanishes faster than any power we can resolve).
    """

    rate: float
    xs: list[float] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)
    used: list[bool] = field(default_factory=list)
    # log-log correlation of the fitted points; nan with fewer than three
    correlation: float = float("nan")

    @property
    def at_noise_floor(self) -> bool:
        return math.isinf(self.rate)

    def tail_rate(self, points: int = 2) -> float:
        """Slope over the ``points`` smallest steps above the noise floor.

        With the default this is the observed order from the finest resolved
        pair of steps.  The full fit can be dragged down by coarse steps
        where the leading error term nearly cancels against a higher one.
        """
        pts = [(math.log(x), math.log(r))
               for x, r, u in zip(self.xs, self.residuals, self.used) if u]
        if len(pts) < 2:
            return self.rate
        pts = sorted(pts)[:points]
        lx, ly = np.array(pts).T
        return float(np.polyfit(lx, ly, 1)[0])

    def table(self) -> list[dict]:
        return [
            {"x": x, "residual": r, "used": u}
            for x, r, u in zip(self.xs, self.residuals, self.used)
        ]


def fit_rate(xs, residuals, floors) -> RateFit:
    xs = [float(x) for x in xs]
    residuals = [float(r) for r in residuals]
    if np.isscalar(floors):
        floors = [float(floors)] * len(xs)
    used = [math.isfinite(r) and r > f for r, f in zip(residuals, floors)]
    pts = [(math.log(x), math.log(r)) for x, r, u in zip(xs, residuals, used) if u]
    if len(pts) < 2:
        if any(not math.isfinite(r) for r in residuals):
            return RateFit(float("nan"), xs, residuals, used)
        return RateFit(float("inf"), xs, residuals, used)
    lx, ly = np.array(pts).T
    slope = float(np.polyfit(lx, ly, 1)[0])
    corr = float("nan")
    if len(pts) >= 3 and np.ptp(ly) > 0:
        corr = float(np.corrcoef(lx, ly)[0, 1])
    return RateFit(slope, xs, residuals, used, corr)
