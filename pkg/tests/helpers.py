"""Independent oracles used by the test suite.

These deliberately avoid the package's own numeric paths: plain-Python
accumulation for the correlation coefficient and a componentwise loop for
the swarm step, so agreement checks actually compare two routes.
"""

from __future__ import annotations

import math


def oracle_pearson(x, y) -> float:
    """Two-pass correlation transcription with plain sequential sums."""
    n = len(x)
    mean_x = sum(x) / n
    mean_y = sum(y) / n
    num = sum((a - mean_x) * (b - mean_y) for a, b in zip(x, y))
    den_x = sum((a - mean_x) ** 2 for a in x)
    den_y = sum((b - mean_y) ** 2 for b in y)
    return num / math.sqrt(den_x * den_y)


def oracle_step(x, v, pbest, gbest, c1, c2, u1, u2, lower, upper):
    """Hand transcription of the velocity/position update plus bound repair.

    Returns (position, velocity) as plain lists.  Clamps out-of-bounds
    position components and zeroes the velocity component that violated.
    """
    d = len(x)
    new_v = [v[j] + (c1 * u1) * (pbest[j] - x[j]) + (c2 * u2) * (gbest[j] - x[j]) for j in range(d)]
    new_x = [x[j] + new_v[j] for j in range(d)]
    for j in range(d):
        if new_x[j] < lower[j]:
            new_x[j] = lower[j]
            new_v[j] = 0.0
        elif new_x[j] > upper[j]:
            new_x[j] = upper[j]
            new_v[j] = 0.0
    return new_x, new_v
