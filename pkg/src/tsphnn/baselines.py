"""Classical baselines: nearest-neighbour construction, 2-opt and 3-opt.

Both local searches use best-improvement move selection (no RNG involved,
so results are deterministic) and stop when no move gains more than a
small threshold, which prevents floating-point cycling.
"""

import numpy as np

from . import _kernels
from .errors import TsphnnError
from .instance import DistanceMatrix
from .tour import Tour

MIN_GAIN = 1e-12


def greedy_nearest_neighbor(m: DistanceMatrix, start: int = 0) -> Tour:
    """From each city go to the nearest unvisited one, ties to the lowest
    index, closing back to the start."""
    n = m.n
    if not 0 <= start < n:
        raise TsphnnError(f"start city {start} out of range 0..{n - 1}")
    visited = np.zeros(n, dtype=bool)
    order = [start]
    visited[start] = True
    current = start
    for _ in range(n - 1):
        row = np.where(visited, np.inf, m.d[current])
        current = int(np.argmin(row))
        order.append(current)
        visited[current] = True
    return Tour(tuple(order))


def two_opt(m: DistanceMatrix, t: Tour) -> Tour:
    """Repeat the best-improving segment reversal until none improves."""
    if t.n != m.n:
        raise TsphnnError(f"tour has {t.n} cities, matrix has {m.n}")
    out = _kernels.two_opt_loop(m.d, t.as_array(), MIN_GAIN)
    return Tour(tuple(int(v) for v in out))


def three_opt(m: DistanceMatrix, t: Tour) -> Tour:
    """Repeat the best of all 3-edge removals with their 7 reconnections.

    Subsumes 2-opt moves; for n < 5 there are no proper 3-opt moves, so
    this falls back to :func:`two_opt`.
    """
    if t.n != m.n:
        raise TsphnnError(f"tour has {t.n} cities, matrix has {m.n}")
    if m.n < 5:
        return two_opt(m, t)
    out = _kernels.three_opt_loop(m.d, t.as_array(), MIN_GAIN)
    return Tour(tuple(int(v) for v in out))
