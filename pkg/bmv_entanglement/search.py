"""Grid scans refined by bracketed one-dimensional solvers."""
from typing import Callable, List, Optional, Tuple

import numpy as np
import scipy.optimize

ScalarFunction = Callable[[float], float]
ArrayFunction = Callable[[np.ndarray], np.ndarray]

Interval = Tuple[float, float]


def negative_intervals(
    func: ArrayFunction,
    scalar_func: ScalarFunction,
    grid: np.ndarray,
    xtol: float = 1e-10,
) -> List[Interval]:
    """
    Find the maximal sub-intervals of [grid[0], grid[-1]] where func is negative.

    Boundaries are located on the grid by sign change and refined by bisection, so func
    only needs to be continuous. An interval that starts at grid[0] or ends at grid[-1]
    is closed there.
    """
    values = func(grid)
    negative = values < 0.0

    intervals: List[Interval] = []
    start: Optional[float] = float(grid[0]) if negative[0] else None
    for index in range(1, len(grid)):
        if negative[index] == negative[index - 1]:
            continue
        boundary = scipy.optimize.bisect(scalar_func, grid[index - 1], grid[index], xtol=xtol)
        if negative[index]:
            start = boundary
        else:
            intervals.append((float(start), float(boundary)))
            start = None
    if start is not None:
        intervals.append((float(start), float(grid[-1])))

    return intervals


def first_sign_change(values: np.ndarray) -> int:
    """Index i such that values[i] and values[i + 1] first differ in sign, or -1."""
    signs = np.sign(values)
    changes = np.nonzero(signs[:-1] * signs[1:] <= 0)[0]
    return int(changes[0]) if changes.size else -1


def refined_maximum(
    func: ArrayFunction, scalar_func: ScalarFunction, grid: np.ndarray
) -> Tuple[float, float]:
    """Maximize func over the grid, then refine an interior maximum by golden-section search."""
    values = func(grid)
    index = int(np.argmax(values))
    best_x, best_value = float(grid[index]), float(values[index])
    if index == 0 or index == len(grid) - 1:
        return best_x, best_value

    try:
        result = scipy.optimize.minimize_scalar(
            lambda x: -scalar_func(x),
            bracket=(grid[index - 1], grid[index], grid[index + 1]),
            method='golden',
            tol=1e-12,
        )
    except ValueError:
        # Flat neighbourhoods do not form a strict bracket
        return best_x, best_value

    if -result.fun > best_value and grid[index - 1] <= result.x <= grid[index + 1]:
        return float(result.x), float(-result.fun)
    return best_x, best_value
