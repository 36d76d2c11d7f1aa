from collections.abc import Callable

from pydantic import NonNegativeInt
from pydantic.dataclasses import dataclass

from qpf_rdm.exceptions import NoConvergenceError


@dataclass(frozen=True)
class SecantResult:
    root: float
    iterations: NonNegativeInt
    iterates: list[float]


def secant(
    func: Callable[[float], float],
    x0: float,
    x1: float,
    step_tolerance: float,
    max_iterations: int,
    bounds: tuple[float, float],
) -> SecantResult:
    """
    Secant iteration x_{k+1} = x_k - g(x_k) (x_k - x_{k-1}) / (g(x_k) - g(x_{k-1}))
    Args:
        func (callable): function whose root is sought
        x0 (float): first starting point
        x1 (float): second starting point
        step_tolerance (float): stop once |x_{k+1} - x_k| falls below this
        max_iterations (int): stop after this many updates
        bounds (tuple): iterates leaving [lo, hi] count as divergence
    Returns:
        SecantResult with the last iterate and every iterate visited
    Raises:
        NoConvergenceError: an iterate left the bounds or the iteration cap was hit
    """
    lo, hi = bounds
    iterates = [x0, x1]
    f0, f1 = func(x0), func(x1)

    for iteration in range(1, max_iterations + 1):
        if f1 == f0:
            # flat secant: the two points already agree on g
            return SecantResult(root=(x0 + x1) / 2, iterations=iteration - 1, iterates=iterates)

        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        iterates.append(x2)
        if not lo <= x2 <= hi:
            raise NoConvergenceError(
                f"secant iterate {x2!r} left [{lo}, {hi}] after {iteration} steps"
            )

        if abs(x2 - x1) < step_tolerance:
            return SecantResult(root=x2, iterations=iteration, iterates=iterates)

        x0, f0 = x1, f1
        x1, f1 = x2, func(x2)

    raise NoConvergenceError(
        f"secant did not settle within {max_iterations} steps, last iterate {iterates[-1]!r}"
    )
