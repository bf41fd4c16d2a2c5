"""The limiting edge-product density of the two-clique construction.

With a fraction ``x`` of the vertices in the {1,2}-clique, the product of
edge counts is asymptotically ``f(x) * n**6`` where

    f(x) = x^2/2 * (x^2/2 + (1-x)^2/2) * (x(1-x) + (1-x)^2/2)
         = x^2 (1 - x^2) (x^2 + (1-x)^2) / 8.

``gamma`` is the maximum of ``f`` on [0, 1] and ``x0`` its maximizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from rainbowtri.coloring import EdgeCounts, product
from rainbowtri.constructions import theorem1_counts

GAMMA_LOWER = Fraction(1, 52)
GAMMA_UPPER = Fraction(1, 51)
# maximizer value printed alongside the bounds above; it does not satisfy them
PRINTED_X0 = 0.729

IDENTITY_TOL = 1e-14
DEFAULT_TOL = 1e-10
GRID_POINTS = 10_001

_INV_PHI = (math.sqrt(5) - 1) / 2


def objective_product_form(x: float) -> float:
    return x**2 / 2 * (x**2 / 2 + (1 - x) ** 2 / 2) * (x * (1 - x) + (1 - x) ** 2 / 2)


def objective_simplified(x):
    """Expanded form; accepts scalars or numpy arrays."""
    return x**2 * (1 - x**2) * (x**2 + (1 - x) ** 2) / 8


def eval_objective(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    value = objective_product_form(x)
    alt = objective_simplified(x)
    if abs(value - alt) > IDENTITY_TOL:
        raise ArithmeticError(f"objective forms disagree at x={x}: {value} vs {alt}")
    return value


@dataclass(frozen=True)
class OptimizationResult:
    x0: float
    gamma: float
    bracket_width: float
    evaluations: int

    @property
    def bounds_ok(self) -> bool:
        """``1/52 < gamma < 1/51``, compared exactly."""
        g = Fraction(self.gamma)
        return GAMMA_LOWER < g < GAMMA_UPPER


def _grid_argmax(points: int) -> tuple[float, float, float]:
    xs = np.linspace(0.0, 1.0, points)
    vals = objective_simplified(xs)
    i = int(np.argmax(vals))  # first index on ties, i.e. smaller x
    step = 1.0 / (points - 1)
    lo = max(0.0, xs[i] - step)
    hi = min(1.0, xs[i] + step)
    return lo, hi, float(xs[i])


def golden_section_max(f, lo: float, hi: float, tol: float) -> tuple[float, float, int]:
    """Shrink ``[lo, hi]`` around a maximum of a unimodal ``f`` to width <= tol.

    Returns ``(lo, hi, evaluations)``.
    """
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    evals = 2
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
        evals += 1
    return lo, hi, evals


@lru_cache(maxsize=32)
def maximize_objective(tol: float = DEFAULT_TOL, grid_points: int = GRID_POINTS) -> OptimizationResult:
    """Global maximum of the objective: grid bracketing, then golden section."""
    if not tol >= 1e-12:
        raise ValueError(f"tol must be >= 1e-12, got {tol}")
    if grid_points < 10_001:
        raise ValueError("grid needs at least 10^4 intervals")
    lo, hi, _ = _grid_argmax(grid_points)
    lo, hi, evals = golden_section_max(eval_objective, lo, hi, tol)
    x0 = (lo + hi) / 2
    return OptimizationResult(x0, eval_objective(x0), hi - lo, evals + grid_points + 1)


def x0_discrepancy(result: OptimizationResult | None = None) -> dict:
    """Compare the computed maximizer with the printed value 0.729."""
    result = result or maximize_objective()
    at_printed = eval_objective(PRINTED_X0)
    return {
        "printed_x0": PRINTED_X0,
        "objective_at_printed_x0": at_printed,
        "printed_x0_within_bounds": bool(GAMMA_LOWER < Fraction(at_printed) < GAMMA_UPPER),
        "computed_x0": result.x0,
        "x0_gap": result.x0 - PRINTED_X0,
    }


def frankl_bound(n: int) -> int:
    return (n * n // 4) ** 3


@dataclass(frozen=True)
class DiscreteSweepRow:
    n: int
    best_a: int
    counts: EdgeCounts
    product: int
    frankl_bound: int
    beats_frankl: bool

    def csv_fields(self) -> list:
        return [
            self.n,
            self.best_a,
            *self.counts,
            self.product,
            self.frankl_bound,
            str(self.beats_frankl).lower(),
        ]


SWEEP_CSV_HEADER = ["n", "best_a", "e1", "e2", "e3", "product", "frankl_bound", "beats_frankl"]


def discrete_best(n: int) -> DiscreteSweepRow:
    """Best clique size ``a`` for the two-clique construction, by exact sweep."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    best_a, best_counts, best_prod = 0, theorem1_counts(n, 0), -1
    for a in range(n + 1):
        counts = theorem1_counts(n, a)
        p = product(counts)
        if p > best_prod:
            best_a, best_counts, best_prod = a, counts, p
    fb = frankl_bound(n)
    return DiscreteSweepRow(n, best_a, best_counts, best_prod, fb, best_prod > fb)


def sweep(n_max: int, n_min: int = 2) -> list[DiscreteSweepRow]:
    return [discrete_best(n) for n in range(max(2, n_min), n_max + 1)]


def crossover_n(limit: int) -> int | None:
    """Smallest ``n <= limit`` where the construction beats ``floor(n^2/4)^3``."""
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    for n in range(2, limit + 1):
        if discrete_best(n).beats_frankl:
            return n
    return None


def convergence_report(n_list: Iterable[int], gamma: float | None = None) -> list[tuple[int, float, float]]:
    """Rows ``(n, product/n^6, gamma - product/n^6)`` at the best integer ``a``."""
    if gamma is None:
        gamma = maximize_objective().gamma
    rows = []
    for n in n_list:
        ratio = discrete_best(n).product / n**6
        rows.append((n, ratio, gamma - ratio))
    return rows
