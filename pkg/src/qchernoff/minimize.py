"""Golden-section minimisation of convex functions on the unit interval."""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Callable

INV_PHI = (sqrt(5.0) - 1.0) / 2.0

S_TOL = 1e-10
MAX_EVALUATIONS = 200
FLAT_TOL = 1e-12
POLISH_HALF_WIDTH = 1e-3
POLISH_TOL = 1e-13


@dataclass(frozen=True)
class UnitIntervalMinimum:
    x: float
    value: float
    flat: bool
    evaluations: int


def golden_section_unit(
    f: Callable[[float], float],
    tol: float = S_TOL,
    max_evaluations: int = MAX_EVALUATIONS,
    flat_tol: float = FLAT_TOL,
    derivative: Callable[[float], float] | None = None,
) -> UnitIntervalMinimum:
    """Minimise a convex ``f`` over the closed interval ``[0, 1]``.

    The endpoints are evaluated explicitly and compete with the interior
    golden-section estimate, so minima attained at ``x = 0`` or ``x = 1``
    are reported exactly.  On exact ties the endpoint wins.

    If every sampled value lies within ``flat_tol`` of every other, the
    function is declared flat and ``x = 0.5`` is reported.

    Value comparisons cannot locate the minimiser of a very flat curve
    better than ``sqrt(eps / f'')``.  When ``derivative`` is supplied, an
    interior minimiser is refined by bisection on the sign of the
    derivative within ``POLISH_HALF_WIDTH`` of the golden-section estimate.
    """
    values: list[float] = []

    def evaluate(x: float) -> float:
        v = float(f(x))
        values.append(v)
        return v

    f_lo_end = evaluate(0.0)
    f_hi_end = evaluate(1.0)

    lo, hi = 0.0, 1.0
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1 = evaluate(x1)
    f2 = evaluate(x2)
    while hi - lo > tol and len(values) < max_evaluations:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = evaluate(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = evaluate(x2)

    interior = (x1, f1) if f1 <= f2 else (x2, f2)
    x_best, f_best = min([(0.0, f_lo_end), (1.0, f_hi_end), interior], key=lambda t: t[1])

    if max(values) - min(values) <= flat_tol:
        return UnitIntervalMinimum(0.5, evaluate(0.5), True, len(values))
    if derivative is not None and 0.0 < x_best < 1.0:
        x_pol = _bisect_derivative(derivative, x_best, max_evaluations - len(values))
        if x_pol is not None:
            f_pol = evaluate(x_pol)
            if f_pol <= f_best + 4 * 2.2e-16 * abs(f_best):
                x_best, f_best = x_pol, f_pol
    return UnitIntervalMinimum(x_best, f_best, False, len(values))


def _bisect_derivative(df: Callable[[float], float], x: float, budget: int) -> float | None:
    a = max(0.0, x - POLISH_HALF_WIDTH)
    b = min(1.0, x + POLISH_HALF_WIDTH)
    if not (df(a) < 0.0 < df(b)):
        return None
    budget -= 3
    while b - a > POLISH_TOL and budget > 0:
        m = 0.5 * (a + b)
        if df(m) < 0.0:
            a = m
        else:
            b = m
        budget -= 1
    return 0.5 * (a + b)
