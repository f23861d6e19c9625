"""Dimension estimators: analytic, box-counting, and multifractal.

The analytic route solves sum(r_i^s) = 1 for the similarity exponent;
the empirical route counts grid boxes against exact stage endpoints and
regresses log N(eps) on log(1/eps).  For weighted self-similar measures
the moment exponent tau(q) solves sum(p_i^q r_i^tau) = 1 and the local
dimension/spectrum pair comes from the transform
alpha = -dtau/dq, f = q*alpha + tau.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .grids import GeneralIfsSpec, StageSet

BISECTION_TOL = 1e-12
DIFF_STEP = 1e-5

_MAX_BISECT = 200


@dataclass(frozen=True)
class DimensionEstimate:
    method: str  # "similarity" | "boxcount"
    value: float
    residual: float  # regression r^2, or |sum r^s - 1| at the root
    sample_points: tuple[tuple[Fraction, int], ...] | None = None


@dataclass(frozen=True)
class MultifractalPoint:
    q: float
    tau: float
    alpha: float
    f: float


def _bisect_decreasing(fn, lo: float, hi: float) -> float:
    """Root of a strictly decreasing function, bracketed then bisected to ulp."""
    span = hi - lo
    while fn(lo) <= 0:
        lo -= span
        span *= 2
    span = hi - lo
    while fn(hi) >= 0:
        hi += span
        span *= 2
    for _ in range(_MAX_BISECT):
        mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            break
        if fn(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def similarity_dimension(ratios: Sequence) -> DimensionEstimate:
    """Exponent s solving sum(r_i^s) = 1 for contraction ratios in (0, 1).

    Equal ratios take the closed form log N / log(1/r), cross-checked
    against the bisection root; unequal ratios use bisection alone.
    """
    if not ratios:
        raise InputError("need at least one contraction ratio")
    vals = [float(Fraction(r)) for r in ratios]
    if any(not (0 < r < 1) for r in vals):
        raise InputError(f"ratios must lie in (0, 1), got {vals}")
    if len(vals) == 1:
        return DimensionEstimate(method="similarity", value=0.0, residual=0.0)

    def excess(s: float) -> float:
        return math.fsum(r**s for r in vals) - 1.0

    root = _bisect_decreasing(excess, 0.0, 1.0)
    if all(r == vals[0] for r in vals):
        closed = math.log(len(vals)) / math.log(1 / vals[0])
        if abs(closed - root) > BISECTION_TOL:
            raise ArithmeticError(
                f"closed form {closed} and bisection {root} disagree beyond "
                f"{BISECTION_TOL}"
            )
        root = closed
    return DimensionEstimate(
        method="similarity", value=root, residual=abs(excess(root))
    )


def box_count(stage: StageSet, epsilon) -> int:
    """Number of grid boxes [j*eps, (j+1)*eps) overlapping the stage's union.

    A box counts when its overlap with some stage interval has positive
    length; touching at a single endpoint is not enough, so exactly
    aligned scales reproduce the ancestor-cell counts.  All index
    arithmetic is exact rational floor/ceil, and boxes shared by
    neighbouring intervals are counted once.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise InputError(f"epsilon must be positive, got {eps}")
    count = 0
    last = -1
    for left, right in stage.intervals():
        j_lo = (left / eps).__floor__()
        j_hi = -((-right / eps).__floor__()) - 1  # ceil(right/eps) - 1
        j_lo = max(j_lo, last + 1)
        if j_hi >= j_lo:
            count += j_hi - j_lo + 1
            last = j_hi
    return count


def box_dimension_fit(stage: StageSet, scales: Sequence) -> DimensionEstimate:
    """OLS slope of log N(eps) against log(1/eps) over the given scales."""
    eps_list = sorted({Fraction(e) for e in scales}, reverse=True)
    if len(eps_list) < 3:
        raise InputError(
            f"need at least 3 distinct scales, got {len(eps_list)}"
        )
    points = [(eps, box_count(stage, eps)) for eps in eps_list]
    xs = [math.log(float(1 / eps)) for eps, _ in points]
    ys = [math.log(n) for _, n in points]
    fit = statistics.linear_regression(xs, ys)
    try:
        r2 = statistics.correlation(xs, ys) ** 2
    except statistics.StatisticsError:
        # all counts equal: slope 0 fits exactly
        r2 = 1.0
    return DimensionEstimate(
        method="boxcount",
        value=fit.slope,
        residual=r2,
        sample_points=tuple(points),
    )


def write_fit_points_csv(estimate: DimensionEstimate, fp, comments: Sequence[str] = ()) -> None:
    """Plot-ready CSV of the regression sample: epsilon, count, and their logs."""
    if estimate.sample_points is None:
        raise InputError("estimate carries no sample points (similarity method?)")
    for line in comments:
        fp.write(f"# {line}\n")
    fp.write("epsilon,count,log_inv_eps,log_count\n")
    for eps, count in estimate.sample_points:
        fp.write(
            f"{eps.numerator}/{eps.denominator},{count},"
            f"{math.log(float(1 / eps))!r},{math.log(count)!r}\n"
        )


def _tau_solver(ifs: GeneralIfsSpec):
    weights = ifs.weights
    if weights is None:
        raise InputError("multifractal spectrum needs per-map weights")
    probs = [float(w) for w in weights]
    ratios = [float(r) for r in ifs.ratios]
    if any(not (0 < r < 1) for r in ratios):
        raise InputError(f"ratios must lie in (0, 1), got {ratios}")

    def tau(q: float) -> float:
        def excess(t: float) -> float:
            return math.fsum(p**q * r**t for p, r in zip(probs, ratios)) - 1.0

        return _bisect_decreasing(excess, -1.0, 1.0)

    return tau


def multifractal_spectrum(
    ifs: GeneralIfsSpec,
    q_grid: Sequence[float],
    diff_step: float = DIFF_STEP,
) -> list[MultifractalPoint]:
    """Moment exponents and the local-dimension spectrum on a q grid.

    tau(q) is bisected to machine precision so the central difference
    alpha(q) = -(tau(q+h) - tau(q-h)) / 2h stays well below the step's
    own truncation error.
    """
    tau = _tau_solver(ifs)
    points = []
    for q in q_grid:
        q = float(q)
        t = tau(q)
        alpha = -(tau(q + diff_step) - tau(q - diff_step)) / (2 * diff_step)
        points.append(
            MultifractalPoint(q=q, tau=t, alpha=alpha, f=q * alpha + t)
        )
    return points
