"""Error metric on the fixed evaluation grid and convergence-rate fits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg as la
from scipy.integrate import trapezoid

from .errors import DimensionError, ValidationError

__all__ = [
    "GRID_SIZE",
    "PLATEAU_FLOOR",
    "ConvergenceFit",
    "ErrorRecord",
    "derivative_grid",
    "discrete_error",
    "evaluation_grid",
    "fit_rate",
    "fit_slope",
]

GRID_SIZE = 4000
PLATEAU_FLOOR = 1e-13
METRIC_MODES = ("euclidean", "trapezoid")
SCALES = ("semilogy", "loglog")


def evaluation_grid() -> np.ndarray:
    """4000 equispaced points on [-1, 1], endpoints included."""
    g = np.linspace(-1.0, 1.0, GRID_SIZE)
    g[GRID_SIZE // 2:] = -g[: GRID_SIZE // 2][::-1]
    return g


def derivative_grid() -> np.ndarray:
    """4000 points for derivative errors, none of them at x = 0.

    These are the midpoints of the 4001-point equispaced grid, which does
    contain 0; the half-spacing offset keeps the kink of |x| out of the
    sample while staying symmetric about the origin.
    """
    g = np.linspace(-1.0, 1.0, GRID_SIZE + 1)
    g[GRID_SIZE // 2 + 1:] = -g[: GRID_SIZE // 2][::-1]
    g[GRID_SIZE // 2] = 0.0
    return 0.5 * (g[1:] + g[:-1])


def discrete_error(approx, exact, mode: str = "euclidean", grid=None) -> float:
    """Size of ``approx - exact`` sampled on the evaluation grid.

    ``"euclidean"`` is the plain 2-norm of the difference vector, which is
    the scale the reference tables use.  ``"trapezoid"`` is the continuum
    L2 norm ``sqrt(int (approx - exact)**2 dx)`` by the trapezoidal rule on
    `grid` (default: :func:`evaluation_grid`).
    """
    a = np.asarray(approx, dtype=np.float64)
    b = np.asarray(exact, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape} vs {b.shape}")
    d = a - b
    if mode == "euclidean":
        # BLAS nrm2 rescales internally, so tiny or huge differences neither
        # underflow nor overflow when squared
        return float(la.norm(d)) if d.size else 0.0
    if mode == "trapezoid":
        if grid is None:
            grid = evaluation_grid()
        grid = np.asarray(grid, dtype=np.float64)
        if grid.shape != d.shape:
            raise DimensionError("grid and samples differ in length")
        peak = float(np.max(np.abs(d))) if d.size else 0.0
        if peak == 0.0 or not math.isfinite(peak):
            return peak
        u = d / peak
        return peak * float(math.sqrt(trapezoid(u * u, grid)))
    raise ValidationError(f"unknown metric mode {mode!r}")


@dataclass
class ErrorRecord:
    """One row of a convergence sweep.

    `err` is NaN and `error` holds a message when the row failed.  Poly rows
    use ``activation="Poly"`` and ``scheme="none"`` with ``N = M``.
    """

    function_id: str
    node_kind: str
    activation: str
    scheme: str
    mode: str
    M: int
    N: int
    seed: int
    err: float
    err_deriv: float | None = None
    collocation_condition: float | None = None
    metric_mode: str = "euclidean"
    error: str | None = field(default=None, compare=False)

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass(frozen=True)
class ConvergenceFit:
    scale: str
    slope: float
    intercept: float
    fit_range: tuple[int, int]
    n_points: int


def fit_slope(Ms: Sequence[float], errs: Sequence[float], scale: str = "semilogy",
              floor: float = PLATEAU_FLOOR) -> ConvergenceFit:
    """Least-squares line through ``(M, log10 err)`` or ``(log10 M, log10 err)``.

    Points with ``err <= floor`` (or non-finite errors) are dropped first.
    """
    if scale not in SCALES:
        raise ValidationError(f"scale must be one of {SCALES}")
    M = np.asarray(Ms, dtype=np.float64)
    e = np.asarray(errs, dtype=np.float64)
    keep = np.isfinite(e) & (e > floor)
    M, e = M[keep], e[keep]
    if M.size < 3:
        raise ValidationError(f"need at least 3 points above the plateau floor, have {M.size}")
    xs = M if scale == "semilogy" else np.log10(M)
    slope, intercept = np.polyfit(xs, np.log10(e), 1)
    return ConvergenceFit(scale, float(slope), float(intercept), (int(M.min()), int(M.max())), int(M.size))


def fit_rate(records: Iterable[ErrorRecord], scale: str = "semilogy",
             floor: float = PLATEAU_FLOOR) -> ConvergenceFit:
    """Fit a convergence line through the `err` values of `records`.

    All records must share one metric mode.  Use one record per M (for
    instance seed medians from :func:`elminterp.bench.median_records`).
    """
    records = list(records)
    modes = {r.metric_mode for r in records}
    if len(modes) > 1:
        raise ValidationError(f"cannot mix metric modes in one fit: {sorted(modes)}")
    usable = [r for r in records if not r.failed]
    return fit_slope([r.M for r in usable], [r.err for r in usable], scale, floor)
