"""Barycentric Lagrange interpolation: the polynomial baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .errors import DimensionError, ValidationError

__all__ = ["FORMS", "BarycentricInterpolant", "barycentric_weights", "poly_eval", "poly_interpolant"]


def _scaled_weights(nodes) -> tuple[np.ndarray, float]:
    """Weights scaled to max |w| = 1, and the log of the factor removed."""
    x = np.asarray(getattr(nodes, "abscissas", nodes), dtype=np.float64)
    if x.ndim != 1 or x.size < 1:
        raise ValidationError("need a non-empty 1-D node vector")
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(diff == 0.0):
        raise ValidationError("barycentric weights need distinct nodes")
    log_mag = -np.log(np.abs(diff)).sum(axis=1)
    sign = np.prod(np.sign(diff), axis=1)
    scale = float(log_mag.max())
    return sign * np.exp(log_mag - scale), scale


def barycentric_weights(nodes: ArrayLike) -> np.ndarray:
    """Barycentric weights ``1 / prod_{k != j} (x_j - x_k)`` scaled to max |w| = 1.

    The products are accumulated as sums of logarithms so that several
    hundred nodes do not overflow before rescaling.
    """
    return _scaled_weights(nodes)[0]


@dataclass(frozen=True, eq=False)
class BarycentricInterpolant:
    nodes: np.ndarray
    values: np.ndarray
    weights: np.ndarray
    log_scale: float = 0.0  # log of the factor divided out of `weights`

    def __call__(self, x):
        return poly_eval(self, x)


def poly_interpolant(nodes, values: ArrayLike) -> BarycentricInterpolant:
    """Polynomial of degree ``M - 1`` through ``(nodes[j], values[j])``."""
    x = np.array(getattr(nodes, "abscissas", nodes), dtype=np.float64)
    y = np.array(values, dtype=np.float64)
    if y.shape != x.shape:
        raise DimensionError(f"{y.size} values for {x.size} nodes")
    w, scale = _scaled_weights(x)
    return BarycentricInterpolant(x, y, w, scale)


FORMS = ("second", "first")


def poly_eval(p: BarycentricInterpolant, x, form: str = "second"):
    """Evaluate the interpolating polynomial at `x`.

    ``form="second"`` (default) is the true barycentric formula
    ``sum(c_j y_j) / sum(c_j)`` with ``c_j = w_j / (x - x_j)``.  Its forward
    error grows like eps times the Lebesgue function, which is harmless on
    Chebyshev points but visible on clustered or equispaced sets; there it
    saturates instead of following the exact polynomial.

    ``form="first"`` is ``l(x) * sum(c_j y_j)`` with the node polynomial
    ``l`` accumulated in logs.  It is backward stable on any node set, so it
    tracks the exact polynomial even where that is astronomically large.

    Points that coincide with a node return the stored value exactly.  The
    second form falls back to the first wherever its denominator cancels to
    zero.
    """
    if form not in FORMS:
        raise ValidationError(f"form must be one of {FORMS}")
    t = np.asarray(x, dtype=np.float64)
    flat = np.atleast_1d(t).ravel()
    d = flat[:, None] - p.nodes[None, :]
    hit = d == 0.0
    d[hit] = 1.0
    c = p.weights / d
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        num = c @ p.values
        if form == "second":
            out = num / c.sum(axis=1)
            use_first = ~np.isfinite(out)
        else:
            out = np.empty_like(num)
            use_first = np.ones(num.shape, dtype=bool)
        if np.any(use_first):
            db = d[use_first]
            log_l = np.log(np.abs(db)).sum(axis=1) + p.log_scale
            sign_l = np.prod(np.sign(db), axis=1)
            nf = num[use_first]
            # combine in logs so a huge l(x) cannot overflow against a tiny sum
            out[use_first] = sign_l * np.sign(nf) * np.exp(log_l + np.log(np.abs(nf)))
    rows, cols = np.nonzero(hit)
    out[rows] = p.values[cols]
    out = out.reshape(t.shape)
    return out if out.ndim else float(out)
