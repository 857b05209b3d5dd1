"""Dense matrices and a rank-truncated minimum-norm least-squares solver.

The external weights of an ELM network are the minimum-norm least-squares
solution of the collocation system ``S @ w = y``.  The solver here is a
truncated SVD: singular values below ``rank_tol * sigma_max`` are discarded,
which yields the pseudoinverse solution for rank-deficient or
underdetermined systems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .errors import DimensionError, ValidationError

__all__ = [
    "LsqSolution",
    "as_matrix",
    "condition_estimate",
    "default_rank_tol",
    "null_space",
    "solve_min_norm_lsq",
]


def as_matrix(A: ArrayLike) -> np.ndarray:
    """Return a read-only float64 copy of `A` after checking it is a finite 2-D array."""
    M = np.array(A, dtype=np.float64, order="C", copy=True)
    if M.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={M.ndim}")
    if M.size and not np.all(np.isfinite(M)):
        raise ValidationError("matrix contains NaN or Inf entries")
    M.setflags(write=False)
    return M


def default_rank_tol(shape: tuple[int, int]) -> float:
    """Conventional pseudoinverse cutoff: machine epsilon times the larger dimension."""
    return float(np.finfo(np.float64).eps * max(shape))


@dataclass(frozen=True)
class LsqSolution:
    """Result of :func:`solve_min_norm_lsq`.

    Attributes
    ----------
    coefficients : ndarray
        Minimum-norm least-squares solution, length ``cols``.
    residual_norm : float
        ``||A @ coefficients - b||_2``.
    effective_rank : int
        Number of singular values kept after truncation.
    sigma_max, sigma_min_kept : float
        Largest singular value and smallest retained one.
    """

    coefficients: np.ndarray
    residual_norm: float
    effective_rank: int
    sigma_max: float
    sigma_min_kept: float


def _svd(A: np.ndarray):
    return np.linalg.svd(A, full_matrices=False)


def _check_tol(rank_tol: float | None, shape: tuple[int, int]) -> float:
    if rank_tol is None:
        return default_rank_tol(shape)
    rank_tol = float(rank_tol)
    if not 0.0 < rank_tol < 1.0:
        raise ValidationError(f"rank_tol must lie in (0, 1), got {rank_tol}")
    return rank_tol


def solve_min_norm_lsq(A: ArrayLike, b: ArrayLike, rank_tol: float | None = None) -> LsqSolution:
    """Solve ``min ||A x - b||_2`` and return the minimum-norm minimizer.

    Parameters
    ----------
    A : array_like, shape (m, n)
        System matrix; must be finite.
    b : array_like, shape (m,)
        Right-hand side.
    rank_tol : float, optional
        Relative singular-value cutoff in (0, 1).  Singular values
        ``sigma_k <= rank_tol * sigma_max`` are treated as zero.  Defaults to
        ``eps * max(m, n)``.

    Raises
    ------
    DimensionError
        If ``len(b) != m``.
    ValidationError
        If `A` or `b` contain non-finite values or `rank_tol` is out of range.
    """
    A = as_matrix(A)
    b = np.asarray(b, dtype=np.float64)
    if b.ndim != 1 or b.shape[0] != A.shape[0]:
        raise DimensionError(f"rhs of shape {b.shape} does not match matrix of shape {A.shape}")
    if not np.all(np.isfinite(b)):
        raise ValidationError("right-hand side contains NaN or Inf entries")
    tol = _check_tol(rank_tol, A.shape)
    m, n = A.shape
    if m == 0 or n == 0:
        return LsqSolution(np.zeros(n), float(np.linalg.norm(b)), 0, 0.0, 0.0)

    U, s, Vt = _svd(A)
    sigma_max = float(s[0])
    keep = s > tol * sigma_max if sigma_max > 0 else np.zeros_like(s, dtype=bool)
    r = int(keep.sum())
    # project onto the retained left singular vectors, then scale back
    coef = Vt[:r].T @ ((U[:, :r].T @ b) / s[:r])
    resid = float(np.linalg.norm(A @ coef - b))
    return LsqSolution(
        coefficients=coef,
        residual_norm=resid,
        effective_rank=r,
        sigma_max=sigma_max,
        sigma_min_kept=float(s[r - 1]) if r else 0.0,
    )


def null_space(A: ArrayLike, rank_tol: float | None = None) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical null space of `A`.

    Uses the same truncated SVD as :func:`solve_min_norm_lsq`, so the
    returned vectors are orthogonal to the minimum-norm solution.
    """
    A = as_matrix(A)
    tol = _check_tol(rank_tol, A.shape)
    _, s, Vt = np.linalg.svd(A, full_matrices=True)
    r = int((s > tol * s[0]).sum()) if s.size and s[0] > 0 else 0
    return Vt[r:].T.copy()


def condition_estimate(A: ArrayLike) -> float:
    """2-norm condition number ``sigma_max / sigma_min``.

    Returns ``math.inf`` when the smallest singular value is zero to machine
    precision (``sigma_min <= eps * max(m, n) * sigma_max``).
    """
    A = as_matrix(A)
    if A.size == 0:
        raise ValidationError("condition number of an empty matrix is undefined")
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= default_rank_tol(A.shape) * s[0]:
        return math.inf
    return float(s[0] / s[-1])
