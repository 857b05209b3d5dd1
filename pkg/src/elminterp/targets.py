"""Benchmark target functions on [-1, 1] with exact derivatives.

Each target carries its regularity class and the convergence rate expected
of polynomial interpolation on Chebyshev points, which the convergence
plots use as a reference slope.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, UndefinedDerivativeError, ValidationError

__all__ = [
    "ExpectedRate",
    "Regularity",
    "TargetFunction",
    "TARGETS",
    "get_target",
    "target_derivative",
    "target_eval",
]


class Regularity(str, enum.Enum):
    ENTIRE = "entire"
    ANALYTIC_ON_INTERVAL = "analytic"
    FINITE_SMOOTHNESS = "finite"


@dataclass(frozen=True)
class ExpectedRate:
    """Reference convergence of Chebyshev interpolation.

    ``kind`` is ``"geometric"`` (error ~ C**-M), ``"supergeometric"`` or
    ``"algebraic"`` (error ~ M**-nu).
    """

    kind: str
    constant: float | None = None
    nu: float | None = None

    def reference_slope(self, scale: str) -> float | None:
        """Slope of log10(err) per unit M (semilogy) or per decade of M (loglog)."""
        if self.kind == "geometric" and scale == "semilogy":
            return -math.log10(self.constant)
        if self.kind == "algebraic" and scale == "loglog":
            return -float(self.nu)
        return None


@dataclass(frozen=True)
class TargetFunction:
    id: str
    evaluator: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    regularity: Regularity
    expected_rate: ExpectedRate
    kinks: tuple[float, ...] = ()
    label: str = ""


# coefficients of the degree-16 test polynomial, highest degree first
RANDPOLY16 = (4, -4, 0, 8, 8, -8, -6, -9, -1, -10, -1, 3, -5, 4, 2, -10, 1)
_RANDPOLY16_D = tuple(c * (16 - k) for k, c in enumerate(RANDPOLY16[:-1]))


def _bernstein_rho(pole: complex) -> float:
    """Parameter of the largest Bernstein ellipse free of `pole`."""
    z = complex(pole)
    w = z + np.sqrt(z - 1) * np.sqrt(z + 1)
    return float(max(abs(w), 1 / abs(w)))


def _abssin3(x):
    return np.abs(np.sin(5 * x)) ** 3


def _abssin3_d(x):
    s = np.sin(5 * x)
    return 15.0 * np.abs(s) * s * np.cos(5 * x)


def _tanh_d(x):
    return 50 * np.pi / np.cosh(50 * np.pi * x) ** 2


TARGETS: dict[str, TargetFunction] = {
    t.id: t
    for t in [
        TargetFunction(
            "runge",
            lambda x: 1.0 / (1.0 + 25.0 * x * x),
            lambda x: -50.0 * x / (1.0 + 25.0 * x * x) ** 2,
            Regularity.ANALYTIC_ON_INTERVAL,
            ExpectedRate("geometric", constant=(1 + math.sqrt(26)) / 5),
            label="1/(1+25x^2)",
        ),
        TargetFunction(
            "randpoly16",
            lambda x: np.polyval(RANDPOLY16, x),
            lambda x: np.polyval(_RANDPOLY16_D, x),
            Regularity.ENTIRE,
            ExpectedRate("supergeometric"),
            label="degree-16 polynomial",
        ),
        TargetFunction(
            "cos20x",
            lambda x: np.cos(20 * x),
            lambda x: -20 * np.sin(20 * x),
            Regularity.ENTIRE,
            ExpectedRate("supergeometric"),
            label="cos(20x)",
        ),
        TargetFunction(
            "sqrt2mx",
            lambda x: np.sqrt(2 - x),
            lambda x: -0.5 / np.sqrt(2 - x),
            Regularity.ANALYTIC_ON_INTERVAL,
            ExpectedRate("geometric", constant=_bernstein_rho(2.0)),
            label="sqrt(2-x)",
        ),
        TargetFunction(
            "tanh50pix",
            lambda x: np.tanh(50 * np.pi * x),
            _tanh_d,
            Regularity.ANALYTIC_ON_INTERVAL,
            ExpectedRate("geometric", constant=_bernstein_rho(0.01j)),
            label="tanh(50 pi x)",
        ),
        TargetFunction(
            "absx",
            np.abs,
            np.sign,
            Regularity.FINITE_SMOOTHNESS,
            ExpectedRate("algebraic", nu=1),
            kinks=(0.0,),
            label="|x|",
        ),
        TargetFunction(
            "abssin5x3",
            _abssin3,
            _abssin3_d,
            Regularity.FINITE_SMOOTHNESS,
            ExpectedRate("algebraic", nu=3),
            label="|sin 5x|^3",
        ),
    ]
}


def get_target(f) -> TargetFunction:
    if isinstance(f, TargetFunction):
        return f
    try:
        return TARGETS[f]
    except KeyError:
        raise ValidationError(f"unknown target {f!r}; choose from {sorted(TARGETS)}") from None


def _domain(x):
    x = np.asarray(x, dtype=np.float64)
    if np.any(~np.isfinite(x)) or np.any(np.abs(x) > 1.0):
        raise DomainError("target functions are defined on [-1, 1] only")
    return x


def _scalar(out):
    out = np.asarray(out, dtype=np.float64)
    return out if out.ndim else float(out)


def target_eval(f, x):
    """Exact value of target `f` (object or id) at `x` in [-1, 1]."""
    t = get_target(f)
    return _scalar(t.evaluator(_domain(x)))


def target_derivative(f, x):
    """Exact first derivative; raises at a kink of the target."""
    t = get_target(f)
    x = _domain(x)
    for k in t.kinks:
        if np.any(x == k):
            raise UndefinedDerivativeError(f"{t.id} is not differentiable at x={k}")
    return _scalar(t.derivative(x))
