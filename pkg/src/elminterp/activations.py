"""Activation functions, interaction schemes and single-neuron features.

Two neuron families are supported:

* additive neurons, ``psi(a * x + beta)`` with the logistic sigmoid (LS) or
  SoftPlus (SP) activation;
* distance-like neurons, ``psi(|x - a| / beta)`` with the Gaussian radial
  basis (GRB) activation, where `a` is a centre and `beta > 0` a radius.

All evaluators accept scalars or arrays and broadcast like numpy ufuncs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .errors import ValidationError

__all__ = [
    "ActivationKind",
    "InteractionScheme",
    "Neuron",
    "activation_derivative",
    "activation_value",
    "default_scheme",
    "neuron_feature",
    "neuron_feature_derivative",
    "validate_pairing",
]

# SoftPlus switches to the asymptotic form above this argument.
_SP_CUTOFF = 30.0


class ActivationKind(str, enum.Enum):
    LOGISTIC_SIGMOID = "LS"
    SOFTPLUS = "SP"
    GAUSSIAN_RBF = "GRB"


class InteractionScheme(str, enum.Enum):
    ADDITIVE = "additive"
    DISTANCE_LIKE = "distance"


def default_scheme(kind: ActivationKind) -> InteractionScheme:
    """The only interaction scheme `kind` can be paired with."""
    kind = ActivationKind(kind)
    if kind is ActivationKind.GAUSSIAN_RBF:
        return InteractionScheme.DISTANCE_LIKE
    return InteractionScheme.ADDITIVE


def validate_pairing(kind, scheme) -> tuple[ActivationKind, InteractionScheme]:
    kind, scheme = ActivationKind(kind), InteractionScheme(scheme)
    if default_scheme(kind) is not scheme:
        raise ValidationError(f"activation {kind.value} cannot be used with the {scheme.value} scheme")
    return kind, scheme


def _softplus(z):
    z = np.asarray(z, dtype=np.float64)
    big = z > _SP_CUTOFF
    safe = np.where(big, 0.0, z)
    out = np.where(big, z + np.exp(-np.abs(z)), np.log1p(np.exp(safe)))
    return out if out.ndim else float(out)


def activation_value(kind, z):
    """psi(z) for the given activation kind.

    LS is ``1 / (1 + exp(-z))``, SP is ``log(1 + exp(z))`` and GRB is
    ``exp(-z**2)``.
    """
    kind = ActivationKind(kind)
    if kind is ActivationKind.LOGISTIC_SIGMOID:
        out = expit(np.asarray(z, dtype=np.float64))
        return out if out.ndim else float(out)
    if kind is ActivationKind.SOFTPLUS:
        return _softplus(z)
    out = np.exp(-np.square(np.asarray(z, dtype=np.float64)))
    return out if out.ndim else float(out)


def activation_derivative(kind, z):
    """Exact d psi / dz.  The SoftPlus derivative is the logistic sigmoid."""
    kind = ActivationKind(kind)
    z = np.asarray(z, dtype=np.float64)
    if kind is ActivationKind.LOGISTIC_SIGMOID:
        s = expit(z)
        out = s * (1.0 - s)
    elif kind is ActivationKind.SOFTPLUS:
        out = expit(z)
    else:
        out = -2.0 * z * np.exp(-z * z)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class Neuron:
    """One hidden unit.

    For the additive scheme `weight_a` is the slope and `bias_beta` the
    offset; for the distance-like scheme they are the centre and the radius.
    """

    kind: ActivationKind
    scheme: InteractionScheme
    weight_a: float
    bias_beta: float

    def __post_init__(self):
        kind, scheme = validate_pairing(self.kind, self.scheme)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "scheme", scheme)
        if not (np.isfinite(self.weight_a) and np.isfinite(self.bias_beta)):
            raise ValidationError("neuron parameters must be finite")
        if scheme is InteractionScheme.DISTANCE_LIKE and not self.bias_beta > 0:
            raise ValidationError(f"distance-like neuron needs a positive radius, got {self.bias_beta}")


def _pre_activation(n: Neuron, x):
    x = np.asarray(x, dtype=np.float64)
    if n.scheme is InteractionScheme.ADDITIVE:
        return n.weight_a * x + n.bias_beta
    return np.abs(x - n.weight_a) / n.bias_beta


def neuron_feature(n: Neuron, x):
    """psi(kappa(x)): the neuron output without its external weight."""
    return activation_value(n.kind, _pre_activation(n, x))


def neuron_feature_derivative(n: Neuron, x):
    """d/dx of :func:`neuron_feature`.

    For a GRB neuron ``exp(-((x - a) / beta)**2)`` is smooth, so the absolute
    value in the distance does not create a kink and the signed form is used.
    """
    if n.scheme is InteractionScheme.ADDITIVE:
        out = activation_derivative(n.kind, _pre_activation(n, x)) * n.weight_a
    else:
        u = (np.asarray(x, dtype=np.float64) - n.weight_a) / n.bias_beta
        out = activation_derivative(n.kind, u) / n.bias_beta
    return out if np.ndim(out) else float(out)
