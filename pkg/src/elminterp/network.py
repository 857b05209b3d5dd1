"""Single-hidden-layer networks trained as Extreme Learning Machines.

Hidden parameters are drawn once from a seeded generator and frozen; only
the external weights are computed, as the minimum-norm least-squares
solution of the collocation system ``S @ w = y`` with
``S[j, i] = psi_i(x_j)``.

Default initialisation
----------------------
Additive neurons (LS, SP)
    centres ``c_i ~ U[-1, 1]``, slopes ``a_i ~ U[-20, 20]`` and bias
    ``beta_i = -a_i * c_i`` so that neuron ``i`` transitions at ``c_i``.
Distance-like neurons (GRB)
    centres ``a_i ~ U[-1, 1]`` and shape ``eps_i ~ U(0, 15]`` with radius
    ``beta_i = 1 / eps_i``.  ``radius_rule="fixed"`` uses one radius for all
    neurons instead (``4 / sqrt(N)`` unless `radius` is given).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike

from .activations import (
    ActivationKind,
    InteractionScheme,
    Neuron,
    activation_derivative,
    activation_value,
    default_scheme,
    validate_pairing,
)
from .errors import DimensionError, UnsupportedRegimeError, ValidationError
from .linalg import condition_estimate, solve_min_norm_lsq

__all__ = [
    "FORMAT_NAME",
    "FORMAT_VERSION",
    "HiddenLayer",
    "InitSpec",
    "TrainedNetwork",
    "assemble_collocation",
    "feature_derivative_matrix",
    "feature_matrix",
    "init_hidden",
    "load_network",
    "network_derivative",
    "network_eval",
    "network_from_dict",
    "network_to_dict",
    "save_network",
    "train",
]

FORMAT_NAME = "elminterp.network"
FORMAT_VERSION = 1

RADIUS_RULES = ("random-shape", "fixed")


def _interval(r, name):
    lo, hi = (float(v) for v in r)
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValidationError(f"{name} must be a finite interval (lo <= hi), got {r}")
    return lo, hi


@dataclass(frozen=True)
class InitSpec:
    """Recipe for drawing hidden parameters.

    Everything needed to regenerate a hidden layer bit-for-bit: the
    neuron type, the seed and the sampling ranges.
    """

    kind: ActivationKind
    scheme: InteractionScheme
    seed: int
    slope_range: tuple[float, float] = (-20.0, 20.0)
    center_range: tuple[float, float] = (-1.0, 1.0)
    shape_range: tuple[float, float] = (0.0, 15.0)
    radius_rule: str = "random-shape"
    radius: float | None = None
    independent_bias: bool = False
    bias_range: tuple[float, float] = (-20.0, 20.0)

    def __post_init__(self):
        kind, scheme = validate_pairing(self.kind, self.scheme)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "scheme", scheme)
        object.__setattr__(self, "seed", int(self.seed))
        for name in ("slope_range", "center_range", "shape_range", "bias_range"):
            object.__setattr__(self, name, _interval(getattr(self, name), name))
        if self.radius_rule not in RADIUS_RULES:
            raise ValidationError(f"radius_rule must be one of {RADIUS_RULES}")
        if self.shape_range[0] < 0 or self.shape_range[1] <= 0:
            raise ValidationError("shape_range must be non-negative with a positive upper end")
        if self.radius is not None and not self.radius > 0:
            raise ValidationError("radius must be positive")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        d["scheme"] = self.scheme.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "InitSpec":
        d = dict(d)
        for k in ("slope_range", "center_range", "shape_range", "bias_range"):
            if k in d:
                d[k] = tuple(d[k])
        return cls(**d)


@dataclass(frozen=True, eq=False)
class HiddenLayer:
    """N neurons of one (kind, scheme), stored as parameter vectors.

    ``weights_a`` holds slopes (additive) or centres (distance-like) and
    ``biases_beta`` offsets or radii.
    """

    kind: ActivationKind
    scheme: InteractionScheme
    weights_a: np.ndarray
    biases_beta: np.ndarray
    init_spec: InitSpec | None = None

    def __post_init__(self):
        kind, scheme = validate_pairing(self.kind, self.scheme)
        a = np.array(self.weights_a, dtype=np.float64).ravel()
        b = np.array(self.biases_beta, dtype=np.float64).ravel()
        if a.size < 1 or a.shape != b.shape:
            raise DimensionError("need at least one neuron and matching parameter vectors")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValidationError("hidden parameters must be finite")
        if scheme is InteractionScheme.DISTANCE_LIKE and np.any(b <= 0):
            raise ValidationError("distance-like neurons need positive radii")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "scheme", scheme)
        object.__setattr__(self, "weights_a", a)
        object.__setattr__(self, "biases_beta", b)

    def __len__(self):
        return self.weights_a.size

    @property
    def neurons(self) -> list[Neuron]:
        return [Neuron(self.kind, self.scheme, float(a), float(b))
                for a, b in zip(self.weights_a, self.biases_beta)]

    @classmethod
    def from_neurons(cls, neurons, init_spec=None) -> "HiddenLayer":
        neurons = list(neurons)
        if not neurons:
            raise DimensionError("need at least one neuron")
        kinds = {(n.kind, n.scheme) for n in neurons}
        if len(kinds) != 1:
            raise ValidationError("all neurons of a layer must share kind and scheme")
        kind, scheme = kinds.pop()
        return cls(kind, scheme, [n.weight_a for n in neurons], [n.bias_beta for n in neurons], init_spec)


def init_hidden(N: int, kind, scheme=None, seed: int = 0, **overrides) -> HiddenLayer:
    """Draw a hidden layer of `N` neurons.

    Parameters
    ----------
    N : int
        Number of neurons, at least 1.
    kind : ActivationKind or str
    scheme : InteractionScheme or str, optional
        Defaults to the scheme `kind` pairs with.
    seed : int
        Seed of the private ``numpy.random.Generator``.
    **overrides
        Any :class:`InitSpec` field: ``slope_range``, ``center_range``,
        ``shape_range``, ``radius_rule``, ``radius``, ``independent_bias``,
        ``bias_range``.

    Examples
    --------
    >>> layer = init_hidden(1, "LS", slope_range=(1, 1), center_range=(0, 0))
    >>> float(layer.weights_a[0]), float(layer.biases_beta[0])
    (1.0, -0.0)
    """
    if int(N) != N or N < 1:
        raise ValidationError(f"N must be a positive integer, got {N}")
    N = int(N)
    kind = ActivationKind(kind)
    scheme = default_scheme(kind) if scheme is None else InteractionScheme(scheme)
    spec = InitSpec(kind, scheme, seed, **overrides)
    rng = np.random.default_rng(spec.seed)
    centers = rng.uniform(*spec.center_range, size=N)
    if scheme is InteractionScheme.ADDITIVE:
        slopes = rng.uniform(*spec.slope_range, size=N)
        if spec.independent_bias:
            bias = rng.uniform(*spec.bias_range, size=N)
        else:
            bias = -slopes * centers
        return HiddenLayer(kind, scheme, slopes, bias, spec)
    if spec.radius_rule == "fixed":
        r = spec.radius if spec.radius is not None else 4.0 / math.sqrt(N)
        radii = np.full(N, r)
    else:
        lo, hi = spec.shape_range
        # hi - U[0, hi - lo) lies in (lo, hi], so the shape is never zero
        shapes = hi - rng.uniform(0.0, hi - lo, size=N)
        radii = 1.0 / shapes
    return HiddenLayer(kind, scheme, centers, radii, spec)


def _points(x):
    return np.asarray(getattr(x, "abscissas", x), dtype=np.float64)


def feature_matrix(hidden: HiddenLayer, x) -> np.ndarray:
    """Matrix ``F[j, i] = psi_i(x_j)`` for every point and neuron."""
    t = np.atleast_1d(_points(x)).ravel()[:, None]
    if hidden.scheme is InteractionScheme.ADDITIVE:
        z = hidden.weights_a * t + hidden.biases_beta
    else:
        z = np.abs(t - hidden.weights_a) / hidden.biases_beta
    return activation_value(hidden.kind, z)


def feature_derivative_matrix(hidden: HiddenLayer, x) -> np.ndarray:
    """Matrix of ``d psi_i / dx`` at every point."""
    t = np.atleast_1d(_points(x)).ravel()[:, None]
    if hidden.scheme is InteractionScheme.ADDITIVE:
        z = hidden.weights_a * t + hidden.biases_beta
        return activation_derivative(hidden.kind, z) * hidden.weights_a
    u = (t - hidden.weights_a) / hidden.biases_beta
    return activation_derivative(hidden.kind, u) / hidden.biases_beta


def assemble_collocation(hidden: HiddenLayer, nodes) -> np.ndarray:
    """Collocation matrix: one row per node (ascending), one column per neuron."""
    S = feature_matrix(hidden, nodes)
    S.setflags(write=False)
    return S


@dataclass(frozen=True, eq=False)
class TrainedNetwork:
    hidden: HiddenLayer
    external_weights: np.ndarray
    mode: str
    training_residual: float
    collocation_condition: float

    def __post_init__(self):
        w = np.array(self.external_weights, dtype=np.float64).ravel()
        if w.size != len(self.hidden):
            raise DimensionError(f"{w.size} external weights for {len(self.hidden)} neurons")
        w.setflags(write=False)
        object.__setattr__(self, "external_weights", w)

    def __call__(self, x):
        return network_eval(self, x)

    def with_weights(self, w) -> "TrainedNetwork":
        return replace(self, external_weights=w)


def train(hidden: HiddenLayer, nodes, values: ArrayLike, rank_tol: float | None = None) -> TrainedNetwork:
    """Fit the external weights so the network interpolates ``(nodes, values)``.

    The mode is ``"square"`` when ``M == N`` and ``"overparametrized"`` when
    ``M < N``.  More nodes than neurons is rejected.
    """
    x = _points(nodes)
    y = np.asarray(values, dtype=np.float64)
    if x.ndim != 1 or y.shape != x.shape:
        raise DimensionError(f"{y.size} values for {x.size} nodes")
    M, N = x.size, len(hidden)
    if M > N:
        raise UnsupportedRegimeError(f"M={M} nodes exceed N={N} neurons")
    mode = "square" if M == N else "overparametrized"
    S = assemble_collocation(hidden, x)
    sol = solve_min_norm_lsq(S, y, rank_tol)
    return TrainedNetwork(hidden, sol.coefficients, mode, sol.residual_norm, condition_estimate(S))


def _scalar_or_array(x, out):
    return float(out[0]) if np.ndim(_points(x)) == 0 else out.reshape(np.shape(_points(x)))


def network_eval(net: TrainedNetwork, x):
    """``sum_i w_i psi_i(x)``."""
    return _scalar_or_array(x, feature_matrix(net.hidden, x) @ net.external_weights)


def network_derivative(net: TrainedNetwork, x):
    """Exact derivative of :func:`network_eval`."""
    return _scalar_or_array(x, feature_derivative_matrix(net.hidden, x) @ net.external_weights)


# --- serialization ---------------------------------------------------------

def _num(v: float):
    return v if math.isfinite(v) else str(v)


def network_to_dict(net: TrainedNetwork) -> dict:
    h = net.hidden
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "kind": h.kind.value,
        "scheme": h.scheme.value,
        "mode": net.mode,
        "init_spec": h.init_spec.to_dict() if h.init_spec else None,
        "neurons": [{"a": float(a), "beta": float(b)} for a, b in zip(h.weights_a, h.biases_beta)],
        "weights": [float(w) for w in net.external_weights],
        "training_residual": _num(net.training_residual),
        "collocation_condition": _num(net.collocation_condition),
    }


def network_from_dict(d: dict) -> TrainedNetwork:
    if d.get("format") != FORMAT_NAME:
        raise ValidationError("not a serialized elminterp network")
    if d.get("version") != FORMAT_VERSION:
        raise ValidationError(f"unsupported network format version {d.get('version')}")
    spec = InitSpec.from_dict(d["init_spec"]) if d.get("init_spec") else None
    hidden = HiddenLayer(
        d["kind"], d["scheme"],
        [n["a"] for n in d["neurons"]], [n["beta"] for n in d["neurons"]], spec,
    )
    return TrainedNetwork(hidden, d["weights"], d["mode"],
                          float(d["training_residual"]), float(d["collocation_condition"]))


def save_network(net: TrainedNetwork, path) -> None:
    Path(path).write_text(json.dumps(network_to_dict(net), indent=1) + "\n")


def load_network(path) -> TrainedNetwork:
    return network_from_dict(json.loads(Path(path).read_text()))
