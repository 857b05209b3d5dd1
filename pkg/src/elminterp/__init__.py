"""Interpolation of univariate functions with ELM-trained shallow networks.

The hidden layer is drawn at random and frozen; only the output weights are
solved for, as the minimum-norm least-squares solution of a collocation
system.  A barycentric polynomial interpolant is included as a baseline, and
:mod:`elminterp.bench` runs convergence sweeps over node counts.

>>> import numpy as np
>>> from elminterp import generate_nodes, init_hidden, train, network_eval
>>> x = generate_nodes("chebyshev", 40)
>>> net = train(init_hidden(80, "LS", seed=1), x, 1 / (1 + 25 * x.abscissas**2))
>>> abs(network_eval(net, 0.3) - 1 / (1 + 25 * 0.09)) < 1e-2
True
"""

from .activations import (
    ActivationKind,
    InteractionScheme,
    Neuron,
    activation_derivative,
    activation_value,
    default_scheme,
    neuron_feature,
    neuron_feature_derivative,
)
from .errors import (
    DimensionError,
    DomainError,
    ElmInterpError,
    UndefinedDerivativeError,
    UnsupportedRegimeError,
    ValidationError,
)
from .linalg import LsqSolution, condition_estimate, solve_min_norm_lsq
from .metrics import (
    ConvergenceFit,
    ErrorRecord,
    derivative_grid,
    discrete_error,
    evaluation_grid,
    fit_rate,
    fit_slope,
)
from .network import (
    HiddenLayer,
    InitSpec,
    TrainedNetwork,
    assemble_collocation,
    init_hidden,
    load_network,
    network_derivative,
    network_eval,
    save_network,
    train,
)
from .nodes import NodeKind, NodeSet, generate_nodes
from .poly import BarycentricInterpolant, barycentric_weights, poly_eval, poly_interpolant
from .targets import TARGETS, TargetFunction, get_target, target_derivative, target_eval

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
