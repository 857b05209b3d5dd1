"""Named bundles of sweeps for the Runge study and the other benchmark targets."""

from __future__ import annotations

from ..errors import ValidationError
from .runner import ExperimentConfig, ExperimentSuite

NODE_KINDS = ("equispaced", "chebyshev", "random")


def _table(node_kind: str, mode: str, base_seed: int) -> ExperimentConfig:
    ratio = 1.0 if mode == "square" else 2.0
    return ExperimentConfig("runge", node_kind, mode=mode, ratio=ratio, base_seed=base_seed)


def _all_nodes(fn: str, mode: str, base_seed: int, **kw) -> tuple[ExperimentConfig, ...]:
    ratio = 1.0 if mode == "square" else 2.0
    return tuple(ExperimentConfig(fn, k, mode=mode, ratio=ratio, base_seed=base_seed, **kw) for k in NODE_KINDS)


def _builders():
    b = {}
    for i, kind in enumerate(NODE_KINDS):
        b[f"table{i + 1}"] = (lambda s, k=kind: (_table(k, "square", s),), "semilogy",
                              f"Runge, square networks, {kind} nodes")
        b[f"table{i + 4}"] = (lambda s, k=kind: (_table(k, "overparametrized", s),), "semilogy",
                              f"Runge, N = 2M, {kind} nodes")
    b["fig1"] = (lambda s: _all_nodes("runge", "square", s), "semilogy", "Runge, square networks")
    b["fig2"] = (lambda s: _all_nodes("runge", "square", s, with_derivative=True, include_poly=False),
                 "semilogy", "Runge derivative, square networks")
    b["fig3"] = (lambda s: _all_nodes("runge", "overparametrized", s), "semilogy", "Runge, N = 2M")
    b["fig4"] = (lambda s: _all_nodes("runge", "overparametrized", s, with_derivative=True, include_poly=False),
                 "semilogy", "Runge derivative, N = 2M")
    others = [("fig5", "randpoly16", "semilogy"), ("fig6", "cos20x", "semilogy"),
              ("fig7", "sqrt2mx", "semilogy"), ("fig8", "tanh50pix", "semilogy"),
              ("fig9", "absx", "loglog"), ("fig10", "abssin5x3", "loglog")]
    for name, fn, scale in others:
        b[name] = (lambda s, f=fn: _all_nodes(f, "overparametrized", s), scale, f"{fn}, N = 2M")
    return b


_BUILDERS = _builders()
SUITE_NAMES = tuple(_BUILDERS)


def get_suite(name: str, base_seed: int = 0) -> ExperimentSuite:
    """Build suite `name` (``table1`` ... ``table6``, ``fig1`` ... ``fig10``)."""
    try:
        build, scale, desc = _BUILDERS[name]
    except KeyError:
        raise ValidationError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}") from None
    return ExperimentSuite(name, build(base_seed), scale, desc)
