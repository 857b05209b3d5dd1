"""Interpolation node sets on [-1, 1]."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = ["NodeKind", "NodeSet", "generate_nodes", "MIN_SPACING"]

MIN_SPACING = 1e-12


class NodeKind(str, enum.Enum):
    EQUISPACED = "equispaced"
    CHEBYSHEV = "chebyshev"
    RANDOM = "random"


@dataclass(frozen=True, eq=False)
class NodeSet:
    """Sorted, distinct abscissas in [-1, 1].

    `include_endpoints` is only meaningful for random sets and records
    whether -1 and 1 were pinned.
    """

    kind: NodeKind
    abscissas: np.ndarray
    seed: int | None = None
    include_endpoints: bool = False

    def __post_init__(self):
        x = np.array(self.abscissas, dtype=np.float64)
        if x.ndim != 1 or x.size < 2:
            raise ValidationError("a node set needs at least two abscissas")
        if not np.all(np.isfinite(x)) or x[0] < -1.0 or x[-1] > 1.0:
            raise ValidationError("abscissas must be finite and lie in [-1, 1]")
        if np.any(np.diff(x) < MIN_SPACING):
            raise ValidationError("abscissas must be strictly increasing with spacing >= 1e-12")
        x.setflags(write=False)
        object.__setattr__(self, "kind", NodeKind(self.kind))
        object.__setattr__(self, "abscissas", x)

    def __len__(self):
        return self.abscissas.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.abscissas, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, NodeSet):
            return NotImplemented
        return (self.kind, self.seed, self.include_endpoints) == (
            other.kind, other.seed, other.include_endpoints
        ) and np.array_equal(self.abscissas, other.abscissas)

    __hash__ = None


def _equispaced(M):
    x = -1.0 + 2.0 * np.arange(M) / (M - 1)
    # enforce exact mirror symmetry x_j = -x_{M-1-j}
    half = M // 2
    x[M - half:] = -x[:half][::-1]
    if M % 2:
        x[half] = 0.0
    return x


def _chebyshev(M):
    x = np.cos(np.arange(M) * np.pi / (M - 1))[::-1].copy()
    half = M // 2
    x[M - half:] = -x[:half][::-1]
    if M % 2:
        x[half] = 0.0
    x[0], x[-1] = -1.0, 1.0
    return x


def _random(M, rng, include_endpoints):
    while True:
        if include_endpoints:
            x = np.concatenate(([-1.0], np.sort(rng.uniform(-1.0, 1.0, M - 2)), [1.0]))
        else:
            x = np.sort(rng.uniform(-1.0, 1.0, M))
        if np.all(np.diff(x) >= MIN_SPACING):
            return x


def generate_nodes(kind, M: int, seed: int | None = None, *, include_endpoints: bool = False) -> NodeSet:
    """Generate `M` interpolation nodes of the given kind.

    Parameters
    ----------
    kind : NodeKind or str
        ``"equispaced"`` (endpoints included), ``"chebyshev"`` (second kind,
        ``cos(j*pi/(M-1))`` sorted ascending) or ``"random"``.
    M : int
        Number of nodes, at least 2.
    seed : int, optional
        Required for random nodes, ignored otherwise.
    include_endpoints : bool
        Random nodes only.  By default all `M` nodes are uniform draws, so
        the ends of the interval are usually not sampled.  When true the set
        is ``{-1, 1}`` plus ``M - 2`` uniform draws.

    The draw is repeated until consecutive nodes are at least 1e-12 apart,
    so the result depends only on ``(kind, M, seed, include_endpoints)``.
    """
    kind = NodeKind(kind)
    if int(M) != M or M < 2:
        raise ValidationError(f"need at least 2 nodes, got M={M}")
    M = int(M)
    if kind is NodeKind.EQUISPACED:
        return NodeSet(kind, _equispaced(M))
    if kind is NodeKind.CHEBYSHEV:
        return NodeSet(kind, _chebyshev(M))
    if seed is None:
        raise ValidationError("random nodes require a seed")
    rng = np.random.default_rng(seed)
    return NodeSet(kind, _random(M, rng, include_endpoints), seed=int(seed), include_endpoints=include_endpoints)
