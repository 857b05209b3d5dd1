"""Convergence sweeps: configuration, per-row execution and aggregation."""

from __future__ import annotations

import hashlib
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ..activations import ActivationKind, default_scheme
from ..errors import ElmInterpError, ValidationError
from ..metrics import METRIC_MODES, ErrorRecord, derivative_grid, discrete_error, evaluation_grid
from ..network import InitSpec, init_hidden, network_derivative, network_eval, save_network, train
from ..nodes import NodeKind, generate_nodes
from ..poly import poly_interpolant, poly_eval
from ..targets import get_target

DEFAULT_M_LIST = (10, 20, 40, 80, 160, 320)
DEFAULT_SEEDS = (0, 1, 2, 3, 4)
MODES = ("square", "overparametrized")
POLY = "Poly"

# InitSpec fields a config may override (kind, scheme and seed are per row)
_OVERRIDABLE = tuple(f for f in InitSpec.__dataclass_fields__ if f not in ("kind", "scheme", "seed"))


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep: a target on one node family, over several M and seeds.

    `init_overrides` is a mapping of :class:`~elminterp.network.InitSpec`
    fields applied to every hidden layer.  `ratio` is ``N / M``.
    `pin_endpoints` adds -1 and 1 to random node sets.
    """

    function_id: str
    node_kind: str
    activations: tuple[str, ...] = ("LS", "SP", "GRB")
    include_poly: bool = True
    mode: str = "overparametrized"
    ratio: float = 2.0
    M_list: tuple[int, ...] = DEFAULT_M_LIST
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    with_derivative: bool = False
    metric_mode: str = "euclidean"
    init_overrides: tuple = ()
    base_seed: int = 0
    rank_tol: float | None = None
    pin_endpoints: bool = False

    def __post_init__(self):
        get_target(self.function_id)
        object.__setattr__(self, "node_kind", NodeKind(self.node_kind).value)
        acts = tuple(ActivationKind(a).value for a in self.activations)
        if len(set(acts)) != len(acts):
            raise ValidationError("activations must not repeat")
        object.__setattr__(self, "activations", acts)
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}")
        ratio = float(self.ratio)
        if self.mode == "square":
            if ratio != 1.0:
                raise ValidationError("square mode requires ratio 1")
        elif not ratio > 1.0:
            raise ValidationError("overparametrized mode requires ratio > 1")
        object.__setattr__(self, "ratio", ratio)
        Ms = tuple(int(m) for m in self.M_list)
        if not Ms or Ms[0] < 2 or any(b <= a for a, b in zip(Ms, Ms[1:])):
            raise ValidationError("M_list must be strictly increasing with entries >= 2")
        object.__setattr__(self, "M_list", Ms)
        seeds = tuple(int(s) for s in self.seeds)
        if not seeds or len(set(seeds)) != len(seeds):
            raise ValidationError("seeds must be a non-empty list of distinct integers")
        object.__setattr__(self, "seeds", seeds)
        if self.metric_mode not in METRIC_MODES:
            raise ValidationError(f"metric_mode must be one of {METRIC_MODES}")
        ov = dict(self.init_overrides)
        unknown = set(ov) - set(_OVERRIDABLE)
        if unknown:
            raise ValidationError(f"unknown init overrides: {sorted(unknown)}")
        ov = {k: tuple(v) if isinstance(v, (list, tuple)) else v for k, v in ov.items()}
        # validate eagerly against both schemes
        for kind in acts:
            InitSpec(kind, default_scheme(kind), 0, **ov)
        object.__setattr__(self, "init_overrides", tuple(sorted(ov.items())))

    def N_for(self, M: int) -> int:
        return M if self.mode == "square" else int(round(self.ratio * M))

    def fingerprint(self) -> str:
        """Digest of everything that changes a row's numbers apart from (M, activation, seed)."""
        payload = {
            "fn": self.function_id,
            "nodes": self.node_kind,
            "mode": self.mode,
            "ratio": self.ratio,
            "init": [[k, v] for k, v in self.init_overrides],
            "rank_tol": self.rank_tol,
            "pin": self.pin_endpoints,
        }
        return hashlib.blake2b(json.dumps(payload, sort_keys=True).encode(), digest_size=8).hexdigest()


@dataclass(frozen=True)
class ExperimentSuite:
    name: str
    configs: tuple[ExperimentConfig, ...]
    scale: str = "semilogy"
    description: str = ""

    def __post_init__(self):
        if not self.configs:
            raise ValidationError("a suite needs at least one config")


def derive_seed(*parts) -> int:
    """Stable 63-bit seed from arbitrary printable parts."""
    text = "\x1f".join(str(p) for p in parts).encode()
    return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "big") >> 1


def hidden_seed(cfg: ExperimentConfig, M: int, activation: str, seed: int) -> int:
    return derive_seed(cfg.base_seed, cfg.fingerprint(), M, activation, seed)


def node_seed(cfg: ExperimentConfig, M: int, seed: int) -> int:
    # shared by all activations so they are compared on the same nodes
    return derive_seed(cfg.base_seed, "nodes", cfg.node_kind, M, seed, cfg.pin_endpoints)


def _node_set(cfg, M, seed):
    if cfg.node_kind == NodeKind.RANDOM.value:
        return generate_nodes(cfg.node_kind, M, node_seed(cfg, M, seed), include_endpoints=cfg.pin_endpoints)
    return generate_nodes(cfg.node_kind, M)


def _tasks(cfg: ExperimentConfig):
    deterministic_nodes = cfg.node_kind != NodeKind.RANDOM.value
    for M in cfg.M_list:
        if cfg.include_poly:
            for s in cfg.seeds[:1] if deterministic_nodes else cfg.seeds:
                yield (M, POLY, s)
        for act in cfg.activations:
            for s in cfg.seeds:
                yield (M, act, s)


def run_row(cfg: ExperimentConfig, M: int, activation: str, seed: int,
            network_dir: str | Path | None = None) -> ErrorRecord:
    """Compute one record.  Failures are captured in ``record.error``."""
    poly = activation == POLY
    rec = ErrorRecord(
        function_id=cfg.function_id,
        node_kind=cfg.node_kind,
        activation=activation,
        scheme="none" if poly else default_scheme(activation).value,
        mode=cfg.mode,
        M=M,
        N=M if poly else cfg.N_for(M),
        seed=seed,
        err=float("nan"),
        metric_mode=cfg.metric_mode,
    )
    target = get_target(cfg.function_id)
    try:
        with np.errstate(all="ignore"):
            nodes = _node_set(cfg, M, seed)
            x = nodes.abscissas
            y = target.evaluator(x)
            grid = evaluation_grid()
            if poly:
                approx = poly_eval(poly_interpolant(nodes, y), grid)
            else:
                hidden = init_hidden(rec.N, activation, seed=hidden_seed(cfg, M, activation, seed),
                                     **dict(cfg.init_overrides))
                net = train(hidden, nodes, y, cfg.rank_tol)
                approx = network_eval(net, grid)
                rec.collocation_condition = net.collocation_condition
                if cfg.with_derivative:
                    dgrid = derivative_grid()
                    rec.err_deriv = discrete_error(network_derivative(net, dgrid), target.derivative(dgrid),
                                                   cfg.metric_mode, dgrid)
                if network_dir is not None:
                    save_network(net, Path(network_dir) / f"{cfg.function_id}_{cfg.node_kind}_{activation}_M{M}_s{seed}.json")
            rec.err = discrete_error(approx, target.evaluator(grid), cfg.metric_mode, grid)
        if not np.isfinite(rec.err) or (rec.err_deriv is not None and not np.isfinite(rec.err_deriv)):
            raise FloatingPointError("non-finite error value")
    except (ElmInterpError, ArithmeticError, ValueError, np.linalg.LinAlgError, OSError) as exc:
        rec.err = float("nan")
        rec.err_deriv = None
        rec.error = f"{type(exc).__name__}: {exc}"
    return rec


def _run_task(args):
    return run_row(*args)


def record_sort_key(r: ErrorRecord):
    return (r.M, r.activation, r.function_id, r.node_kind, r.mode, r.N, r.seed)


def run_experiment(cfg: ExperimentConfig, *, workers: int = 1,
                   network_dir: str | Path | None = None) -> list[ErrorRecord]:
    """Run every (M, activation, seed) row of `cfg`.

    Rows depend only on their derived seeds, so the result is the same for
    any `workers` count.  The list comes back sorted by
    :func:`record_sort_key`.
    """
    if network_dir is not None:
        Path(network_dir).mkdir(parents=True, exist_ok=True)
    tasks = [(cfg, M, a, s, network_dir) for M, a, s in _tasks(cfg)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            records = list(ex.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        records = [_run_task(t) for t in tasks]
    return sorted(records, key=record_sort_key)


def run_suite(suite: ExperimentSuite, *, workers: int = 1,
              network_dir: str | Path | None = None) -> list[ErrorRecord]:
    out: list[ErrorRecord] = []
    for cfg in suite.configs:
        out.extend(run_experiment(cfg, workers=workers, network_dir=network_dir))
    return sorted(out, key=record_sort_key)


def _median(values: Sequence[float | None]) -> float | None:
    vals = [v for v in values if v is not None]
    return statistics.median(vals) if vals else None


def median_records(records: Iterable[ErrorRecord]) -> list[ErrorRecord]:
    """Collapse seeds: one record per sweep point with median err, err_deriv and cond.

    Failed rows are ignored; a point whose rows all failed is omitted.  The
    aggregated records carry ``seed = -1``.
    """
    groups: dict[tuple, list[ErrorRecord]] = {}
    for r in records:
        if r.failed:
            continue
        key = (r.function_id, r.node_kind, r.activation, r.scheme, r.mode, r.M, r.N, r.metric_mode)
        groups.setdefault(key, []).append(r)
    out = []
    for rows in groups.values():
        out.append(replace(
            rows[0],
            seed=-1,
            err=statistics.median(r.err for r in rows),
            err_deriv=_median([r.err_deriv for r in rows]),
            collocation_condition=_median([r.collocation_condition for r in rows]),
        ))
    return sorted(out, key=record_sort_key)
