"""``elminterp`` command line: ad-hoc sweeps, named suites, network evaluation."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from ..errors import ElmInterpError
from ..network import load_network, network_derivative, network_eval
from ..targets import TARGETS
from .csvio import emit_csv, records_to_csv
from .plot import emit_plot
from .runner import DEFAULT_M_LIST, DEFAULT_SEEDS, ExperimentConfig, median_records, run_experiment, run_suite
from .suites import SUITE_NAMES, get_suite

OUTPUT_ENV = "ELMINTERP_OUTPUT_DIR"


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _interval(text: str) -> tuple[float, float]:
    v = _floats(text)
    if len(v) == 1:
        v = (v[0], v[0])
    if len(v) != 2:
        raise argparse.ArgumentTypeError("expected LO,HI")
    return v


def _names(text: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in text.split(",") if t.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elminterp", description="ELM interpolation convergence benchmarks.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run one sweep described by flags")
    r.add_argument("--fn", required=True, choices=sorted(TARGETS))
    r.add_argument("--nodes", type=_names, default=("chebyshev",),
                   help="node kinds, comma separated (equispaced, chebyshev, random)")
    r.add_argument("--act", type=_names, default=("LS", "SP", "GRB"), help="activations, e.g. LS,GRB")
    r.add_argument("--mode", choices=("square", "overparametrized"), default="overparametrized")
    r.add_argument("--ratio", type=float, default=None, help="N/M (default 1 for square, 2 otherwise)")
    r.add_argument("--m-list", type=_ints, default=DEFAULT_M_LIST)
    r.add_argument("--seeds", type=_ints, default=DEFAULT_SEEDS)
    r.add_argument("--metric", choices=("euclidean", "trapezoid"), default="euclidean")
    r.add_argument("--deriv", action="store_true", help="also measure the derivative error")
    r.add_argument("--no-poly", action="store_true", help="skip the polynomial baseline rows")
    r.add_argument("--base-seed", type=int, default=0)
    r.add_argument("--scale", choices=("semilogy", "loglog"), default=None)
    r.add_argument("--slope-range", type=_interval)
    r.add_argument("--center-range", type=_interval)
    r.add_argument("--shape-range", type=_interval)
    r.add_argument("--radius-rule", choices=("random-shape", "fixed"))
    r.add_argument("--radius", type=float)
    r.add_argument("--independent-bias", action="store_true")
    r.add_argument("--bias-range", type=_interval)
    r.add_argument("--pin-endpoints", action="store_true", help="random node sets always contain -1 and 1")
    r.add_argument("--out-csv", type=Path, help="CSV path (default: print to stdout)")
    r.add_argument("--out-svg", type=Path)
    r.add_argument("--save-networks", type=Path, metavar="DIR", help="write every trained network as JSON")
    r.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("suite", help="run a named bundle of sweeps")
    s.add_argument("name", choices=SUITE_NAMES)
    s.add_argument("--out-dir", type=Path, default=None,
                   help=f"output directory (default: ${OUTPUT_ENV}, else the current directory)")
    s.add_argument("--base-seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)

    e = sub.add_parser("eval", help="evaluate a saved network")
    e.add_argument("network", type=Path)
    e.add_argument("x", nargs="*", type=float, help="points in [-1, 1]")
    e.add_argument("--grid", type=int, default=None, help="evaluate on this many equispaced points instead")
    e.add_argument("--deriv", action="store_true", help="print the derivative too")
    return p


def _summary(records, stream):
    for r in median_records(records):
        extra = "" if r.err_deriv is None else f"  err_deriv={r.err_deriv:.3e}"
        stream.write(f"{r.function_id:10s} {r.node_kind:10s} {r.activation:4s} M={r.M:<4d} N={r.N:<4d} "
                     f"err={r.err:.3e}{extra}\n")
    failed = [r for r in records if r.failed]
    for r in failed:
        stream.write(f"FAILED {r.function_id} {r.node_kind} {r.activation} M={r.M} seed={r.seed}: {r.error}\n")
    return 1 if failed else 0


def _cmd_run(a) -> int:
    overrides = {k: getattr(a, k) for k in ("slope_range", "center_range", "shape_range", "radius_rule",
                                            "radius", "bias_range") if getattr(a, k) is not None}
    if a.independent_bias:
        overrides["independent_bias"] = True
    ratio = a.ratio if a.ratio is not None else (1.0 if a.mode == "square" else 2.0)
    records = []
    for kind in a.nodes:
        cfg = ExperimentConfig(a.fn, kind, activations=a.act, include_poly=not a.no_poly, mode=a.mode,
                               ratio=ratio, M_list=a.m_list, seeds=a.seeds, with_derivative=a.deriv,
                               metric_mode=a.metric, init_overrides=tuple(overrides.items()),
                               base_seed=a.base_seed, pin_endpoints=a.pin_endpoints)
        records += run_experiment(cfg, workers=a.workers, network_dir=a.save_networks)
    if a.out_csv:
        emit_csv(records, a.out_csv)
        status = _summary(records, sys.stdout)
    else:
        sys.stdout.write(records_to_csv(records))
        status = _summary(records, sys.stderr)
    if a.out_svg:
        scale = a.scale or ("loglog" if TARGETS[a.fn].expected_rate.kind == "algebraic" else "semilogy")
        emit_plot(records, scale, a.out_svg, title=f"{a.fn}, {a.mode}")
    return status


def _cmd_suite(a) -> int:
    out_dir = a.out_dir or Path(os.environ.get(OUTPUT_ENV) or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    suite = get_suite(a.name, a.base_seed)
    records = run_suite(suite, workers=a.workers)
    csv_path = emit_csv(records, out_dir / f"{suite.name}.csv")
    emit_plot(records, suite.scale, out_dir / f"{suite.name}.svg", title=suite.description)
    status = _summary(records, sys.stdout)
    print(f"wrote {csv_path} and {out_dir / (suite.name + '.svg')}")
    return status


def _cmd_eval(a) -> int:
    net = load_network(a.network)
    xs = np.linspace(-1.0, 1.0, a.grid) if a.grid else np.asarray(a.x, dtype=np.float64)
    if xs.size == 0:
        print("no evaluation points given", file=sys.stderr)
        return 2
    vals = np.atleast_1d(network_eval(net, xs))
    ders = np.atleast_1d(network_derivative(net, xs)) if a.deriv else None
    for i, x in enumerate(xs):
        line = f"{x:.17g} {vals[i]:.17g}"
        if ders is not None:
            line += f" {ders[i]:.17g}"
        print(line)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"run": _cmd_run, "suite": _cmd_suite, "eval": _cmd_eval}[args.command]
    try:
        return handler(args)
    except (ElmInterpError, OSError) as exc:
        print(f"elminterp: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
