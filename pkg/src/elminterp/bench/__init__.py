"""Convergence sweeps, CSV/SVG output and the ``elminterp`` command."""

from .csvio import HEADER, emit_csv, parse_csv, read_csv, records_to_csv
from .plot import emit_plot, render_svg
from .runner import (
    ExperimentConfig,
    ExperimentSuite,
    derive_seed,
    median_records,
    run_experiment,
    run_row,
    run_suite,
)
from .suites import SUITE_NAMES, get_suite

__all__ = [
    "HEADER",
    "SUITE_NAMES",
    "ExperimentConfig",
    "ExperimentSuite",
    "derive_seed",
    "emit_csv",
    "emit_plot",
    "get_suite",
    "median_records",
    "parse_csv",
    "read_csv",
    "records_to_csv",
    "render_svg",
    "run_experiment",
    "run_row",
    "run_suite",
]
