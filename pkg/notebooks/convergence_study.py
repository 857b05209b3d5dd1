# %% [markdown]
# # Convergence rates over a sweep of sample counts
#
# Uses the benchmark harness to run several seeds per sample count, then
# fits a rate to the seed medians.  Analytic targets should show straight
# lines on a semilog plot, and targets with a kink straight lines on a
# log-log plot.  SVG plots land in `$ELMINTERP_OUTPUT_DIR` (default
# `notebooks/out`).

# %%
import os
from pathlib import Path

from elminterp import fit_rate, get_target
from elminterp.bench import ExperimentConfig, emit_csv, emit_plot, median_records, run_experiment

out = Path(os.environ.get("ELMINTERP_OUTPUT_DIR", Path(__file__).with_name("out")))
out.mkdir(parents=True, exist_ok=True)

# %%
def study(fn, scale, M_list):
    records = []
    for kind in ("equispaced", "chebyshev", "random"):
        records += run_experiment(ExperimentConfig(fn, kind, M_list=M_list, seeds=(0, 1, 2)))
    emit_csv(records, out / f"{fn}.csv")
    emit_plot(records, scale, out / f"{fn}.svg", title=fn)
    ref = get_target(fn).expected_rate.reference_slope(scale)
    print(f"\n{fn} ({scale}, expected slope {ref if ref is None else round(ref, 4)})")
    medians = median_records(records)
    for kind in ("equispaced", "chebyshev", "random"):
        for act in ("LS", "SP", "GRB", "Poly"):
            series = [r for r in medians if r.node_kind == kind and r.activation == act]
            try:
                slope = f"{fit_rate(series, scale).slope:8.4f}"
            except ValueError:
                slope = "     n/a"
            errs = " ".join(f"{r.err:9.2e}" for r in series)
            print(f"  {kind:10s} {act:4s} slope {slope}   {errs}")


# %% [markdown]
# Runge's function is analytic in a strip around [-1, 1], so the error
# should fall geometrically.  Polynomials on equispaced samples diverge
# instead, and no slope is meaningful there.

# %%
study("runge", "semilogy", (10, 20, 40, 80, 160))

# %% [markdown]
# |x| has a kink at 0, and the error decays only algebraically.

# %%
study("absx", "loglog", (20, 40, 80, 160, 320))
print(f"\nCSV and SVG files written to {out}")
