"""The bundled reference ecosystem suite and its comparison tables.

72 ecosystems: alpha in {0.001, 0.005, 0.05, 0.10} x k in {100, 500, 1000}
x m in {1, 3, 6}, each with and without the sample-size requirement.  The
comparison tables contrast significance-threshold and power-requirement
policies pairwise and summarize the strategy marginals.
"""

from .ecosystem import EcosystemConfig
from .grid import build_grid, lattice_median
from .metrics import (
    MetricsReport,
    compare,
    compute_metrics,
    report_record,
)

REFERENCE_ALPHAS = (0.001, 0.005, 0.05, 0.10)
REFERENCE_KS = (100.0, 500.0, 1000.0)
REFERENCE_MS = (1.0, 3.0, 6.0)

#: midpoint of the power screen used throughout the reference suite; the
#: screen passes 95% of studies at 0.8 true power and half at 0.6
REFERENCE_C50 = 0.6
REFERENCE_C95 = 0.8

BASELINE_ALPHA = 0.05
LOW_ALPHA = 0.005


def reference_config(alpha: float, k: float, m: float, ssr: bool) -> EcosystemConfig:
    return EcosystemConfig(
        alpha=alpha, k=k, m=m, ssr=ssr, c50=REFERENCE_C50, c95=REFERENCE_C95
    )


def reference_name(alpha: float, k: float, m: float, ssr: bool) -> str:
    return f"a{alpha:g}_k{k:g}_m{m:g}_{'ssr' if ssr else 'nossr'}"


def reference_suite() -> list:
    """All 72 (name, config) pairs in a fixed order."""
    out = []
    for ssr in (False, True):
        for alpha in REFERENCE_ALPHAS:
            for k in REFERENCE_KS:
                for m in REFERENCE_MS:
                    out.append(
                        (reference_name(alpha, k, m, ssr), reference_config(alpha, k, m, ssr))
                    )
    return out


def compute_reference_reports(resolution: int = 512, keep_grids: bool = False):
    """Metrics for the full suite, keyed (alpha, k, m, ssr)."""
    reports = {}
    grids = {}
    for ssr in (False, True):
        for alpha in REFERENCE_ALPHAS:
            for k in REFERENCE_KS:
                for m in REFERENCE_MS:
                    cfg = reference_config(alpha, k, m, ssr)
                    grid = build_grid(cfg, resolution)
                    reports[(alpha, k, m, ssr)] = compute_metrics(grid)
                    if keep_grids:
                        grids[(alpha, k, m, ssr)] = grid
    return (reports, grids) if keep_grids else reports


def comparison_records(reports: dict, key_a, key_b_of) -> list:
    """Rows with raw pairs and A:B ratios for PR, REL, DSCV over (k, m)."""
    records = []
    for k in REFERENCE_KS:
        for m in REFERENCE_MS:
            a: MetricsReport = reports[key_a(k, m)]
            b: MetricsReport = reports[key_b_of(k, m)]
            record = {"k": k, "m": m}
            for row in compare(a, b):
                record[f"{row.metric}_a"] = row.value_a
                record[f"{row.metric}_b"] = row.value_b
                record[f"{row.metric}_ratio"] = row.ratio
            records.append(record)
    return records


COMPARISON_COLUMNS = [
    "k", "m",
    "pr_a", "pr_b", "pr_ratio",
    "rel_a", "rel_b", "rel_ratio",
    "dscv_a", "dscv_b", "dscv_ratio",
]

BASELINE_COLUMNS = ["k", "m", "pr", "n_pub", "n_atm", "rel", "dscv"]

IQR_COLUMNS = [
    "alpha", "k", "m",
    "psp_q25_atm", "psp_q75_atm", "psp_q25_pub", "psp_q75_pub",
    "pwr_q25_atm", "pwr_q75_atm", "pwr_q25_pub", "pwr_q75_pub",
]


def baseline_records(reports: dict) -> list:
    records = []
    for k in REFERENCE_KS:
        for m in REFERENCE_MS:
            r: MetricsReport = reports[(BASELINE_ALPHA, k, m, False)]
            records.append(
                {
                    "k": k,
                    "m": m,
                    "pr": r.pr,
                    "n_pub": r.n_pub,
                    "n_atm": r.n_atm,
                    "rel": r.rel,
                    "dscv": r.dscv,
                }
            )
    return records


def iqr_records(reports: dict, ssr: bool) -> list:
    records = []
    for alpha in (LOW_ALPHA, BASELINE_ALPHA):
        for k in REFERENCE_KS:
            for m in REFERENCE_MS:
                r: MetricsReport = reports[(alpha, k, m, ssr)]
                records.append(
                    {
                        "alpha": alpha,
                        "k": k,
                        "m": m,
                        "psp_q25_atm": r.psp_summary_atm.q25,
                        "psp_q75_atm": r.psp_summary_atm.q75,
                        "psp_q25_pub": r.psp_summary_pub.q25,
                        "psp_q75_pub": r.psp_summary_pub.q75,
                        "pwr_q25_atm": r.pwr_summary_atm.q25,
                        "pwr_q75_atm": r.pwr_summary_atm.q75,
                        "pwr_q25_pub": r.pwr_summary_pub.q25,
                        "pwr_q75_pub": r.pwr_summary_pub.q75,
                    }
                )
    return records


def all_metric_records(reports: dict) -> list:
    records = []
    for ssr in (False, True):
        for alpha in REFERENCE_ALPHAS:
            for k in REFERENCE_KS:
                for m in REFERENCE_MS:
                    cfg = reference_config(alpha, k, m, ssr)
                    name = reference_name(alpha, k, m, ssr)
                    records.append(report_record(name, cfg, reports[(alpha, k, m, ssr)]))
    return records


def ssr_median_power_ranges(resolution: int = 512) -> dict:
    """Median attempted/published power across the 9 SSR baselines.

    Medians are snapped to the 0.005 power lattice, the convention the
    reference ranges were stated under.
    """
    med_atm, med_pub = [], []
    for k in REFERENCE_KS:
        for m in REFERENCE_MS:
            grid = build_grid(reference_config(BASELINE_ALPHA, k, m, True), resolution)
            med_atm.append(lattice_median(grid, "pwr", "atm"))
            med_pub.append(lattice_median(grid, "pwr", "pub"))
    return {"attempted": med_atm, "published": med_pub}
