"""Ecosystem metrics computed from a strategy grid.

Reliability, study counts and publication rate, the silenced true-positive
rate, breakthrough discoveries, the marginal summaries, and the A:B
comparison tables used to contrast two publication policies.
"""

import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .ecosystem import EcosystemConfig
from .errors import UndefinedMetricError
from .grid import MarginalSummary, StrategyGrid, expectation, marginal_summary

#: the breakthrough cutoff is applied inclusively on the 0.005-step psp
#: lattice, so the integrated region extends half a lattice step past the
#: nominal threshold
BREAKTHROUGH_HALF_STEP = 0.0025

#: marker written for ratios with a zero denominator
UNDEFINED_RATIO = "NA"


@dataclass(frozen=True)
class MetricsReport:
    """All scalar metrics plus marginal summaries for one ecosystem."""

    rel: float
    n_atm: float
    n_pub: float
    pr: float
    stpr: float
    dscv: float
    psp_summary_atm: MarginalSummary
    psp_summary_pub: MarginalSummary
    pwr_summary_atm: MarginalSummary
    pwr_summary_pub: MarginalSummary

    SCALAR_FIELDS = ("rel", "n_atm", "n_pub", "pr", "stpr", "dscv")

    def to_row(self) -> dict:
        row = {name: getattr(self, name) for name in self.SCALAR_FIELDS}
        for var in ("psp", "pwr"):
            for dens in ("atm", "pub"):
                summ: MarginalSummary = getattr(self, f"{var}_summary_{dens}")
                row[f"{var}_mean_{dens}"] = summ.mean
                row[f"{var}_q25_{dens}"] = summ.q25
                row[f"{var}_median_{dens}"] = summ.median
                row[f"{var}_q75_{dens}"] = summ.q75
        return row


def reliability(grid: StrategyGrid) -> float:
    """Share of published findings whose conclusion is correct.

    With negatives never published (B = 0) this is the true-positive share
    among published positives; with B > 0 the general correct-conclusion
    form (true positives plus true negatives) is used.
    """
    denom = expectation(grid, "atm", lambda s, q, n: q.q_pp_pub)
    if denom <= 0:
        raise UndefinedMetricError("no publication mass: reliability is undefined")
    if grid.cfg.b_const > 0:
        num = expectation(grid, "atm", lambda s, q, n: q.q00P + q.q11P)
    else:
        num = expectation(grid, "atm", lambda s, q, n: q.q11P)
    return num / denom


def study_counts(grid: StrategyGrid, cfg: EcosystemConfig) -> dict:
    """Expected attempted/published study counts at resources cfg.t, and PR."""
    per_unit_atm = expectation(grid, "res", lambda s, q, n: 1.0 / (cfg.k + n))
    per_unit_pub = expectation(grid, "res", lambda s, q, n: q.q_pp_pub / (cfg.k + n))
    return {
        "n_atm": cfg.t * per_unit_atm,
        "n_pub": cfg.t * per_unit_pub,
        "pr": per_unit_pub / per_unit_atm,
    }


def silenced_tp_rate(grid: StrategyGrid) -> float:
    """Fraction of true positive findings that stay unpublished."""
    denom = expectation(grid, "atm", lambda s, q, n: q.q_11_any)
    if denom <= 0:
        raise UndefinedMetricError("no true-positive mass: STPR is undefined")
    num = expectation(grid, "atm", lambda s, q, n: q.q11U)
    return num / denom


def _breakthrough_fraction(grid: StrategyGrid, threshold: float) -> np.ndarray:
    """Per-psp-cell overlap fraction with the breakthrough region."""
    if threshold <= 0:
        return np.zeros(grid.psp_axis.size)
    upper = threshold + BREAKTHROUGH_HALF_STEP
    left = grid.psp_edges[:-1]
    width = np.diff(grid.psp_edges)
    return np.clip((upper - left) / width, 0.0, 1.0)


def breakthrough_discoveries(grid: StrategyGrid, cfg: EcosystemConfig) -> float:
    """Expected published true positives from psp below the threshold, at cfg.t."""
    frac = _breakthrough_fraction(grid, cfg.dscv_threshold)[:, None]
    per_unit = expectation(
        grid, "res", lambda s, q, n: frac * q.q11P / (cfg.k + n)
    )
    return cfg.t * per_unit


def compute_metrics(grid: StrategyGrid, cfg: EcosystemConfig = None) -> MetricsReport:
    """Assemble the full MetricsReport for one ecosystem grid."""
    cfg = grid.cfg if cfg is None else cfg
    counts = study_counts(grid, cfg)
    return MetricsReport(
        rel=reliability(grid),
        n_atm=counts["n_atm"],
        n_pub=counts["n_pub"],
        pr=counts["pr"],
        stpr=silenced_tp_rate(grid),
        dscv=breakthrough_discoveries(grid, cfg),
        psp_summary_atm=marginal_summary(grid, "psp", "atm"),
        psp_summary_pub=marginal_summary(grid, "psp", "pub"),
        pwr_summary_atm=marginal_summary(grid, "pwr", "atm"),
        pwr_summary_pub=marginal_summary(grid, "pwr", "pub"),
    )


@dataclass(frozen=True)
class ComparisonRow:
    metric: str
    value_a: float
    value_b: float
    ratio: float  # nan when value_b is zero

    def format(self) -> str:
        ratio = UNDEFINED_RATIO if math.isnan(self.ratio) else f"{self.ratio:.2f}"
        return f"{self.metric}: {self.value_a:.3f} : {self.value_b:.3f} = {ratio}"


def compare(report_a: MetricsReport, report_b: MetricsReport) -> list[ComparisonRow]:
    """PR/REL/DSCV ratios of two ecosystems (A against B), with raw pairs."""
    rows = []
    for metric in ("pr", "rel", "dscv"):
        value_a = getattr(report_a, metric)
        value_b = getattr(report_b, metric)
        ratio = value_a / value_b if value_b != 0 else math.nan
        rows.append(ComparisonRow(metric, value_a, value_b, ratio))
    return rows


# --- serialization -----------------------------------------------------------

METRIC_COLUMNS = [
    "name", "alpha", "k", "m", "ssr", "c50", "c95", "b", "t",
    "rel", "n_atm", "n_pub", "pr", "stpr", "dscv",
    "psp_mean_atm", "psp_q25_atm", "psp_median_atm", "psp_q75_atm",
    "psp_mean_pub", "psp_q25_pub", "psp_median_pub", "psp_q75_pub",
    "pwr_mean_atm", "pwr_q25_atm", "pwr_median_atm", "pwr_q75_atm",
    "pwr_mean_pub", "pwr_q25_pub", "pwr_median_pub", "pwr_q75_pub",
]


def report_record(name: str, cfg: EcosystemConfig, report: MetricsReport) -> dict:
    record = {
        "name": name,
        "alpha": cfg.alpha,
        "k": cfg.k,
        "m": cfg.m,
        "ssr": cfg.ssr,
        "c50": cfg.c50,
        "c95": cfg.c95,
        "b": cfg.b_const,
        "t": cfg.t,
    }
    record.update(report.to_row())
    return record


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return UNDEFINED_RATIO if math.isnan(value) else repr(value)
    return str(value)


def write_csv(path: str, columns: list, records: list) -> None:
    """RFC-4180-style CSV, UTF-8, '.' decimal; written atomically."""
    import csv as _csv

    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="", encoding="utf-8") as fh:
        writer = _csv.writer(fh)
        writer.writerow(columns)
        for record in records:
            writer.writerow([_format_cell(record[col]) for col in columns])
    os.replace(tmp, path)


def write_json(path: str, records: list) -> None:
    tmp = f"{path}.tmp"

    def _clean(value):
        if isinstance(value, float) and math.isnan(value):
            return None
        return value

    payload = [{k: _clean(v) for k, v in rec.items()} for rec in records]
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    os.replace(tmp, path)
