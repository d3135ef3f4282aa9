"""Stochastic replication of an ecosystem, as a check on the analytic engine.

Resources land on strategy cells proportional to w_res, which means study
draws arrive proportional to w_res / (k + n), i.e. the attempted-study
weights.  Each drawn study costs k + n(pwr) and is conducted only if the
full cost still fits the budget; the first draw that does not fit stops the
run.  Truth, finding, and publication are Bernoulli draws with the cell's
probabilities, so plain counting converges to every analytic metric.

Simulation is vectorized in chunks and fully deterministic given the seed.
Independent replicas parallelize by giving each its own seed.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats as _scipy_stats

from .ecosystem import EcosystemConfig, Strategy, pub_prob_positive
from .grid import StrategyGrid
from .metrics import BREAKTHROUGH_HALF_STEP

CATEGORY_NAMES = ["q11P", "q11U", "q10P", "q10U", "q01P", "q01U", "q00P", "q00U"]

LOG_COLUMNS = ["psp", "pwr", "truth", "finding", "published"]

_CHUNK = 1 << 17


@dataclass(frozen=True)
class SimOutcome:
    """Counts and (optionally) the per-study log of one simulation run."""

    counts: dict
    n_studies: int
    resources_spent: float
    budget: float
    seed: int
    log: Optional[dict] = None

    def write_log_csv(self, path: str) -> None:
        import csv
        import os

        if self.log is None:
            raise ValueError("per-study log was not retained; pass keep_log=True")
        tmp = f"{path}.tmp"
        with open(tmp, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(LOG_COLUMNS)
            log = self.log
            for i in range(self.n_studies):
                writer.writerow(
                    [
                        repr(float(log["psp"][i])),
                        repr(float(log["pwr"][i])),
                        int(log["truth"][i]),
                        int(log["finding"][i]),
                        int(log["published"][i]),
                    ]
                )
        os.replace(tmp, path)


@dataclass(frozen=True)
class McEstimates:
    """Counting estimates of the headline metrics."""

    rel: float
    pr: float
    stpr: float
    n_atm: float
    n_pub: float
    dscv: float


def simulate(
    cfg: EcosystemConfig,
    grid: StrategyGrid,
    seed: int,
    budget: Optional[float] = None,
    keep_log: bool = False,
) -> tuple[SimOutcome, McEstimates]:
    """Run one budget-limited replica; deterministic given the seed."""
    if budget is None:
        budget = cfg.t
    rng = np.random.default_rng(seed)

    shape = grid.w_atm.shape
    cum = np.cumsum(grid.w_atm.ravel())
    cum[-1] = 1.0
    psp_cells = np.broadcast_to(grid.psp_axis[:, None], shape).ravel()
    pwr_cells = np.broadcast_to(grid.pwr_axis[None, :], shape).ravel()
    n_cells = np.broadcast_to(grid.n_of_pwr[None, :], shape).ravel()
    a_mesh = pub_prob_positive(
        Strategy(psp=grid.psp_axis[:, None], pwr=grid.pwr_axis[None, :]), cfg
    )
    a_cells = np.ascontiguousarray(np.broadcast_to(a_mesh, shape)).ravel()

    chunks = []
    spent = 0.0
    done = False
    while not done:
        idx = np.searchsorted(cum, rng.random(_CHUNK), side="right")
        cost = cfg.k + n_cells[idx]
        running = spent + np.cumsum(cost)
        take = int(np.searchsorted(running, budget, side="right"))
        if take < _CHUNK:
            done = True
        if take == 0:
            break
        idx = idx[:take]
        psp = psp_cells[idx]
        pwr = pwr_cells[idx]
        truth = rng.random(take) < psp
        finding = rng.random(take) < np.where(truth, pwr, cfg.alpha)
        published = rng.random(take) < np.where(finding, a_cells[idx], cfg.b_const)
        chunks.append((psp, pwr, truth, finding, published))
        spent = float(running[take - 1])

    if chunks:
        psp, pwr, truth, finding, published = (
            np.concatenate([c[i] for c in chunks]) for i in range(5)
        )
    else:
        psp = pwr = np.empty(0)
        truth = finding = published = np.empty(0, dtype=bool)

    counts = {
        "q11P": int(np.sum(truth & finding & published)),
        "q11U": int(np.sum(truth & finding & ~published)),
        "q10P": int(np.sum(truth & ~finding & published)),
        "q10U": int(np.sum(truth & ~finding & ~published)),
        "q01P": int(np.sum(~truth & finding & published)),
        "q01U": int(np.sum(~truth & finding & ~published)),
        "q00P": int(np.sum(~truth & ~finding & published)),
        "q00U": int(np.sum(~truth & ~finding & ~published)),
    }
    n_studies = int(psp.size)
    n_pub = counts["q11P"] + counts["q10P"] + counts["q01P"] + counts["q00P"]
    correct_pub = counts["q11P"] + counts["q00P"]
    tp_total = counts["q11P"] + counts["q11U"]
    upper = (
        cfg.dscv_threshold + BREAKTHROUGH_HALF_STEP if cfg.dscv_threshold > 0 else 0.0
    )
    dscv = int(np.sum(truth & finding & published & (psp <= upper)))

    estimates = McEstimates(
        rel=correct_pub / n_pub if n_pub else float("nan"),
        pr=n_pub / n_studies if n_studies else float("nan"),
        stpr=counts["q11U"] / tp_total if tp_total else float("nan"),
        n_atm=float(n_studies),
        n_pub=float(n_pub),
        dscv=float(dscv),
    )
    log = None
    if keep_log:
        log = {
            "psp": psp,
            "pwr": pwr,
            "truth": truth,
            "finding": finding,
            "published": published,
        }
    outcome = SimOutcome(
        counts=counts,
        n_studies=n_studies,
        resources_spent=spent,
        budget=float(budget),
        seed=seed,
        log=log,
    )
    return outcome, estimates


@dataclass(frozen=True)
class ConcordanceRow:
    metric: str
    analytic: float
    estimate: float
    std_error: float
    z: float
    passed: bool


def concordance(
    outcome: SimOutcome,
    estimates: McEstimates,
    analytic: dict,
    z_limit: float = 3.0,
) -> list[ConcordanceRow]:
    """z-scores of the counting estimates against analytic values.

    Standard errors use the analytic proportions with the realized
    denominators (binomial sampling within the run).
    """
    n_studies = max(outcome.n_studies, 1)
    n_pub = max(int(estimates.n_pub), 1)
    tp_total = max(outcome.counts["q11P"] + outcome.counts["q11U"], 1)
    rows = []
    for metric, denom in (("pr", n_studies), ("rel", n_pub), ("stpr", tp_total)):
        p = analytic[metric]
        se = float(np.sqrt(max(p * (1.0 - p), 1e-300) / denom))
        z = (getattr(estimates, metric) - p) / se
        rows.append(
            ConcordanceRow(
                metric=metric,
                analytic=p,
                estimate=getattr(estimates, metric),
                std_error=se,
                z=float(z),
                passed=bool(abs(z) <= z_limit),
            )
        )
    return rows


def category_gof_pvalue(grid: StrategyGrid, outcome: SimOutcome) -> float:
    """Chi-square goodness of fit of category counts against expectations.

    Zero-probability categories (e.g. negatives-published when B = 0) are
    excluded from the statistic.
    """
    w = grid.w_atm
    expected_probs = np.array(
        [float(np.sum(w * getattr(grid.q_table, name))) for name in CATEGORY_NAMES]
    )
    observed = np.array([outcome.counts[name] for name in CATEGORY_NAMES], dtype=float)
    keep = expected_probs > 1e-12
    expected = expected_probs[keep] / expected_probs[keep].sum() * observed.sum()
    stat = float(np.sum((observed[keep] - expected) ** 2 / expected))
    dof = int(keep.sum()) - 1
    return float(_scipy_stats.chi2.sf(stat, dof))
