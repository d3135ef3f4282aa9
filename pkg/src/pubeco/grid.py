"""Discretized strategy space and the expectation/quantile engine.

The strategy domain is the rectangle [PSP_MIN, 1] x [max(alpha, PWR_MIN),
PWR_CAP], cut into midpoint cells (midpoint quadrature; the integrands are
smooth and bounded).  Three normalized cell-weight families live on it:

* ``w_res``  - how resources are deployed; proportional to the expected
  publication count surface q_{++P}(psp, pwr) / (k + n(pwr)).
* ``w_atm``  - attempted studies; an extra 1/(k + n) per cell.
* ``w_pub``  - published studies; w_atm damped by the publication
  probability, hence proportional to w_res squared cellwise.

n(pwr) is the continuous sample size from the upper-tail power inversion,
cached per (alpha, delta, sigma, axis) since it is shared by every (k, m)
policy at the same significance level.
"""

import csv
import os
import threading
from dataclasses import dataclass

import numpy as np

from . import kernels
from .ecosystem import CategoryProbs, EcosystemConfig, Strategy, _category_probs_from, pub_prob_positive
from .errors import ConfigError, DomainError
from .power import N_FLOOR

#: fixed strategy-domain bounds (independent of grid resolution, so metrics
#: converge under refinement); psp below PSP_MIN is excluded as no-mass,
#: pwr above PWR_CAP carries negligible density since n(pwr) diverges
PSP_MIN = 0.0025
PWR_MIN = 0.05
PWR_CAP = 0.995

DEFAULT_RESOLUTION = 512

GRID_DUMP_COLUMNS = [
    "psp", "pwr", "n", "q11P", "q01P", "q_ppP", "w_res", "w_atm", "w_pub",
]

_DENSITIES = ("res", "atm", "pub")

_n_cache: dict = {}
_n_cache_lock = threading.Lock()


def _sample_size_curve(alpha, delta, sigma, pwr_axis):
    key = (alpha, delta, sigma, pwr_axis.tobytes())
    with _n_cache_lock:
        got = _n_cache.get(key)
        if got is None:
            got = kernels.sample_size_table(
                pwr_axis, delta, sigma, alpha, N_FLOOR, False
            )
            if np.any(got < 0):
                raise DomainError("power axis contains unattainable power values")
            got.setflags(write=False)
            _n_cache[key] = got
    return got


@dataclass(frozen=True)
class StrategyGrid:
    """Immutable discretization of one ecosystem's strategy space.

    All 2-D arrays are indexed [psp cell, pwr cell].
    """

    cfg: EcosystemConfig
    psp_axis: np.ndarray
    pwr_axis: np.ndarray
    psp_edges: np.ndarray
    pwr_edges: np.ndarray
    n_of_pwr: np.ndarray
    q_table: CategoryProbs
    w_res: np.ndarray
    w_atm: np.ndarray
    w_pub: np.ndarray

    @property
    def resolution(self):
        return self.psp_axis.size

    @property
    def n_mesh(self):
        return np.broadcast_to(self.n_of_pwr[None, :], self.w_res.shape)

    @property
    def cost_mesh(self):
        return self.cfg.k + self.n_mesh

    def weights(self, density: str) -> np.ndarray:
        density = density.lower()
        if density not in _DENSITIES:
            raise ConfigError(f"unknown density {density!r}, expected one of {_DENSITIES}")
        return {"res": self.w_res, "atm": self.w_atm, "pub": self.w_pub}[density]

    def write_csv(self, path: str) -> None:
        """Dump the grid cellwise (the data behind the surface/heatmap plots)."""
        shape = self.w_res.shape
        q = self.q_table
        q11P = np.broadcast_to(q.q11P, shape)
        q01P = np.broadcast_to(q.q01P, shape)
        qpp = np.broadcast_to(q.q_pp_pub, shape)
        tmp = f"{path}.tmp"
        with open(tmp, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(GRID_DUMP_COLUMNS)
            for i in range(self.psp_axis.size):
                psp = self.psp_axis[i]
                for j in range(self.pwr_axis.size):
                    writer.writerow(
                        [
                            repr(float(psp)),
                            repr(float(self.pwr_axis[j])),
                            repr(float(self.n_of_pwr[j])),
                            repr(float(q11P[i, j])),
                            repr(float(q01P[i, j])),
                            repr(float(qpp[i, j])),
                            repr(float(self.w_res[i, j])),
                            repr(float(self.w_atm[i, j])),
                            repr(float(self.w_pub[i, j])),
                        ]
                    )
        os.replace(tmp, path)


def _midpoints(lo: float, hi: float, cells: int):
    edges = np.linspace(lo, hi, cells + 1)
    return 0.5 * (edges[:-1] + edges[1:]), edges


def build_grid(
    cfg: EcosystemConfig,
    resolution: int = DEFAULT_RESOLUTION,
    *,
    psp_min: float = PSP_MIN,
    pwr_min: float = PWR_MIN,
    pwr_cap: float = PWR_CAP,
) -> StrategyGrid:
    """Evaluate the three strategy densities on a resolution^2 midpoint grid."""
    if resolution < 16:
        raise ConfigError(f"resolution must be at least 16, got {resolution}")
    pwr_floor = max(cfg.alpha, pwr_min)
    if pwr_floor >= pwr_cap:
        raise ConfigError(
            f"degenerate power axis: floor {pwr_floor} >= cap {pwr_cap}"
        )
    if not 0 <= psp_min < 1:
        raise ConfigError(f"psp_min must be in [0, 1), got {psp_min}")

    psp_axis, psp_edges = _midpoints(psp_min, 1.0, resolution)
    pwr_axis, pwr_edges = _midpoints(pwr_floor, pwr_cap, resolution)
    n_of_pwr = _sample_size_curve(cfg.alpha, cfg.delta, cfg.sigma, pwr_axis)

    psp_col = psp_axis[:, None]
    pwr_row = pwr_axis[None, :]
    a = pub_prob_positive(Strategy(psp=psp_col, pwr=pwr_row), cfg)
    q = _category_probs_from(psp_col, pwr_row, a, cfg.b_const, cfg.alpha)

    inv_cost = 1.0 / (cfg.k + n_of_pwr)[None, :]
    w_res = q.q_pp_pub * inv_cost
    w_res = w_res / w_res.sum()
    w_atm = w_res * inv_cost
    w_atm = w_atm / w_atm.sum()
    w_pub = w_atm * q.q_pp_pub
    w_pub = w_pub / w_pub.sum()

    for arr in (w_res, w_atm, w_pub, psp_axis, pwr_axis, psp_edges, pwr_edges):
        arr.setflags(write=False)

    return StrategyGrid(
        cfg=cfg,
        psp_axis=psp_axis,
        pwr_axis=pwr_axis,
        psp_edges=psp_edges,
        pwr_edges=pwr_edges,
        n_of_pwr=n_of_pwr,
        q_table=q,
        w_res=w_res,
        w_atm=w_atm,
        w_pub=w_pub,
    )


def expectation(grid: StrategyGrid, density: str, integrand) -> float:
    """Weighted cell sum of integrand(strategy, category_probs, n).

    The integrand receives array-valued Strategy/CategoryProbs views of the
    whole grid, so plain cellwise formulas broadcast (e.g.
    ``lambda s, q, n: q.q11P / (k + n)``).  Constants are accepted too.
    """
    w = grid.weights(density)
    if callable(integrand):
        s = Strategy(psp=grid.psp_axis[:, None], pwr=grid.pwr_axis[None, :])
        values = integrand(s, grid.q_table, grid.n_mesh)
    else:
        values = integrand
    values = np.broadcast_to(np.asarray(values, dtype=float), w.shape)
    bad = ~np.isfinite(values)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise DomainError(
            f"integrand is not finite at cell ({i}, {j}): "
            f"psp={grid.psp_axis[i]:.6g}, pwr={grid.pwr_axis[j]:.6g}"
        )
    return float(np.sum(w * values))


@dataclass(frozen=True)
class MarginalSummary:
    mean: float
    median: float
    q25: float
    q75: float


def _weighted_quantile(weights: np.ndarray, edges: np.ndarray, qs):
    cum = np.concatenate([[0.0], np.cumsum(weights)])
    cum /= cum[-1]
    return np.interp(qs, cum, edges)


def marginal_summary(grid: StrategyGrid, variable: str, density: str) -> MarginalSummary:
    """Mean and quartiles of the psp or pwr marginal under one density.

    Quantiles interpolate the cell-aggregated CDF linearly between cell
    edges (mass uniform within a cell), so a uniform grid yields the exact
    continuous quantiles.
    """
    variable = variable.lower()
    if variable == "psp":
        axis, edges, reduce_axis = grid.psp_axis, grid.psp_edges, 1
    elif variable == "pwr":
        axis, edges, reduce_axis = grid.pwr_axis, grid.pwr_edges, 0
    else:
        raise ConfigError(f"unknown variable {variable!r}, expected 'psp' or 'pwr'")
    marg = grid.weights(density).sum(axis=reduce_axis)
    total = marg.sum()
    q25, median, q75 = _weighted_quantile(marg, edges, (0.25, 0.5, 0.75))
    return MarginalSummary(
        mean=float(np.dot(marg, axis) / total),
        median=float(median),
        q25=float(q25),
        q75=float(q75),
    )


def lattice_median(grid: StrategyGrid, variable: str, density: str, step: float = 0.005) -> float:
    """Median snapped to a fixed value lattice (smallest multiple of ``step``
    with CDF >= 1/2); the convention behind the reference median-power ranges.
    """
    variable = variable.lower()
    if variable == "psp":
        edges, reduce_axis = grid.psp_edges, 1
    elif variable == "pwr":
        edges, reduce_axis = grid.pwr_edges, 0
    else:
        raise ConfigError(f"unknown variable {variable!r}, expected 'psp' or 'pwr'")
    marg = grid.weights(density).sum(axis=reduce_axis)
    cum = np.concatenate([[0.0], np.cumsum(marg)])
    cum /= cum[-1]
    first = int(np.ceil(edges[0] / step - 1e-9))
    last = int(np.floor(edges[-1] / step + 1e-9))
    lattice = np.arange(first, last + 1) * step
    cdf_at = np.interp(lattice, edges, cum)
    idx = int(np.searchsorted(cdf_at, 0.5))
    if idx >= lattice.size:
        idx = lattice.size - 1
    return float(lattice[idx])
