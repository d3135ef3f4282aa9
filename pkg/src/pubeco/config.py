"""Scenario-suite ingestion from YAML/JSON configuration documents.

A suite document is a flat mapping:

.. code-block:: yaml

    t: 100000            # optional, resource budget shared by all scenarios
    resolution: 512      # optional, grid cells per axis
    out: results         # optional, default output directory
    defaults:            # optional, merged under every scenario
      delta: 0.21
      sigma: 1.0
    scenarios:
      - name: baseline
        alpha: 0.05
        k: 100
        m: 1
    sweep:               # optional cross-product, appended to scenarios
      alpha: [0.005, 0.05]
      k: [100, 500, 1000]
      m: [1, 3, 6]
      ssr: [false, true]

Validation failures raise :class:`ConfigError` with the offending field path.
"""

import itertools
import json
from dataclasses import dataclass, field

import yaml

from .ecosystem import (
    DEFAULT_C50,
    DEFAULT_C95,
    DEFAULT_DELTA,
    DEFAULT_DSCV_THRESHOLD,
    DEFAULT_SIGMA,
    DEFAULT_T,
    EcosystemConfig,
)
from .errors import ConfigError
from .grid import DEFAULT_RESOLUTION

_SCENARIO_KEYS = {
    "name", "alpha", "k", "m", "t", "delta", "sigma", "b", "ssr",
    "c50", "c95", "dscv_threshold",
}
_SWEEP_KEYS = ("alpha", "k", "m", "ssr")


@dataclass
class ScenarioSuite:
    scenarios: list = field(default_factory=list)  # (name, EcosystemConfig) pairs
    resolution: int = DEFAULT_RESOLUTION
    out_dir: str = "."

    @property
    def names(self):
        return [name for name, _ in self.scenarios]


def _require_number(value, path, lo=None, hi=None):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    value = float(value)
    if lo is not None and value < lo:
        raise ConfigError(f"{path}: must be >= {lo}, got {value}")
    if hi is not None and value > hi:
        raise ConfigError(f"{path}: must be <= {hi}, got {value}")
    return value


def _require_bool(value, path):
    if not isinstance(value, bool):
        raise ConfigError(f"{path}: expected true/false, got {value!r}")
    return value


def _scenario_config(raw: dict, path: str, defaults: dict) -> EcosystemConfig:
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: expected a mapping, got {raw!r}")
    merged = dict(defaults)
    merged.update(raw)
    unknown = set(merged) - _SCENARIO_KEYS
    if unknown:
        raise ConfigError(f"{path}.{sorted(unknown)[0]}: unknown key")
    for required in ("alpha", "k", "m"):
        if required not in merged:
            raise ConfigError(f"{path}.{required}: missing required key")
    kwargs = {
        "alpha": _require_number(merged["alpha"], f"{path}.alpha"),
        "k": _require_number(merged["k"], f"{path}.k"),
        "m": _require_number(merged["m"], f"{path}.m"),
        "t": _require_number(merged.get("t", DEFAULT_T), f"{path}.t"),
        "delta": _require_number(merged.get("delta", DEFAULT_DELTA), f"{path}.delta"),
        "sigma": _require_number(merged.get("sigma", DEFAULT_SIGMA), f"{path}.sigma"),
        "b_const": _require_number(merged.get("b", 0.0), f"{path}.b", lo=0.0, hi=1.0),
        "ssr": _require_bool(merged.get("ssr", False), f"{path}.ssr"),
        "c50": _require_number(merged.get("c50", DEFAULT_C50), f"{path}.c50"),
        "c95": _require_number(merged.get("c95", DEFAULT_C95), f"{path}.c95"),
        "dscv_threshold": _require_number(
            merged.get("dscv_threshold", DEFAULT_DSCV_THRESHOLD),
            f"{path}.dscv_threshold",
        ),
    }
    try:
        return EcosystemConfig(**kwargs)
    except ConfigError as exc:
        raise ConfigError(f"{path}.{exc}") from exc


def _sweep_scenarios(sweep: dict, path: str, defaults: dict) -> list:
    for key in sweep:
        if key not in _SWEEP_KEYS:
            raise ConfigError(f"{path}.{key}: unknown sweep axis (use {_SWEEP_KEYS})")
    axes = []
    for key in _SWEEP_KEYS:
        values = sweep.get(key)
        if values is None:
            values = [defaults.get(key, False if key == "ssr" else None)]
            if values[0] is None:
                raise ConfigError(f"{path}.{key}: sweep needs values or a default")
        if not isinstance(values, list) or not values:
            raise ConfigError(f"{path}.{key}: expected a non-empty list")
        axes.append(values)
    out = []
    for alpha, k, m, ssr in itertools.product(*axes):
        raw = {"alpha": alpha, "k": k, "m": m, "ssr": ssr}
        name = f"a{alpha:g}_k{k:g}_m{m:g}_{'ssr' if ssr else 'nossr'}"
        out.append((name, _scenario_config(raw, f"{path}[{name}]", defaults)))
    return out


def load_suite(path: str) -> ScenarioSuite:
    """Parse and validate a scenario suite document (YAML or JSON)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except (yaml.YAMLError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot parse config file: {exc}") from exc
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigError("top level: expected a mapping")

    unknown = set(doc) - {"t", "resolution", "out", "defaults", "scenarios", "sweep"}
    if unknown:
        raise ConfigError(f"{sorted(unknown)[0]}: unknown top-level key")

    defaults = doc.get("defaults", {})
    if not isinstance(defaults, dict):
        raise ConfigError("defaults: expected a mapping")
    unknown = set(defaults) - (_SCENARIO_KEYS - {"name"})
    if unknown:
        raise ConfigError(f"defaults.{sorted(unknown)[0]}: unknown key")
    if "t" in doc:
        defaults.setdefault("t", _require_number(doc["t"], "t"))

    resolution = doc.get("resolution", DEFAULT_RESOLUTION)
    if isinstance(resolution, bool) or not isinstance(resolution, int):
        raise ConfigError(f"resolution: expected an integer, got {resolution!r}")

    scenarios = []
    raw_scenarios = doc.get("scenarios", [])
    if not isinstance(raw_scenarios, list):
        raise ConfigError("scenarios: expected a list")
    for i, raw in enumerate(raw_scenarios):
        path_i = f"scenarios[{i}]"
        if not isinstance(raw, dict) or "name" not in raw:
            raise ConfigError(f"{path_i}.name: missing required key")
        name = str(raw["name"])
        scenarios.append((name, _scenario_config(
            {k: v for k, v in raw.items() if k != "name"}, path_i, defaults
        )))

    if "sweep" in doc:
        if not isinstance(doc["sweep"], dict):
            raise ConfigError("sweep: expected a mapping")
        scenarios.extend(_sweep_scenarios(doc["sweep"], "sweep", defaults))

    names = [name for name, _ in scenarios]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise ConfigError(f"scenarios: duplicate name {sorted(dupes)[0]!r}")

    return ScenarioSuite(
        scenarios=scenarios,
        resolution=resolution,
        out_dir=str(doc.get("out", ".")),
    )
