"""Run configurations, parameter sweeps, figure datasets and their file formats."""

import copy
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .delay_opt import optimal_delay_analytic, optimal_delay_numeric
from .dynamics import is_stable, output_spectra
from .entanglement import log_negativity
from .errors import ParameterError, UsageError
from .filters import CovarianceMatrix, FilterSpec
from .illumination import (
    error_probability,
    receiver_moments,
    report_from_moments,
    snr_coherent,
    snr_from_moments,
)
from .params import (
    N_BACKGROUND_REFERENCE,
    N_MECH_REFERENCE,
    IlluminationParams,
    SystemParams,
    coupling_from_cooperativity,
    validate,
)

FIGURES = ("fig2", "fig3", "fig4", "fig5")
DELAY_MODES = ("zero", "analytic", "numeric")
SWEEP_COLUMNS = ("snr_qi", "snr_coh", "f_merit", "p_qi", "p_coh", "v11", "t_delay")

DEFAULT_CONFIG = {
    "system": {
        "kappa": 1.0,
        "gamma": 1e-3,
        "delta": 1.5,
        "g1": 1.0,
        "g2": 1.0,
        "c1": None,
        "c2": None,
        "n_b": N_MECH_REFERENCE,
        "n_plus_in": 0.0,
        "n_minus_in": 0.0,
    },
    "illumination": {"eta": 0.07, "n_B": N_BACKGROUND_REFERENCE, "m_pairs": 1},
    "filter": {"sigma": 1.0, "delay": "analytic"},
    "sweep": [],
    "output": {"path": None, "format": "csv"},
    "tolerance": 1e-9,
    "workers": 1,
}
AXIS_KEYS = {"name", "min", "max", "points", "scale"}

FIGURE_DEFAULTS = {
    "fig2": {
        "system": {"g1": 1.0, "g2": 1.0},
        "sweep": [{"name": "omega", "min": -0.5, "max": 3.0, "points": 3501, "scale": "linear"}],
    },
    "fig3": {
        "filter": {"sigma": 0.0},
        "sweep": [
            {"name": "c1", "min": 1.0, "max": 1e3, "points": 25, "scale": "log"},
            {"name": "c2", "min": 1.0, "max": 1e3, "points": 25, "scale": "log"},
        ],
    },
    "fig4": {
        "system": {"c1": 500.0, "c2": 500.0},
        "sweep": [{"name": "sigma", "min": 0.1, "max": 2.0, "points": 20, "scale": "linear"}],
    },
    "fig5": {
        "system": {"c1": 500.0, "c2": 500.0},
        "filter": {"sigma": 1.0},
        "sweep": [{"name": "log10_m", "min": 0.0, "max": 8.0, "points": 9, "scale": "linear"}],
    },
}


def merge_config(base, update, path=""):
    out = copy.deepcopy(base)
    for key, value in update.items():
        where = f"{path}{key}"
        if key not in base:
            raise UsageError(f"unknown configuration key {where!r}")
        if isinstance(base[key], dict) and isinstance(value, dict):
            out[key] = merge_config(base[key], value, where + ".")
        elif isinstance(base[key], dict):
            raise UsageError(f"configuration key {where!r} must be an object")
        else:
            out[key] = value
    return out


def _parse_value(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(config, assignments):
    """Apply ``key.sub=value`` strings (values parsed as JSON when possible)."""
    config = copy.deepcopy(config)
    for item in assignments:
        if "=" not in item:
            raise UsageError(f"override {item!r} is not of the form key=value")
        key, text = item.split("=", 1)
        parts = key.strip().split(".")
        nested = _parse_value(text)
        for part in reversed(parts):
            nested = {part: nested}
        config = _merge_partial(config, nested)
    return config


def _merge_partial(config, update):
    out = copy.deepcopy(config)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge_partial(out[key], value)
        else:
            out[key] = value
    return out


@dataclass(frozen=True)
class Axis:
    name: str
    min: float
    max: float
    points: int
    scale: str = "linear"

    def values(self):
        if self.points < 1:
            raise UsageError(f"sweep axis {self.name!r} is empty")
        if self.scale == "log":
            if self.min <= 0 or self.max <= 0:
                raise UsageError(f"log axis {self.name!r} needs positive bounds")
            return np.geomspace(self.min, self.max, self.points)
        if self.scale == "linear":
            return np.linspace(self.min, self.max, self.points)
        raise UsageError(f"axis scale must be 'linear' or 'log', got {self.scale!r}")


@dataclass(frozen=True)
class RunConfig:
    system: SystemParams
    illumination: IlluminationParams
    sigma: float = 1.0
    delay: str = "analytic"
    sweep: tuple = ()
    output_path: str | None = None
    output_format: str = "csv"
    tolerance: float = 1e-9
    workers: int = 1
    raw: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_dict(cls, data=None, base=None):
        """Resolve a (partial) configuration against the defaults.

        Unknown keys raise :class:`UsageError`; missing keys take the
        defaults of ``base`` (``DEFAULT_CONFIG`` when omitted).
        """
        resolved = merge_config(base or DEFAULT_CONFIG, data or {})
        sys_cfg = dict(resolved["system"])
        c1, c2 = sys_cfg.pop("c1"), sys_cfg.pop("c2")
        try:
            if c1 is not None:
                sys_cfg["g1"] = coupling_from_cooperativity(c1, sys_cfg["kappa"], sys_cfg["gamma"])
            if c2 is not None:
                sys_cfg["g2"] = coupling_from_cooperativity(c2, sys_cfg["kappa"], sys_cfg["gamma"])
            system = SystemParams(**{k: float(v) for k, v in sys_cfg.items()})
            validate(system)
            ill = resolved["illumination"]
            illumination = IlluminationParams(float(ill["eta"]), float(ill["n_B"]), int(ill["m_pairs"]))
        except ParameterError as exc:
            raise UsageError(f"invalid configuration: {exc}") from exc
        except (TypeError, ValueError) as exc:
            raise UsageError(f"invalid configuration value: {exc}") from exc

        delay = resolved["filter"]["delay"]
        if delay not in DELAY_MODES:
            raise UsageError(f"filter.delay must be one of {DELAY_MODES}, got {delay!r}")
        axes = []
        for spec in resolved["sweep"]:
            extra = set(spec) - AXIS_KEYS
            if extra:
                raise UsageError(f"unknown sweep-axis keys {sorted(extra)}")
            try:
                axes.append(Axis(spec["name"], float(spec["min"]), float(spec["max"]),
                                 int(spec["points"]), spec.get("scale", "linear")))
            except KeyError as exc:
                raise UsageError(f"sweep axis missing key {exc}") from exc
        fmt = resolved["output"]["format"]
        if fmt not in ("csv", "json"):
            raise UsageError(f"output.format must be 'csv' or 'json', got {fmt!r}")
        sigma = float(resolved["filter"]["sigma"])
        if sigma < 0:
            raise UsageError("filter.sigma must be >= 0")
        return cls(
            system=system,
            illumination=illumination,
            sigma=sigma,
            delay=delay,
            sweep=tuple(axes),
            output_path=resolved["output"]["path"],
            output_format=fmt,
            tolerance=float(resolved["tolerance"]),
            workers=int(resolved["workers"]),
            raw=resolved,
        )

    def filter_spec(self, params=None, sigma=None):
        """Filter pair for this run, resolving the configured delay mode."""
        params = params or self.system
        sigma = self.sigma if sigma is None else sigma
        if self.delay == "zero" or sigma == 0:
            t = 0.0
        elif self.delay == "analytic":
            t = optimal_delay_analytic(params)
        else:
            t = optimal_delay_numeric(params, self.illumination, sigma, tol=self.tolerance)
        return FilterSpec(sigma, t)


@dataclass
class Dataset:
    columns: tuple
    rows: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.columns = tuple(self.columns)
        self.rows = np.asarray(self.rows, dtype=float).reshape(-1, len(self.columns))

    def column(self, name):
        return self.rows[:, self.columns.index(name)]

    def body_csv(self):
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(_format_number(v) for v in row) + "\n")
        return buf.getvalue()

    def to_csv(self):
        meta = json.dumps(self.metadata, sort_keys=True, default=_json_default)
        return f"# metadata: {meta}\n" + self.body_csv()

    def to_json(self):
        doc = {
            "metadata": self.metadata,
            "columns": list(self.columns),
            "data": [[None if math.isnan(v) else float(v) for v in row] for row in self.rows],
        }
        return json.dumps(doc, sort_keys=True, indent=1, default=_json_default)

    def write(self, path, fmt=None):
        path = Path(path)
        fmt = fmt or ("json" if path.suffix == ".json" else "csv")
        path.write_text(self.to_json() if fmt == "json" else self.to_csv())
        return path


def _format_number(v):
    return "nan" if math.isnan(v) else f"{v:.16e}"


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def parse_csv(text):
    metadata = {}
    lines = text.splitlines()
    body = []
    for line in lines:
        if line.startswith("# metadata: "):
            metadata = json.loads(line[len("# metadata: "):])
        elif line.strip():
            body.append(line)
    columns = tuple(body[0].split(","))
    rows = [[float(v) for v in line.split(",")] for line in body[1:]]
    return Dataset(columns, np.array(rows, dtype=float), metadata)


def parse_json(text):
    doc = json.loads(text)
    rows = [[math.nan if v is None else v for v in row] for row in doc["data"]]
    return Dataset(tuple(doc["columns"]), np.array(rows, dtype=float), doc["metadata"])


def read_dataset(path):
    path = Path(path)
    text = path.read_text()
    return parse_json(text) if text.lstrip().startswith("{") else parse_csv(text)


def _metadata(config, **extra):
    meta = {
        "config": config.raw,
        "version": __version__,
        "created": datetime.now(timezone.utc).isoformat(),
    }
    meta.update(extra)
    return meta


# --- sweeps -------------------------------------------------------------------

_SHORTHANDS = {
    "c1": ("system", "c1"),
    "c2": ("system", "c2"),
    "sigma": ("filter", "sigma"),
    "log10_m": ("illumination", "m_pairs"),
}


def _axis_target(name):
    if name in _SHORTHANDS:
        return _SHORTHANDS[name]
    if "." in name:
        section, key = name.split(".", 1)
        if section in ("system", "illumination", "filter") and key in DEFAULT_CONFIG[section]:
            return section, key
    for section in ("system", "illumination"):
        if name in DEFAULT_CONFIG[section]:
            return section, name
    raise UsageError(f"cannot sweep over {name!r}")


def _point_config(raw, assignment):
    data = copy.deepcopy(raw)
    data["sweep"] = []
    for name, value in assignment:
        section, key = _axis_target(name)
        if name == "log10_m":
            value = int(round(10 ** value))
        elif key == "m_pairs":
            value = int(round(value))
        data[section][key] = value
        if key == "g1":
            data["system"]["c1"] = None
        elif key == "g2":
            data["system"]["c2"] = None
    return RunConfig.from_dict(data)


def _evaluate_point(raw, assignment):
    cfg = _point_config(raw, assignment)
    spec = cfg.filter_spec()
    report = report_from_moments(
        receiver_moments(cfg.system, cfg.illumination, spec, cfg.tolerance), cfg.illumination
    )
    f = math.nan if report.f_merit is None else report.f_merit
    return [report.snr_qi, report.snr_coh, f, report.p_qi, report.p_coh, report.v11, spec.t_delay]


def _grid(axes):
    values = [axis.values() for axis in axes]
    if len(axes) == 1:
        return [((axes[0].name, v),) for v in values[0]]
    return [((axes[0].name, u), (axes[1].name, v)) for u in values[0] for v in values[1]]


def _map(fn, raw, assignments, workers):
    if workers <= 1:
        return [fn(raw, a) for a in assignments]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, [raw] * len(assignments), assignments))


def sweep(config):
    """Evaluate the figure of merit over one or two sweep axes, in axis-major order."""
    if isinstance(config, dict):
        config = RunConfig.from_dict(config)
    axes = config.sweep
    if not 1 <= len(axes) <= 2:
        raise UsageError(f"sweep needs 1 or 2 axes, got {len(axes)}")
    start = time.perf_counter()
    assignments = _grid(axes)
    results = _map(_evaluate_point, config.raw, assignments, config.workers)
    rows = [[v for _, v in a] + r for a, r in zip(assignments, results)]
    columns = tuple(a.name for a in axes) + SWEEP_COLUMNS
    meta = _metadata(config, kind="sweep", wall_time_s=time.perf_counter() - start)
    return Dataset(columns, np.array(rows), meta)


# --- figures ------------------------------------------------------------------

def figure_config(fig_id, config=None, overrides=()):
    if fig_id not in FIGURES:
        raise UsageError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURES)}")
    base = merge_config(DEFAULT_CONFIG, FIGURE_DEFAULTS[fig_id])
    data = merge_config(base, config or {})
    data = apply_overrides(data, overrides)
    return RunConfig.from_dict(data, base=base)


def _fig2(cfg):
    axis = cfg.sweep[0]
    omegas = axis.values()
    d, g = cfg.system.delta, cfg.system.gamma
    # resolve the mechanical peak, which is only ~gamma wide
    dense = np.linspace(d - 50 * g, d + 50 * g, 1001)
    omegas = np.unique(np.concatenate([omegas, dense[(dense >= axis.min) & (dense <= axis.max)]]))
    sp = output_spectra(cfg.system, omegas)
    e_n = log_negativity(CovarianceMatrix.from_moments(sp.n_plus, sp.n_minus, sp.x))
    ratio = np.divide(e_n, sp.n_plus, out=np.full_like(e_n, np.nan), where=sp.n_plus > 1e-15)
    columns = ("omega", "n_plus", "n_minus", "e_n", "e_n_over_n_plus")
    return columns, np.column_stack([omegas, sp.n_plus, sp.n_minus, e_n, ratio])


def _fig3_point(raw, assignment):
    cfg = _point_config(raw, assignment)
    if not is_stable(cfg.system):
        return [math.nan, math.nan]
    report = report_from_moments(
        receiver_moments(cfg.system, cfg.illumination, FilterSpec(cfg.sigma, 0.0), cfg.tolerance),
        cfg.illumination,
    )
    f = math.nan if report.f_merit is None else report.f_merit
    return [f, float(output_spectra(cfg.system, 0.0).n_plus)]


def _fig3(cfg):
    assignments = _grid(cfg.sweep)
    results = _map(_fig3_point, cfg.raw, assignments, cfg.workers)
    rows = [[v for _, v in a] + r for a, r in zip(assignments, results)]
    return ("c1", "c2", "f_merit", "n_plus_0"), np.array(rows)


def _fig4_point(raw, assignment):
    cfg = _point_config(raw, assignment)
    sigma = cfg.sigma
    mom = receiver_moments(cfg.system, cfg.illumination, FilterSpec(sigma, 0.0), cfg.tolerance)
    # the delayed column always uses an optimized delay; "zero" falls back to the closed form
    if cfg.delay == "numeric":
        t_opt = optimal_delay_numeric(cfg.system, cfg.illumination, sigma, tol=cfg.tolerance)
    else:
        t_opt = optimal_delay_analytic(cfg.system)
    spec = FilterSpec(sigma, t_opt)
    delayed = receiver_moments(cfg.system, cfg.illumination, spec, cfg.tolerance)
    il = cfg.illumination
    snr0 = snr_from_moments(mom, il.eta, il.m_pairs)
    snr1 = snr_from_moments(delayed, il.eta, il.m_pairs)
    coh = snr_coherent(il, mom.v11)
    return [snr0, snr1, snr0 / coh, snr1 / coh]


def _fig4(cfg):
    assignments = _grid(cfg.sweep)
    results = _map(_fig4_point, cfg.raw, assignments, cfg.workers)
    rows = [[a[0][1]] + r for a, r in zip(assignments, results)]
    return ("sigma", "snr_td0", "snr_topt", "f_td0", "f_topt"), np.array(rows)


def _fig5(cfg):
    spec = cfg.filter_spec()
    il = cfg.illumination.replace(m_pairs=1)
    mom = receiver_moments(cfg.system, il, spec, cfg.tolerance)
    snr1 = snr_from_moments(mom, il.eta, 1)
    coh1 = snr_coherent(il, mom.v11, 1)
    rows = []
    for log_m in cfg.sweep[0].values():
        m = float(round(10**log_m))
        rows.append([log_m, error_probability(m * snr1), error_probability(m * coh1)])
    return ("log10_m", "p_qi", "p_coh"), np.array(rows)


_FIGURE_RUNNERS = {"fig2": _fig2, "fig3": _fig3, "fig4": _fig4, "fig5": _fig5}


def run_figure(fig_id, config=None, overrides=()):
    """Dataset behind one of the reference figures.

    ``config`` is a partial configuration dict merged over the figure's
    defaults; ``overrides`` are ``key=value`` strings applied last.
    """
    cfg = figure_config(fig_id, config, overrides)
    if not cfg.sweep:
        raise UsageError(f"{fig_id} needs a sweep axis")
    start = time.perf_counter()
    columns, rows = _FIGURE_RUNNERS[fig_id](cfg)
    meta = _metadata(cfg, kind="figure", figure=fig_id, wall_time_s=time.perf_counter() - start)
    return Dataset(columns, rows, meta)
