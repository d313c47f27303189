"""JSON run configuration: one document per run.

Schema (all sections except ``model`` optional)::

    {
      "model": {"kappa": 1.0, "omega0": 1.0,
                "variant": {"type": "TTW_F", "m": "3/2", "k_a": 1.0, "k_b": 0.5}},
      "initial": {"r": 0.5, "phi": 0.7, "p_r": 0.1, "p_phi": 0.8},
      "integrator": {"method": "adaptive_rk", "rel_tol": 1e-10, "abs_tol": 1e-12,
                     "h_init": 0.01, "h_min": 1e-12, "t_end": 10.0, "sample_dt": 0.1},
      "outputs": {"csv_path": "traj.csv", "json_path": "traj.json", "svg_path": null},
      "seed": 0,
      "verify": {"points": 1000, "box": {...SamplerBox fields...}},
      "closure": {"t_max": 200.0, "tol": 1e-4}
    }

Variant types: ``Harmonic``, ``SW`` (k2, k3), ``TTW_F`` (m, k_a, k_b) and
``TTW_G`` (m, alpha, beta).  ``m`` is written as a ``"p/q"`` string.
"""

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from .dynamics import SW, CustomF, Harmonic, ModelParams, PhaseState, TTW_F, TTW_G
from .errors import ConfigError
from .integrate import IntegratorConfig, wall_limits
from .verify import SamplerBox

_VARIANT_FIELDS = {
    "Harmonic": (Harmonic, ()),
    "SW": (SW, ("k2", "k3")),
    "TTW_F": (TTW_F, ("m", "k_a", "k_b")),
    "TTW_G": (TTW_G, ("m", "alpha", "beta")),
}


def variant_from_dict(d) -> object:
    if isinstance(d, str):
        d = {"type": d}
    kind = d.get("type")
    lookup = {k.lower(): k for k in _VARIANT_FIELDS}
    if kind is None or kind.lower() not in lookup:
        raise ConfigError(f"unknown variant type {kind!r}; expected one of {sorted(_VARIANT_FIELDS)}")
    cls, names = _VARIANT_FIELDS[lookup[kind.lower()]]
    missing = [n for n in names if n not in d]
    if missing:
        raise ConfigError(f"variant {kind} is missing {missing}")
    kwargs = {n: (str(d[n]) if n == "m" else float(d[n])) for n in names}
    try:
        return cls(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def variant_to_dict(v) -> dict:
    if isinstance(v, CustomF):
        raise ConfigError("CustomF variants cannot be serialised")
    name = type(v).__name__
    _, names = _VARIANT_FIELDS[name]
    out = {"type": name}
    for n in names:
        val = getattr(v, n)
        out[n] = str(val) if n == "m" else val
    return out


def model_from_dict(d: dict) -> ModelParams:
    try:
        return ModelParams(float(d["kappa"]), float(d.get("omega0", 1.0)),
                           variant_from_dict(d.get("variant", "Harmonic")))
    except KeyError as exc:
        raise ConfigError(f"model is missing {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def model_to_dict(model: ModelParams) -> dict:
    return {"kappa": model.kappa, "omega0": model.omega0, "variant": variant_to_dict(model.variant)}


@dataclass
class RunConfig:
    model: ModelParams
    initial: Optional[PhaseState] = None
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    outputs: dict = field(default_factory=dict)
    seed: int = 0
    points: int = 1000
    box: SamplerBox = field(default_factory=SamplerBox)
    t_max: float = 200.0
    tol: float = 1e-4

    def to_dict(self) -> dict:
        d = {"model": model_to_dict(self.model)}
        if self.initial is not None:
            d["initial"] = asdict(self.initial)
        d["integrator"] = asdict(self.integrator)
        d["outputs"] = dict(self.outputs)
        d["seed"] = self.seed
        d["verify"] = {"points": self.points, "box": self.box.to_dict()}
        d["closure"] = {"t_max": self.t_max, "tol": self.tol}
        return d

    def validate_initial(self):
        """Domain check of the initial state (raises ConfigError)."""
        if self.initial is None:
            raise ConfigError("config has no 'initial' state")
        lo, hi = wall_limits(self.model)
        if not lo < self.initial.r < hi:
            raise ConfigError(f"initial r={self.initial.r} outside the radial domain (0, {self.model.r_max})")
        if not self.initial.is_finite():
            raise ConfigError("initial state has non-finite entries")


def config_from_dict(d: dict) -> RunConfig:
    if not isinstance(d, dict) or "model" not in d:
        raise ConfigError("config must be a JSON object with a 'model' section")
    model = model_from_dict(d["model"])
    initial = None
    if "initial" in d:
        try:
            s = d["initial"]
            initial = PhaseState(float(s["r"]), float(s["phi"]), float(s["p_r"]), float(s["p_phi"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad initial state: {exc}") from exc
    try:
        integrator = IntegratorConfig(**d.get("integrator", {}))
        box = SamplerBox.from_dict(d.get("verify", {}).get("box", {}))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    outputs = {k: v for k, v in d.get("outputs", {}).items() if k in ("csv_path", "json_path", "svg_path")}
    closure = d.get("closure", {})
    return RunConfig(model, initial, integrator, outputs, int(d.get("seed", 0)),
                     int(d.get("verify", {}).get("points", 1000)), box,
                     float(closure.get("t_max", 200.0)), float(closure.get("tol", 1e-4)))


def load_config(path) -> RunConfig:
    try:
        with open(Path(path)) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_dict(data)
