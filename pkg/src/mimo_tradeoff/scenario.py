"""JSON scenario files.

A scenario is a single JSON object.  System and power-model parameters sit
at the top level under their field names; the optional sweep is a nested
object::

    {
      "K": 8, "M_t": 64, "N": 16, "rho_d": 1.0,
      "q_dac": 0.0156,
      "sweep": {"variable": "rho_d", "start": 0.0, "stop": 10.0, "steps": 200},
      "trials": 100000, "master_seed": 7
    }

Absent keys take their defaults, unknown or duplicated keys are rejected.
"""

from dataclasses import asdict, dataclass, field, fields, replace
import json
import re
from typing import Optional

import numpy as np

from .analytic import PowerModel, SystemConfig
from .errors import ConfigError, ScenarioError
from .montecarlo import DEFAULT_TRIALS

__all__ = ["Sweep", "Scenario", "parse_scenario", "load_scenario",
           "serialize_scenario", "SYSTEM_KEYS", "POWER_KEYS", "SCENARIO_KEYS"]

SYSTEM_KEYS = tuple(f.name for f in fields(SystemConfig))
POWER_KEYS = tuple(f.name for f in fields(PowerModel))
SCENARIO_KEYS = ("sweep", "trials", "master_seed", "output_path")
SWEEP_KEYS = ("variable", "start", "stop", "steps")


@dataclass(frozen=True)
class Sweep:
    variable: str
    start: float
    stop: float
    steps: int

    def validate(self, cfg: SystemConfig):
        if self.variable not in ("n", "rho_d"):
            raise ConfigError(f"sweep variable must be 'n' or 'rho_d', got {self.variable!r}")
        if isinstance(self.steps, bool) or not isinstance(self.steps, int) or self.steps < 2:
            raise ConfigError(f"sweep steps must be an integer >= 2, got {self.steps!r}")
        if self.start > self.stop:
            raise ConfigError(f"sweep start {self.start} exceeds stop {self.stop}")
        if self.variable == "n":
            for v in (self.start, self.stop):
                if isinstance(v, bool) or not isinstance(v, int):
                    raise ConfigError(f"antenna sweep bounds must be integers, got {v!r}")
            if not cfg.K <= self.start <= self.stop <= cfg.M_t:
                raise ConfigError(
                    f"antenna sweep [{self.start}, {self.stop}] violates K ≤ N ≤ M_t "
                    f"(K={cfg.K}, M_t={cfg.M_t})")
        else:
            if self.start == self.stop:
                raise ConfigError(f"degenerate power sweep [{self.start}, {self.stop}]")
            if not (0 <= self.start and self.stop <= cfg.rho_d_max):
                raise ConfigError(
                    f"power sweep [{self.start}, {self.stop}] violates "
                    f"0 ≤ rho_d ≤ rho_d_max (rho_d_max={cfg.rho_d_max})")

    def values(self):
        if self.variable == "n":
            raw = np.rint(np.linspace(self.start, self.stop, self.steps)).astype(int)
            return [int(v) for v in dict.fromkeys(raw.tolist())]
        return [float(v) for v in np.linspace(self.start, self.stop, self.steps)]


@dataclass(frozen=True)
class Scenario:
    system: SystemConfig
    power: PowerModel = field(default_factory=PowerModel)
    sweep: Optional[Sweep] = None
    trials: int = DEFAULT_TRIALS
    master_seed: int = 0
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.sweep is not None:
            self.sweep.validate(self.system)
        if isinstance(self.trials, bool) or not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError(f"trials must be a positive integer, got {self.trials!r}")
        if (isinstance(self.master_seed, bool) or not isinstance(self.master_seed, int)
                or not 0 <= self.master_seed < 2**64):
            raise ConfigError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed!r}")

    def replace(self, **changes):
        return replace(self, **changes)


def _line_of(text, key):
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _reject_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ScenarioError(f"duplicate key {k!r}")
        out[k] = v
    return out


def parse_scenario(text: str) -> Scenario:
    """Parse scenario text, fill defaults and validate all constraints.

    Raises
    ------
    ScenarioError
        On malformed JSON (with the offending line), unknown keys, or any
        violated model constraint.
    """
    try:
        data = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ScenarioError(exc.msg, line=exc.lineno) from exc
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object", line=1)

    known = set(SYSTEM_KEYS) | set(POWER_KEYS) | set(SCENARIO_KEYS)
    for key in data:
        if key not in known:
            raise ScenarioError(f"unknown key {key!r}", line=_line_of(text, key))
    for key in ("K", "M_t"):
        if key not in data:
            raise ScenarioError(f"missing required key {key!r}")

    system = {k: data[k] for k in SYSTEM_KEYS if k in data}
    system.setdefault("N", system["M_t"])
    power = {k: data[k] for k in POWER_KEYS if k in data}
    try:
        sweep = None
        if data.get("sweep") is not None:
            raw = data["sweep"]
            if not isinstance(raw, dict):
                raise ScenarioError("sweep must be an object", line=_line_of(text, "sweep"))
            for key in raw:
                if key not in SWEEP_KEYS:
                    raise ScenarioError(f"unknown sweep key {key!r}", line=_line_of(text, key))
            missing = [k for k in SWEEP_KEYS if k not in raw]
            if missing:
                raise ScenarioError(f"sweep is missing {missing}", line=_line_of(text, "sweep"))
            sweep = Sweep(**raw)
        return Scenario(
            system=SystemConfig(**system),
            power=PowerModel(**power),
            sweep=sweep,
            trials=data.get("trials", DEFAULT_TRIALS),
            master_seed=data.get("master_seed", 0),
            output_path=data.get("output_path"),
        )
    except (ConfigError, TypeError) as exc:
        raise ScenarioError(str(exc)) from exc


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def serialize_scenario(scenario: Scenario) -> str:
    """Canonical JSON text with every field spelled out."""
    data = {}
    data.update(asdict(scenario.system))
    data.update(asdict(scenario.power))
    data["sweep"] = asdict(scenario.sweep) if scenario.sweep is not None else None
    data["trials"] = scenario.trials
    data["master_seed"] = scenario.master_seed
    data["output_path"] = scenario.output_path
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
