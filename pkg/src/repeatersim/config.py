"""Flat ``dotted.key = value`` run configuration.

Blank lines and ``#`` comments are ignored.  Lists are comma separated.
Every key can also be given on the command line as ``--dotted.key VALUE``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .noise import NoiseModel
from .protocols import ProtocolSpec
from .states import WernerParams
from .timing import TimeModel


class ConfigError(DomainError):
    pass


def _floats(text):
    return tuple(float(v) for v in str(text).split(",") if v.strip())


def _ints(text):
    return tuple(int(v) for v in str(text).split(",") if v.strip())


# key -> (parser, default, help)
KEYS = {
    "noise.p": (float, 0.99, "two-qubit gate reliability"),
    "noise.eta": (float, 0.99, "measurement reliability"),
    "noise.kappa": (float, 1.0, "memory decoherence rate in 1/s"),
    "time.t0_s": (float, 0.333e-4, "signal time over one elementary segment"),
    "time.segment_km": (float, 10.0, "length of one elementary segment"),
    "time.gate_time_s": (float, 0.0, "gate time added to every wait"),
    "protocol.kind": (str, "standard", "standard, innsbruck or blind_topped"),
    "protocol.levels": (int, 11, "number of repeater levels"),
    "protocol.steps": (_ints, (3,), "rounds per level; one value is used on every level"),
    "protocol.initial_f": (float, 0.8, "fidelity of the elementary Werner pairs"),
    "protocol.blind_levels": (int, 0, "top levels run in blind mode"),
    "protocol.base": (str, "innsbruck", "runner below the blind levels"),
    "regime.levels": (int, 12, "levels scanned by the regime table"),
    "regime.pump_f": (float, 0.8, "fidelity of the pumping source pair"),
    "sweep.error_rates": (_floats, (0.03, 0.02, 0.01, 0.005, 0.003, 0.002, 0.001), "values of 1-p = 1-eta"),
    "sweep.coherence_times": (_floats, (1.0, 0.1), "values of 1/kappa in seconds"),
    "sweep.level_cap": (int, 12, "highest level the strategy search may reach"),
    "sweep.min_fidelity": (float, 0.0, "fidelity every level must keep (0 disables)"),
    "sweep.jobs": (int, 1, "worker processes for sweep points"),
    "blind.M": (int, 3, "purification rounds per blind level"),
    "blind.L": (int, 2, "pairs connected per level"),
    "blind.m": (_ints, (1, 2, 3, 4), "numbers of blind levels"),
    "blind.p_suc": (_floats, (0.95, 0.9), "round success probabilities"),
    "oracle.cases": (int, 1000, "random cases in the equivalence check"),
    "oracle.tol": (float, 1e-12, "largest accepted absolute deviation"),
}


def parse_value(key, text):
    if key not in KEYS:
        raise ConfigError(f"unknown config key {key!r}")
    try:
        return KEYS[key][0](text)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {text!r} ({exc})") from None


def read_config(path):
    """Parse a config file into ``{key: value}`` (only keys present in the file)."""
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    out = {}
    for n, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key] = parse_value(key, value)
    return out


@dataclass(frozen=True)
class RunConfig:
    values: dict

    def __getitem__(self, key):
        return self.values[key]

    @classmethod
    def build(cls, file_values=None, overrides=None):
        """Defaults, then the file, then command-line overrides."""
        values = {k: spec[1] for k, spec in KEYS.items()}
        values.update(file_values or {})
        values.update(overrides or {})
        cfg = cls(values)
        cfg.noise(), cfg.time(), cfg.protocol()  # validate early
        for key in ("sweep.error_rates", "sweep.coherence_times", "blind.m", "blind.p_suc"):
            if not values[key]:
                raise ConfigError(f"{key} must not be empty")
        return cfg

    def noise(self):
        return NoiseModel(self["noise.p"], self["noise.eta"], self["noise.kappa"])

    def time(self):
        return TimeModel(self["time.t0_s"], self["time.segment_km"], self["time.gate_time_s"])

    def protocol(self):
        levels, steps = self["protocol.levels"], self["protocol.steps"]
        if len(steps) == 1:
            steps = steps * levels
        return ProtocolSpec(
            kind=self["protocol.kind"],
            levels=levels,
            steps_per_level=steps,
            initial=WernerParams.from_fidelity(self["protocol.initial_f"]),
            blind_levels=self["protocol.blind_levels"],
            base=self["protocol.base"],
        )

    def as_params(self):
        return {k: list(v) if isinstance(v, tuple) else v for k, v in sorted(self.values.items())}
