"""Line-oriented experiment configuration: `key = value` with # comments."""

from __future__ import annotations

from dataclasses import dataclass, fields

DATA_SOURCES = ("bernoulli-half", "ground-truth-rbm")


class ConfigError(ValueError):
    """Raised for unparseable text, unknown keys, or invalid values."""


@dataclass
class ExperimentConfig:
    k: int = 6
    m: int = 3
    n: int = 50
    B_radius: float = 1.0
    W_radius: float = 1.0
    num_sigma: int = 200
    restarts: int = 8
    iterations: int = 500
    seed: int = 0
    vc_values: tuple = (1, 2, 5, 10)
    data_source: str = "bernoulli-half"
    output_dir: str = "."
    epochs: int = 200
    learning_rate: float = 0.05
    audit_every: int = 1
    num_members: int = 256
    quant_epsilon: float = 0.05
    members_file: str | None = None
    init_params_file: str | None = None

    def validate(self) -> None:
        for name in ("k", "m", "n", "num_sigma", "restarts", "iterations",
                     "audit_every", "num_members"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        for name in ("B_radius", "W_radius", "learning_rate"):
            if getattr(self, name) < 0.0:
                raise ConfigError(f"{name} must be nonnegative")
        if self.epochs < 0:
            raise ConfigError("epochs must be nonnegative")
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        if not self.vc_values:
            raise ConfigError("vc_values must be nonempty")
        if any(v < 0 for v in self.vc_values):
            raise ConfigError("vc_values entries must be nonnegative")
        if self.data_source not in DATA_SOURCES:
            raise ConfigError(
                f"data_source must be one of {', '.join(DATA_SOURCES)}"
            )
        if self.quant_epsilon <= 0.0:
            raise ConfigError("quant_epsilon must be positive")


_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}
_INT_KEYS = ("k", "m", "n", "num_sigma", "restarts", "iterations", "seed",
             "epochs", "audit_every", "num_members")
_FLOAT_KEYS = ("B_radius", "W_radius", "learning_rate", "quant_epsilon")
_STR_KEYS = ("data_source", "output_dir", "members_file", "init_params_file")


def _parse_value(key: str, raw: str):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key == "vc_values":
            return tuple(int(tok) for tok in raw.split(",") if tok.strip())
        if key in _STR_KEYS:
            return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    raise ConfigError(f"unknown config key {key!r}")


def parse_config(text: str) -> ExperimentConfig:
    cfg = ExperimentConfig()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        setattr(cfg, key, _parse_value(key, raw))
    cfg.validate()
    return cfg


def serialize_config(cfg: ExperimentConfig) -> str:
    lines = []
    for f in fields(ExperimentConfig):
        value = getattr(cfg, f.name)
        if value is None:
            continue
        if f.name == "vc_values":
            rendered = ",".join(str(v) for v in value)
        elif isinstance(value, float):
            rendered = repr(value)
        else:
            rendered = str(value)
        lines.append(f"{f.name} = {rendered}")
    return "\n".join(lines) + "\n"


def load_config(path) -> ExperimentConfig:
    with open(path) as fh:
        return parse_config(fh.read())
