"""Training configuration: a dataclass plus a key=value file loader.

Parameters come from flags, a config file, or both; flags win. Defaults
(lr 2e-5, weight decay 5e-3, scheduler T_0 1 and T_mult 2, temperature
0.1) suit fine-tuning a large pretrained encoder; toy runs usually raise
the learning rate since the toy encoder trains from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .errors import ConfigError

DEFAULT_TAU = 0.1
DEFAULT_LR = 2e-5
DEFAULT_WEIGHT_DECAY = 5e-3
DEFAULT_T0 = 1
DEFAULT_T_MULT = 2


@dataclass(frozen=True)
class TrainerConfig:
    tau: float = DEFAULT_TAU
    batch_size: int = 20
    views_per_class: int = 2
    hard_neg_k: int = 5
    mine: bool = False
    lr: float = DEFAULT_LR
    weight_decay: float = DEFAULT_WEIGHT_DECAY
    t0: int = DEFAULT_T0
    t_mult: int = DEFAULT_T_MULT
    epochs: int = 30
    seed: int = 0
    side: int = 32

    def __post_init__(self):
        if self.tau <= 0:
            raise ConfigError(f"tau must be positive, got {self.tau}")
        if self.batch_size < 2:
            raise ConfigError(f"batch_size must be >= 2, got {self.batch_size}")
        if self.views_per_class < 1:
            raise ConfigError(
                f"views_per_class must be >= 1, got {self.views_per_class}"
            )
        if self.batch_size % self.views_per_class != 0:
            raise ConfigError(
                f"batch_size {self.batch_size} not divisible by "
                f"views_per_class {self.views_per_class}"
            )
        if self.mine and self.hard_neg_k < 2:
            raise ConfigError(
                f"hard_neg_k must be >= 2 with mining enabled, got {self.hard_neg_k}"
            )
        if self.lr <= 0:
            raise ConfigError(f"lr must be positive, got {self.lr}")
        if self.weight_decay < 0:
            raise ConfigError(f"weight_decay must be non-negative, got {self.weight_decay}")
        if self.t0 < 1:
            raise ConfigError(f"t0 must be >= 1, got {self.t0}")
        if self.t_mult < 1:
            raise ConfigError(f"t_mult must be >= 1, got {self.t_mult}")
        if self.epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {self.epochs}")
        if self.side < 8:
            raise ConfigError(f"side must be >= 8, got {self.side}")

    @property
    def classes_per_batch(self) -> int:
        return self.batch_size // self.views_per_class


_FIELD_TYPES = {f.name: f.type for f in fields(TrainerConfig)}
_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}


def _parse_value(key: str, raw: str):
    kind = _FIELD_TYPES[key]
    if kind == "bool":
        low = raw.lower()
        if low in _BOOL_TRUE:
            return True
        if low in _BOOL_FALSE:
            return False
        raise ConfigError(f"{key}: expected a boolean, got {raw!r}")
    try:
        return int(raw) if kind == "int" else float(raw)
    except ValueError:
        raise ConfigError(f"{key}: bad value {raw!r}") from None


def read_config(text: str, **overrides) -> TrainerConfig:
    """Parse key=value lines; blank lines and # comments are skipped.

    Keyword overrides (typically from flags) replace file values; an
    override of None means the flag was not given.
    """
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown parameter {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate parameter {key!r}")
        values[key] = _parse_value(key, value.strip())
    config = TrainerConfig(**values)
    live = {k: v for k, v in overrides.items() if v is not None}
    return replace(config, **live) if live else config
