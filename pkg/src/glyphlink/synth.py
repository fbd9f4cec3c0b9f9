"""Seeded synthetic corpora: corrupt clean strings into two noisy views each.

Corruption applies, per character position, an optional deletion or a
homoglyph-weighted substitution, then an optional uniform insertion. Entities
whose two views come out identical are dropped, so every (query, key) truth
pair actually differs.

Randomness comes from SplitMix64, pinned here so corpora are reproducible
across implementations:

    state    = (state + 0x9E3779B97F4A7C15) mod 2^64
    z        = state
    z        = (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2^64
    z        = (z XOR (z >> 27)) * 0x94D049BB133111EB   mod 2^64
    output   = z XOR (z >> 31)

Floats take the top 53 bits (output >> 11) * 2^-53; bounded integers use the
multiply-shift reduction (output * n) >> 64.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError, DataError
from .knn import HomoglyphTable

_MASK64 = (1 << 64) - 1
#: Weight floor so zero-similarity neighbors stay reachable.
WEIGHT_FLOOR = 1e-6

DEFAULT_SUB_RATE = 0.15
DEFAULT_INS_RATE = 0.03
DEFAULT_DEL_RATE = 0.03
DEFAULT_BIAS = 4.0


class SplitMix64:
    """Tiny portable PRNG; the full algorithm is in the module docstring."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53-bit resolution."""
        return (self.next_u64() >> 11) * (2.0**-53)

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ConfigError(f"next_below needs n >= 1, got {n}")
        return (self.next_u64() * n) >> 64


@dataclass(frozen=True)
class CorruptionConfig:
    seed: int = 0
    sub_rate: float = DEFAULT_SUB_RATE
    ins_rate: float = DEFAULT_INS_RATE
    del_rate: float = DEFAULT_DEL_RATE
    homoglyph_bias: float = DEFAULT_BIAS
    alphabet: str = ""

    def __post_init__(self):
        for name in ("sub_rate", "ins_rate", "del_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {rate}")
        if self.sub_rate + self.del_rate > 1.0:
            raise ConfigError(
                f"sub_rate + del_rate must be <= 1, got {self.sub_rate + self.del_rate}"
            )
        if self.homoglyph_bias < 0:
            raise ConfigError(f"homoglyph_bias must be >= 0, got {self.homoglyph_bias}")
        if self.ins_rate > 0 and not self.alphabet:
            raise ConfigError("non-zero ins_rate requires a non-empty alphabet")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ConfigError("alphabet contains repeated characters")


def _sample_substitute(
    char: str, table: HomoglyphTable, cfg: CorruptionConfig, rng: SplitMix64
) -> str:
    # Self rows are kept in neighbor lists for lookup purposes; a substitution
    # that picks the original character is no corruption at all, so skip it.
    candidates = [(n, s) for n, s in table.neighbors(char) if n != char]
    if not candidates:
        if not cfg.alphabet:
            raise ConfigError(
                f"cannot substitute {char!r}: no neighbors and empty fallback alphabet"
            )
        return cfg.alphabet[rng.next_below(len(cfg.alphabet))]
    weights = [max(sim, WEIGHT_FLOOR) ** cfg.homoglyph_bias for _, sim in candidates]
    target = rng.next_float() * sum(weights)
    running = 0.0
    for (nbr, _), w in zip(candidates, weights):
        running += w
        if target < running:
            return nbr
    return candidates[-1][0]


def corrupt(s: str, table: HomoglyphTable, cfg: CorruptionConfig, rng: SplitMix64) -> str:
    """One noisy view of s. Deterministic given the rng state and inputs.

    Per position: one draw decides delete / substitute / keep, then an
    independent draw decides whether to insert an alphabet character after the
    position. The two draws happen even for deleted positions, so the stream
    consumption per position is fixed.
    """
    out: list[str] = []
    for char in s:
        u = rng.next_float()
        if u < cfg.del_rate:
            pass
        elif u < cfg.del_rate + cfg.sub_rate:
            out.append(_sample_substitute(char, table, cfg, rng))
        else:
            out.append(char)
        if rng.next_float() < cfg.ins_rate:
            out.append(cfg.alphabet[rng.next_below(len(cfg.alphabet))])
    return "".join(out)


def make_corpus(
    clean: list[str], table: HomoglyphTable, cfg: CorruptionConfig
) -> tuple[list[str], list[str], list[tuple[str, str]]]:
    """Two corruptions per entity: one query view, one key view.

    Entities whose views are identical are dropped. Returns (queries, keys,
    truth) where truth maps each query to its sibling key and keys holds every
    surviving sibling, first occurrence kept when collisions deduplicate.
    """
    if len(set(clean)) != len(clean):
        raise DataError("clean entity strings must be unique")
    rng = SplitMix64(cfg.seed)
    queries: list[str] = []
    truth: list[tuple[str, str]] = []
    keys: list[str] = []
    seen_keys: set[str] = set()
    for name in clean:
        query_view = corrupt(name, table, cfg, rng)
        key_view = corrupt(name, table, cfg, rng)
        if query_view == key_view:
            continue
        queries.append(query_view)
        truth.append((query_view, key_view))
        if key_view not in seen_keys:
            seen_keys.add(key_view)
            keys.append(key_view)
    if len(truth) < 2:
        raise DataError(
            f"only {len(truth)} entities survived the differing-views filter; need at least 2"
        )
    return queries, keys, truth


def read_config(text: str, seed: int | None = None) -> CorruptionConfig:
    """Parse `key = value` lines (# comments, optional quotes around values)."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise DataError(f"config line {lineno}: expected key = value")
        key = key.strip()
        value = value.strip()
        if len(value) >= 2 and value[0] == value[-1] and value[0] in "'\"":
            value = value[1:-1]
        if key in values:
            raise DataError(f"config line {lineno}: duplicate key {key!r}")
        values[key] = value
    kwargs: dict = {}
    try:
        if "seed" in values:
            kwargs["seed"] = int(values.pop("seed"))
        for name in ("sub_rate", "ins_rate", "del_rate", "homoglyph_bias"):
            if name in values:
                kwargs[name] = float(values.pop(name))
        if "alphabet" in values:
            kwargs["alphabet"] = values.pop("alphabet")
    except ValueError as exc:
        raise DataError(f"config value error: {exc}") from None
    if values:
        raise DataError(f"unknown config keys: {sorted(values)}")
    if seed is not None:
        kwargs["seed"] = seed
    return CorruptionConfig(**kwargs)
