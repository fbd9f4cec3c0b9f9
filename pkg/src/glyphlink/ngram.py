"""Baseline string similarities: n-gram set metrics and TF-IDF cosine ranking.

Two token streams feed the same machinery: character n-grams (with optional
boundary padding, the SimString setup) and stroke-code n-grams, where each
character expands to its stroke sequence and a boundary token separates
characters (the stroke-dictionary setup, default 3-grams).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import ConfigError, DataError

#: Frames a string before n-gram extraction when padding is on.
PAD_TOKEN = "▁"
#: Separates the stroke runs of adjacent characters in a stroke stream.
CHAR_BOUNDARY = "|"

Gram = tuple[str, ...]


@dataclass(frozen=True)
class NGramProfile:
    """Multiset of n-gram tokens extracted from one string."""

    n: int
    padded: bool
    counts: Mapping[Gram, int]

    def tokens(self) -> frozenset[Gram]:
        """Distinct grams (set semantics, used by the overlap metrics)."""
        return frozenset(self.counts)

    def total(self) -> int:
        return sum(self.counts.values())


def _window(tokens: list[str], n: int) -> Counter:
    counts: Counter = Counter()
    for i in range(len(tokens) - n + 1):
        counts[tuple(tokens[i : i + n])] += 1
    return counts


def char_ngrams(s: str, n: int = 2, pad: bool = True) -> NGramProfile:
    """Character n-grams; padding frames s with n-1 boundary markers per side."""
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    tokens = list(s)
    if pad and n > 1:
        frame = [PAD_TOKEN] * (n - 1)
        tokens = frame + tokens + frame
    return NGramProfile(n=n, padded=pad, counts=dict(_window(tokens, n)))


@dataclass(frozen=True)
class StrokeTable:
    """Character -> ordered stroke-code sequence. Codes are opaque tokens."""

    entries: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for char, strokes in self.entries.items():
            if len(char) != 1:
                raise DataError(f"stroke key must be a single character, got {char!r}")
            if not strokes:
                raise DataError(f"character {char!r} has an empty stroke sequence")

    def strokes(self, char: str) -> tuple[str, ...] | None:
        return self.entries.get(char)


def load_strokes(text: str) -> StrokeTable:
    """Parse stroke TSV rows `<char><TAB><code>[,<code>...]`."""
    entries: dict[str, tuple[str, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        char, sep, codes = line.partition("\t")
        if not sep:
            raise DataError(f"line {lineno}: missing TAB separator")
        if len(char) != 1:
            raise DataError(f"line {lineno}: key {char!r} is not a single character")
        if char in entries:
            raise DataError(f"line {lineno}: duplicate character {char!r}")
        strokes = tuple(c for c in codes.split(",") if c)
        if not strokes:
            raise DataError(f"line {lineno}: empty stroke sequence")
        entries[char] = strokes
    return StrokeTable(entries=entries)


def stroke_ngrams(s: str, table: StrokeTable, n: int = 3, pad: bool = False) -> NGramProfile:
    """n-grams over the concatenated stroke stream of s.

    Characters expand to their stroke codes with CHAR_BOUNDARY between
    adjacent characters; a character missing from the table contributes itself
    as a single opaque token. Padding is off by default.
    """
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    tokens: list[str] = []
    for i, char in enumerate(s):
        if i > 0:
            tokens.append(CHAR_BOUNDARY)
        strokes = table.strokes(char)
        if strokes is None:
            tokens.append(char)
        else:
            tokens.extend(strokes)
    if pad and n > 1:
        frame = [PAD_TOKEN] * (n - 1)
        tokens = frame + tokens + frame
    return NGramProfile(n=n, padded=pad, counts=dict(_window(tokens, n)))


def set_similarity(p: NGramProfile, q: NGramProfile, metric: str) -> float:
    """Overlap similarity over distinct-gram sets: cosine, dice, or jaccard.

    Two empty profiles are identical, hence 1.0; one-sided emptiness gives 0.
    """
    if p.n != q.n or p.padded != q.padded:
        raise ConfigError(
            f"profiles disagree: n={p.n}/{q.n}, padded={p.padded}/{q.padded}"
        )
    x, y = p.tokens(), q.tokens()
    if not x and not y:
        return 1.0
    if not x or not y:
        return 0.0
    inter = len(x & y)
    if metric == "jaccard":
        return inter / (len(x) + len(y) - inter)
    if metric == "dice":
        return 2 * inter / (len(x) + len(y))
    if metric == "cosine":
        return inter / math.sqrt(len(x) * len(y))
    raise ConfigError(f"unknown set metric {metric!r}")


class TfIdfIndex:
    """Sparse TF-IDF vectors over n-gram tokens for a fixed key list.

    idf(tok) = ln((1 + N) / (1 + df)) + 1, raw term counts, L2-normalized key
    vectors. Query tokens unseen at build time are ignored.
    """

    def __init__(self, keys: list[str], featurizer: Callable[[str], NGramProfile]):
        if not keys:
            raise DataError("cannot build a TF-IDF index over an empty key list")
        self.keys = list(keys)
        self.featurizer = featurizer
        profiles = [featurizer(key) for key in self.keys]
        n_docs = len(profiles)
        df: Counter = Counter()
        for prof in profiles:
            df.update(prof.tokens())
        self.idf: dict[Gram, float] = {
            tok: math.log((1 + n_docs) / (1 + d)) + 1.0 for tok, d in df.items()
        }
        self.vectors: list[dict[Gram, float]] = []
        self.postings: dict[Gram, list[tuple[int, float]]] = {}
        for kid, prof in enumerate(profiles):
            raw = {tok: count * self.idf[tok] for tok, count in prof.counts.items()}
            norm = math.sqrt(sum(w * w for w in raw.values()))
            vec = {tok: w / norm for tok, w in raw.items()} if norm > 0 else {}
            self.vectors.append(vec)
            for tok, w in vec.items():
                self.postings.setdefault(tok, []).append((kid, w))

    def query_vector(self, query: str) -> dict[Gram, float]:
        prof = self.featurizer(query)
        raw = {
            tok: count * self.idf[tok]
            for tok, count in prof.counts.items()
            if tok in self.idf
        }
        norm = math.sqrt(sum(w * w for w in raw.values()))
        return {tok: w / norm for tok, w in raw.items()} if norm > 0 else {}


def build_tfidf(keys: list[str], featurizer: Callable[[str], NGramProfile]) -> TfIdfIndex:
    return TfIdfIndex(keys, featurizer)


def tfidf_cosine(index: TfIdfIndex, query: str) -> list[tuple[int, float]]:
    """Full ranking of key ids by cosine with the query, ties by ascending id."""
    qvec = index.query_vector(query)
    scores = [0.0] * len(index.keys)
    for tok, qw in qvec.items():
        for kid, kw in index.postings.get(tok, ()):
            scores[kid] += qw * kw
    ranked = sorted(range(len(scores)), key=lambda kid: (-scores[kid], kid))
    return [(kid, min(1.0, scores[kid])) for kid in ranked]
