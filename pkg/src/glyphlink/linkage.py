"""Match queries against a key set and score accuracy against ground truth.

Every method ranks all keys per query (exhaustive scan) and keeps the top-1,
ties broken by ascending key id. All strings are NFC-normalized before
comparison. Identical inputs and configuration give byte-identical reports.

File formats (all UTF-8):
    queries / keys   one string per line
    truth            <query><TAB><true key>
    decisions        optional `#method <tag>` header, then
                     <query><TAB><matched key><TAB><score>  (6 decimals)
    report           method/total/correct/accuracy TSV, accuracy to 6 decimals
"""

from __future__ import annotations

import sys
import unicodedata
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .distance import CostModel
from .errors import ConfigError, DataError
from .knn import HomoglyphTable
from .ngram import (
    NGramProfile,
    StrokeTable,
    TfIdfIndex,
    char_ngrams,
    stroke_ngrams,
    tfidf_cosine,
)

EDIT_METHODS = ("classic-lev", "homoglyphic-lev")
SET_METHODS = ("simstring-cosine", "simstring-dice", "simstring-jaccard")
TFIDF_METHODS = ("fuzzy-stroke", "fuzzy-char")
METHODS = EDIT_METHODS + SET_METHODS + TFIDF_METHODS

PROGRESS_EVERY = 10_000


def nfc(s: str) -> str:
    return unicodedata.normalize("NFC", s)


class KeySet:
    """Ordered unique key strings; a key's id is its position."""

    def __init__(self, strings: Sequence[str]):
        self.strings: list[str] = []
        self.index: dict[str, int] = {}
        for raw in strings:
            key = nfc(raw)
            if key in self.index:
                raise DataError(f"duplicate key {key!r} after NFC normalization")
            self.index[key] = len(self.strings)
            self.strings.append(key)
        if not self.strings:
            raise DataError("key set must not be empty")

    def __len__(self) -> int:
        return len(self.strings)

    def __contains__(self, key: str) -> bool:
        return nfc(key) in self.index


@dataclass(frozen=True)
class MatchDecision:
    query: str
    key_id: int
    score: float
    method: str


@dataclass(frozen=True)
class LinkageReport:
    method: str
    total: int
    correct: int
    accuracy: float
    decisions: tuple[MatchDecision, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class MatchConfig:
    """Method selection plus its parameters; validated on construction."""

    method: str
    sub_cost: float = 1.0
    insert_cost: float = 1.0
    delete_cost: float = 1.0
    clamp_negative: bool = True
    homoglyphs: HomoglyphTable | None = None
    strokes: StrokeTable | None = None
    ngram_n: int | None = None
    pad: bool | None = None
    workers: int = 1

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(
                f"unknown method {self.method!r}; choose one of {', '.join(METHODS)}"
            )
        if self.method == "fuzzy-stroke" and self.strokes is None:
            raise ConfigError("fuzzy-stroke requires a stroke table")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.ngram_n is not None and self.ngram_n < 1:
            raise ConfigError(f"n must be >= 1, got {self.ngram_n}")

    @property
    def resolved_n(self) -> int:
        if self.ngram_n is not None:
            return self.ngram_n
        return 2 if self.method in SET_METHODS else 3

    @property
    def resolved_pad(self) -> bool:
        if self.pad is not None:
            return self.pad
        return self.method in SET_METHODS

    def cost_model(self) -> CostModel:
        sims = self.homoglyphs if self.method == "homoglyphic-lev" else None
        return CostModel(
            sub_cost=self.sub_cost,
            insert_cost=self.insert_cost,
            delete_cost=self.delete_cost,
            sims=sims,
            clamp_negative=self.clamp_negative,
        )


class _EditMatcher:
    """Edit-distance scan vectorized across keys.

    The dynamic program runs cell by cell over the query/key lattice but
    elementwise across all keys at once; each key's lattice sees exactly the
    additions and minima of the scalar algorithm.
    """

    def __init__(self, keys: KeySet, config: MatchConfig):
        self.cost = config.cost_model()
        self.vocab: dict[str, int] = {}
        for key in keys.strings:
            for char in key:
                self.vocab.setdefault(char, len(self.vocab))
        self.n_keys = len(keys)
        self.pad_id = len(self.vocab)
        self.max_len = max((len(k) for k in keys.strings), default=0)
        width = max(self.max_len, 1)
        codes = np.full((self.n_keys, width), self.pad_id, dtype=np.int64)
        for kid, key in enumerate(keys.strings):
            for j, char in enumerate(key):
                codes[kid, j] = self.vocab[char]
        self.key_codes = codes
        self.key_lens = np.array([len(k) for k in keys.strings], dtype=np.int64)
        self._sim_rows: dict[str, np.ndarray] = {}
        # Reverse neighbor lists support the symmetric similarity fallback.
        self._reverse: dict[str, list[tuple[str, float]]] = {}
        sims = self.cost.sims
        if sims is not None:
            for char in sims.chars():
                for nbr, sim in sims.neighbors(char):
                    self._reverse.setdefault(nbr, []).append((char, sim))

    def _sim_row(self, a: str) -> np.ndarray:
        row = self._sim_rows.get(a)
        if row is not None:
            return row
        row = np.zeros(self.pad_id + 1, dtype=np.float64)
        sims = self.cost.sims
        if sims is not None:
            clamp = self.cost.clamp_negative

            def effective(sim: float) -> float:
                return max(sim, 0.0) if clamp else sim

            own = {nbr: sim for nbr, sim in sims.neighbors(a)}
            for b, sim in self._reverse.get(a, ()):
                if b not in own:
                    idx = self.vocab.get(b)
                    if idx is not None:
                        row[idx] = effective(sim)
            for nbr, sim in own.items():
                idx = self.vocab.get(nbr)
                if idx is not None:
                    row[idx] = effective(sim)
        idx = self.vocab.get(a)
        if idx is not None:
            row[idx] = 1.0
        self._sim_rows[a] = row
        return row

    def distances(self, query: str) -> np.ndarray:
        ins, dele, sub = self.cost.insert_cost, self.cost.delete_cost, self.cost.sub_cost
        width = self.key_codes.shape[1]
        prev = np.empty((self.n_keys, width + 1), dtype=np.float64)
        prev[:, 0] = 0.0
        for j in range(1, width + 1):
            prev[:, j] = prev[:, j - 1] + ins
        cur = np.empty_like(prev)
        for a in query:
            sub_costs = sub * (1.0 - self._sim_row(a)[self.key_codes])
            cur[:, 0] = prev[:, 0] + dele
            for j in range(1, width + 1):
                best = np.minimum(prev[:, j] + dele, prev[:, j - 1] + sub_costs[:, j - 1])
                cur[:, j] = np.minimum(best, cur[:, j - 1] + ins)
            prev, cur = cur, prev
        return prev[np.arange(self.n_keys), self.key_lens]

    def decide(self, query: str) -> tuple[int, float]:
        dists = self.distances(query)
        kid = int(np.argmin(dists))  # first minimum = lowest key id
        return kid, float(dists[kid])


class _SetMatcher:
    """Distinct-gram overlap metrics vectorized across keys."""

    def __init__(self, keys: KeySet, config: MatchConfig):
        self.metric = config.method.removeprefix("simstring-")
        self.n = config.resolved_n
        self.pad = config.resolved_pad
        token_sets = [
            char_ngrams(key, self.n, self.pad).tokens() for key in keys.strings
        ]
        self.sizes = np.array([len(ts) for ts in token_sets], dtype=np.int64)
        postings: dict[tuple, list[int]] = {}
        for kid, ts in enumerate(token_sets):
            for tok in ts:
                postings.setdefault(tok, []).append(kid)
        self.postings = {tok: np.array(kids, dtype=np.int64) for tok, kids in postings.items()}

    def scores(self, query: str) -> np.ndarray:
        qset = char_ngrams(query, self.n, self.pad).tokens()
        qsize = len(qset)
        n_keys = self.sizes.shape[0]
        if qsize == 0:
            return np.where(self.sizes == 0, 1.0, 0.0)
        hits = np.zeros(n_keys, dtype=np.int64)
        for tok in qset:
            kids = self.postings.get(tok)
            if kids is not None:
                hits[kids] += 1
        scores = np.zeros(n_keys, dtype=np.float64)
        nonempty = self.sizes > 0
        if self.metric == "jaccard":
            np.divide(hits, qsize + self.sizes - hits, out=scores, where=nonempty)
        elif self.metric == "dice":
            np.divide(2 * hits, qsize + self.sizes, out=scores, where=nonempty)
        else:  # cosine
            np.divide(hits, np.sqrt(qsize * self.sizes), out=scores, where=nonempty)
        return scores

    def decide(self, query: str) -> tuple[int, float]:
        scores = self.scores(query)
        kid = int(np.argmax(scores))  # first maximum = lowest key id
        return kid, float(scores[kid])


class _TfIdfMatcher:
    """TF-IDF cosine ranking over stroke or character n-grams."""

    def __init__(self, keys: KeySet, config: MatchConfig):
        n, pad = config.resolved_n, config.resolved_pad
        if config.method == "fuzzy-stroke":
            strokes = config.strokes

            def featurizer(s: str) -> NGramProfile:
                return stroke_ngrams(s, strokes, n, pad)

        else:

            def featurizer(s: str) -> NGramProfile:
                return char_ngrams(s, n, pad)

        self.index = TfIdfIndex(keys.strings, featurizer)

    def decide(self, query: str) -> tuple[int, float]:
        return tfidf_cosine(self.index, query)[0]


def _build_matcher(keys: KeySet, config: MatchConfig):
    if config.method in EDIT_METHODS:
        return _EditMatcher(keys, config)
    if config.method in SET_METHODS:
        return _SetMatcher(keys, config)
    return _TfIdfMatcher(keys, config)


def _match_chunk(args: tuple[list[str], KeySet, MatchConfig]) -> list[MatchDecision]:
    queries, keys, config = args
    matcher = _build_matcher(keys, config)
    out = []
    for query in queries:
        kid, score = matcher.decide(query)
        out.append(MatchDecision(query=query, key_id=kid, score=score, method=config.method))
    return out


def match_all(
    queries: Sequence[str],
    keys: KeySet,
    config: MatchConfig,
    progress: Callable[[int], None] | None = None,
) -> list[MatchDecision]:
    """Top-1 decision per query. Parallelism never changes the output."""
    normalized = [nfc(q) for q in queries]
    if config.workers > 1 and len(normalized) > 1:
        chunk = (len(normalized) + config.workers - 1) // config.workers
        parts = [normalized[i : i + chunk] for i in range(0, len(normalized), chunk)]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = pool.map(_match_chunk, [(part, keys, config) for part in parts])
        decisions: list[MatchDecision] = []
        for part in results:
            decisions.extend(part)
            if progress is not None:
                progress(len(decisions))
        return decisions
    matcher = _build_matcher(keys, config)
    decisions = []
    for i, query in enumerate(normalized, 1):
        kid, score = matcher.decide(query)
        decisions.append(MatchDecision(query=query, key_id=kid, score=score, method=config.method))
        if progress is not None and i % PROGRESS_EVERY == 0:
            progress(i)
    return decisions


def stderr_progress(done: int) -> None:
    print(f"matched {done} queries", file=sys.stderr)


def evaluate(
    decisions: Sequence[MatchDecision],
    truth: Sequence[tuple[str, str]],
    keys: KeySet,
) -> LinkageReport:
    """Fraction of truth pairs whose decision picked the true key string.

    Each truth query consumes one decision with the same (NFC) query string;
    a truth query with no remaining decision, or a true key absent from the
    key set, is an error.
    """
    if not truth:
        raise DataError("truth list must not be empty")
    if not decisions:
        raise DataError("decisions list must not be empty")
    methods = {d.method for d in decisions}
    if len(methods) > 1:
        raise DataError(f"decisions mix methods: {sorted(methods)}")
    method = decisions[0].method
    pool: dict[str, list[MatchDecision]] = {}
    for d in decisions:
        pool.setdefault(d.query, []).append(d)
    correct = 0
    for raw_query, raw_key in truth:
        query, true_key = nfc(raw_query), nfc(raw_key)
        if true_key not in keys.index:
            raise DataError(f"true key {true_key!r} is not in the key set")
        remaining = pool.get(query)
        if not remaining:
            raise DataError(f"truth query {query!r} has no matching decision")
        decision = remaining.pop()
        if keys.strings[decision.key_id] == true_key:
            correct += 1
    total = len(truth)
    return LinkageReport(
        method=method,
        total=total,
        correct=correct,
        accuracy=correct / total,
        decisions=tuple(decisions),
    )


# --- file round trips ---------------------------------------------------


def read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


def write_lines(path: str, lines: Sequence[str]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")


def read_truth(path: str) -> list[tuple[str, str]]:
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh.read().splitlines(), 1):
            if not raw or raw.startswith("#"):
                continue
            fields = raw.split("\t")
            if len(fields) != 2:
                raise DataError(f"{path}:{lineno}: expected <query><TAB><true key>")
            pairs.append((fields[0], fields[1]))
    return pairs


def write_truth(path: str, truth: Sequence[tuple[str, str]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for query, key in truth:
            fh.write(f"{query}\t{key}\n")


def write_decisions(path: str, decisions: Sequence[MatchDecision], keys: KeySet) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if decisions:
            fh.write(f"#method {decisions[0].method}\n")
        for d in decisions:
            fh.write(f"{d.query}\t{keys.strings[d.key_id]}\t{d.score:.6f}\n")


def read_decisions(path: str, keys: KeySet) -> list[MatchDecision]:
    decisions = []
    method = "unknown"
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh.read().splitlines(), 1):
            if raw.startswith("#method "):
                method = raw[len("#method ") :].strip()
                continue
            if not raw or raw.startswith("#"):
                continue
            fields = raw.split("\t")
            if len(fields) != 3:
                raise DataError(f"{path}:{lineno}: expected query/key/score fields")
            query, key, score_text = fields
            kid = keys.index.get(nfc(key))
            if kid is None:
                raise DataError(f"{path}:{lineno}: matched key {key!r} not in key set")
            try:
                score = float(score_text)
            except ValueError:
                raise DataError(f"{path}:{lineno}: bad score {score_text!r}") from None
            decisions.append(MatchDecision(query=nfc(query), key_id=kid, score=score, method=method))
    return decisions


def format_report(report: LinkageReport) -> str:
    return (
        "method\ttotal\tcorrect\taccuracy\n"
        f"{report.method}\t{report.total}\t{report.correct}\t{report.accuracy:.6f}\n"
    )
