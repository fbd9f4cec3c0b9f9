"""Homoglyph lookup tables: exact k-nearest-neighbor search over embeddings.

Table file format (UTF-8):
    #k <k>
    <char><TAB><neighbor><TAB><sim>

Rows are grouped by character with similarity descending inside each group;
similarities are written with 6 decimal places.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .embeddings import EmbeddingTable
from .errors import DataError

DEFAULT_K = 800
_BLOCK = 256


class HomoglyphTable:
    """Per-character ordered neighbor lists with cosine similarities."""

    def __init__(self, k: int, entries: dict[str, list[tuple[str, float]]] | None = None):
        if k < 1:
            raise DataError(f"k must be >= 1, got {k}")
        self.k = k
        self._entries: dict[str, list[tuple[str, float]]] = {}
        self._by_neighbor: dict[str, dict[str, float]] = {}
        for char, nbrs in (entries or {}).items():
            self.add(char, nbrs)

    def add(self, char: str, nbrs: Iterable[tuple[str, float]]) -> None:
        nbrs = list(nbrs)
        if char in self._entries:
            raise DataError(f"duplicate neighbor group for {char!r}")
        if len(nbrs) > self.k:
            raise DataError(f"{char!r}: {len(nbrs)} neighbors exceed k={self.k}")
        seen: dict[str, float] = {}
        prev = None
        for nbr, sim in nbrs:
            if not -1.0 <= sim <= 1.0:
                raise DataError(f"{char!r}: similarity {sim} outside [-1, 1]")
            if nbr in seen:
                raise DataError(f"{char!r}: duplicate neighbor {nbr!r}")
            if prev is not None and sim > prev:
                raise DataError(f"{char!r}: neighbors not sorted by descending similarity")
            seen[nbr] = sim
            prev = sim
        self._entries[char] = nbrs
        self._by_neighbor[char] = seen

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, char: str) -> bool:
        return char in self._entries

    def chars(self) -> list[str]:
        return sorted(self._entries, key=ord)

    def neighbors(self, char: str) -> list[tuple[str, float]]:
        """Ordered (neighbor, sim) list; empty for unknown characters."""
        return list(self._entries.get(char, ()))

    def lookup_sim(self, a: str, b: str, clamp_negative: bool = True) -> float:
        """Similarity used by the substitution cost. Defined for every pair.

        a == b gives 1.0. Otherwise the stored similarity from a's list, with
        b's list as a fallback, or 0.0 when the pair was never tabulated.
        Symmetric whenever the two stored directions agree, which tables built
        from embeddings guarantee. Negative cosines are floored at 0 unless
        clamp_negative is False, which restores the raw stored value.
        """
        if a == b:
            return 1.0
        sim = self._by_neighbor.get(a, {}).get(b)
        if sim is None:
            sim = self._by_neighbor.get(b, {}).get(a)
        if sim is None:
            return 0.0
        return max(sim, 0.0) if clamp_negative else sim


def empty_table() -> HomoglyphTable:
    """Table with no neighbor data: every distinct pair gets similarity 0."""
    return HomoglyphTable(k=1)


def build_table(table: EmbeddingTable, k: int = DEFAULT_K) -> HomoglyphTable:
    """Exact brute-force top-k by cosine similarity, self included.

    k is capped at the table size. Neighbor lists are sorted by similarity
    descending with ties broken by ascending codepoint. Similarities are
    accumulated coordinate by coordinate in a fixed order, so repeated runs
    (and any scan that adds products in index order) reproduce them bit for
    bit.
    """
    if k < 1:
        raise DataError(f"k must be >= 1, got {k}")
    chars = table.chars()
    n = len(chars)
    if n == 0:
        raise DataError("cannot build homoglyph table from an empty embedding table")
    k_eff = min(k, n)
    mat = np.stack([table.vector(c) for c in chars])  # codepoint order
    dim = mat.shape[1]
    result = HomoglyphTable(k=k)
    for start in range(0, n, _BLOCK):
        block = mat[start : start + _BLOCK]
        sims = np.zeros((block.shape[0], n), dtype=np.float64)
        for col in range(dim):
            sims += block[:, col : col + 1] * mat[:, col]
        np.clip(sims, -1.0, 1.0, out=sims)
        for row in range(block.shape[0]):
            order = np.argsort(-sims[row], kind="stable")[:k_eff]
            result.add(chars[start + row], [(chars[j], float(sims[row, j])) for j in order])
    return result


def save_homoglyphs(table: HomoglyphTable) -> str:
    out = [f"#k {table.k}"]
    for char in table.chars():
        for nbr, sim in table.neighbors(char):
            out.append(f"{char}\t{nbr}\t{sim:.6f}")
    return "\n".join(out) + "\n"


def load_homoglyphs(text: str | Iterable[str]) -> HomoglyphTable:
    """Parse and validate a homoglyph TSV; errors carry 1-based line numbers."""
    lines: Iterator[tuple[int, str]] = (
        (i, ln) for i, ln in enumerate(text.splitlines() if isinstance(text, str) else text, 1)
    )
    k = None
    for lineno, raw in lines:
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] != "#k":
            raise DataError(f"line {lineno}: expected '#k <k>' header, got {line!r}")
        try:
            k = int(parts[1])
        except ValueError:
            raise DataError(f"line {lineno}: bad k {parts[1]!r}") from None
        break
    if k is None:
        raise DataError("missing '#k <k>' header")

    table = HomoglyphTable(k=k)
    current: str | None = None
    group: list[tuple[str, float]] = []
    closed: set[str] = set()

    def flush(lineno: int) -> None:
        nonlocal current, group
        if current is None:
            return
        try:
            table.add(current, group)
        except DataError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
        closed.add(current)
        current, group = None, []

    last_lineno = 0
    for lineno, raw in lines:
        last_lineno = lineno
        line = raw.rstrip("\n")
        if not line:
            continue
        if line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise DataError(f"line {lineno}: expected 3 tab-separated fields")
        char, nbr, sim_text = fields
        if len(char) != 1 or len(nbr) != 1:
            raise DataError(f"line {lineno}: keys must be single characters")
        try:
            sim = float(sim_text)
        except ValueError:
            raise DataError(f"line {lineno}: bad similarity {sim_text!r}") from None
        if char != current:
            flush(lineno)
            if char in closed:
                raise DataError(f"line {lineno}: rows for {char!r} are not grouped together")
            current = char
        group.append((nbr, sim))
    flush(last_lineno + 1)
    return table


def lookup_sim(table: HomoglyphTable, a: str, b: str, clamp_negative: bool = True) -> float:
    return table.lookup_sim(a, b, clamp_negative=clamp_negative)
