"""Character embedding tables: TSV load/save and cosine similarity.

File format (UTF-8):
    #dim <d>
    <char><TAB><f1> <f2> ... <fd>

The first line declares the vector dimension. Later lines starting with '#'
are comments. Each data row holds a single character followed by d floats.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .errors import DataError

# Vectors whose norm is already within this bound of 1 are stored as-is, so a
# save -> load -> save cycle is a byte-level fixed point.
_NORM_SKIP_TOL = 1e-9


def _canonical_vector(vec: np.ndarray, where: str) -> np.ndarray:
    if vec.ndim != 1:
        raise DataError(f"{where}: embedding must be a flat vector")
    if not np.all(np.isfinite(vec)):
        raise DataError(f"{where}: non-finite value in embedding")
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise DataError(f"{where}: zero vector cannot be normalized")
    if abs(norm - 1.0) > _NORM_SKIP_TOL:
        vec = vec / norm
    vec = vec.astype(np.float64, copy=False)
    vec.setflags(write=False)
    return vec


class EmbeddingTable:
    """Map from character to unit-norm float64 vector. Immutable after build."""

    def __init__(self, dim: int, entries: dict[str, np.ndarray] | None = None):
        if dim <= 0:
            raise DataError(f"embedding dimension must be positive, got {dim}")
        self.dim = dim
        self._entries: dict[str, np.ndarray] = {}
        if entries:
            for char, vec in entries.items():
                self.add(char, vec)

    def add(self, char: str, vec) -> None:
        if len(char) != 1:
            raise DataError(f"embedding key must be a single character, got {char!r}")
        if char in self._entries:
            raise DataError(f"duplicate character {char!r} in embedding table")
        arr = np.asarray(vec, dtype=np.float64)
        if arr.shape != (self.dim,):
            raise DataError(
                f"character {char!r}: vector has {arr.size} components, expected {self.dim}"
            )
        self._entries[char] = _canonical_vector(arr, f"character {char!r}")

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, char: str) -> bool:
        return char in self._entries

    def chars(self) -> list[str]:
        """All characters, sorted by codepoint."""
        return sorted(self._entries, key=ord)

    def vector(self, char: str) -> np.ndarray:
        try:
            return self._entries[char]
        except KeyError:
            raise DataError(f"character {char!r} not in embedding table") from None

    def cosine(self, a: str, b: str) -> float:
        """Cosine similarity of two stored characters, clamped to [-1, 1].

        Operands are taken in codepoint order so the floating-point expression
        is identical for (a, b) and (b, a).
        """
        lo, hi = (a, b) if ord(a) <= ord(b) else (b, a)
        sim = float(np.dot(self.vector(lo), self.vector(hi)))
        return min(1.0, max(-1.0, sim))


def load_table(text: str | Iterable[str]) -> EmbeddingTable:
    """Parse the TSV format; errors carry 1-based line numbers.

    Vectors are re-normalized to unit L2 norm unless already unit within 1e-9.
    """
    lines: Iterator[tuple[int, str]] = (
        (i, ln) for i, ln in enumerate(text.splitlines() if isinstance(text, str) else text, 1)
    )
    dim = None
    for lineno, raw in lines:
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if not line.startswith("#dim"):
            raise DataError(f"line {lineno}: expected '#dim <d>' header, got {line!r}")
        parts = line.split()
        if len(parts) != 2:
            raise DataError(f"line {lineno}: malformed header {line!r}")
        try:
            dim = int(parts[1])
        except ValueError:
            raise DataError(f"line {lineno}: bad dimension {parts[1]!r}") from None
        if dim <= 0:
            raise DataError(f"line {lineno}: dimension must be positive, got {dim}")
        break
    if dim is None:
        raise DataError("missing '#dim <d>' header")

    table = EmbeddingTable(dim)
    for lineno, raw in lines:
        line = raw.rstrip("\n")
        if not line:
            continue
        if line.startswith("#"):
            continue
        char, sep, rest = line.partition("\t")
        if not sep:
            raise DataError(f"line {lineno}: missing TAB separator")
        if len(char) != 1:
            raise DataError(f"line {lineno}: key {char!r} is not a single character")
        fields = rest.split()
        if len(fields) != dim:
            raise DataError(f"line {lineno}: {len(fields)} components, expected {dim}")
        try:
            vec = np.array([float(f) for f in fields], dtype=np.float64)
        except ValueError:
            raise DataError(f"line {lineno}: non-numeric component") from None
        try:
            table.add(char, vec)
        except DataError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
    return table


def save_table(table: EmbeddingTable) -> str:
    """Canonical text form: header, then rows sorted by codepoint.

    Floats use repr, which round-trips exactly, so load(save(t)) == t and
    save(load(save(t))) is byte-identical.
    """
    out = [f"#dim {table.dim}"]
    for char in table.chars():
        vec = table.vector(char)
        out.append(char + "\t" + " ".join(repr(float(x)) for x in vec))
    return "\n".join(out) + "\n"


def cosine(table: EmbeddingTable, a: str, b: str) -> float:
    return table.cosine(a, b)
