"""Synthetic segment glyphs with a known visual-confusability structure.

Sixty ASCII characters are rendered as bar-segment bitmaps on a 4x4 node
grid (24 possible segments). They form 12 families of 5: each family has a
base pattern of 6 segments, and the members are the base plus at most one
extra segment. Members of one family therefore look alike (cosine of their
pixel vectors roughly 0.85 and up) while bases of different families share
at most 2 segments, so cross-family cosine stays low.

Patterns are drawn by a fixed-seed greedy search at import, so the set is
identical on every platform. This gives tests and demos a glyph inventory
whose confusion structure is known in advance without shipping font data.
"""

from __future__ import annotations

import os

from .errors import ConfigError
from .glyphs import GlyphBitmap, glyph_filename, save_pgm

TOY_CHARSET = (
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "abcdefghijklmnopqrstuvwxyz"
    "01234567"
)

FAMILY_SIZE = 5
N_FAMILIES = 12

SIDE = 24
_NODES = (3, 9, 15, 21)  # pixel coordinate of grid line 0..3
_THICK = 1  # bars extend this many pixels each side of the center line

# 24 axis-aligned segments as (row1, col1, row2, col2) in grid units.
_SEGMENTS = tuple(
    [(r, c, r, c + 1) for r in range(4) for c in range(3)]
    + [(r, c, r + 1, c) for r in range(3) for c in range(4)]
)

_BASE_SEGMENTS = 6
_MAX_SHARED = 2  # any two family bases share at most this many segments


class _Mix64:
    # Same SplitMix64 update as the corpus generator; duplicated here so the
    # glyph module stays independent of it.
    def __init__(self, seed: int):
        self._state = seed & 0xFFFFFFFFFFFFFFFF

    def next_below(self, n: int) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        return ((z ^ (z >> 31)) * n) >> 64


def _draw_mask(rng: _Mix64, size: int, exclude: int = 0) -> int:
    mask = 0
    while bin(mask).count("1") < size:
        bit = 1 << rng.next_below(len(_SEGMENTS))
        if not bit & (mask | exclude):
            mask |= bit
    return mask


def _build_masks() -> list[int]:
    rng = _Mix64(0x746F79)
    bases: list[int] = []
    attempts = 0
    while len(bases) < N_FAMILIES:
        candidate = _draw_mask(rng, _BASE_SEGMENTS)
        attempts += 1
        if attempts > 100_000:
            raise AssertionError("family base search failed to converge")
        if all(bin(candidate & base).count("1") <= _MAX_SHARED for base in bases):
            bases.append(candidate)
    masks: list[int] = []
    for base in bases:
        masks.append(base)
        taken = base
        for _ in range(FAMILY_SIZE - 1):
            extra = _draw_mask(rng, 1, exclude=taken)
            taken |= extra
            masks.append(base | extra)
    return masks


_MASKS = _build_masks()


def segment_mask(char: str) -> int:
    """Bit i set means segment i of the 24-segment grid is inked."""
    idx = TOY_CHARSET.find(char)
    if idx < 0:
        raise ConfigError(f"character {char!r} is not in the toy charset")
    return _MASKS[idx]


def family_of(char: str) -> int:
    idx = TOY_CHARSET.find(char)
    if idx < 0:
        raise ConfigError(f"character {char!r} is not in the toy charset")
    return idx // FAMILY_SIZE


def toy_glyph(char: str) -> GlyphBitmap:
    """Render one toy character to a 24x24 grayscale bitmap (ink black)."""
    mask = segment_mask(char)
    grid = [[255] * SIDE for _ in range(SIDE)]
    for bit, (r1, c1, r2, c2) in enumerate(_SEGMENTS):
        if not mask & (1 << bit):
            continue
        x1, y1 = _NODES[c1], _NODES[r1]
        x2, y2 = _NODES[c2], _NODES[r2]
        for y in range(min(y1, y2) - _THICK, max(y1, y2) + _THICK + 1):
            for x in range(min(x1, x2) - _THICK, max(x1, x2) + _THICK + 1):
                grid[y][x] = 0
    pixels = bytes(value for row in grid for value in row)
    return GlyphBitmap(char=char, width=SIDE, height=SIDE, pixels=pixels)


def toy_glyphs() -> list[GlyphBitmap]:
    return [toy_glyph(char) for char in TOY_CHARSET]


def write_toy_glyph_dir(path) -> None:
    """Write each toy glyph to <path>/U+XXXX.pgm."""
    os.makedirs(path, exist_ok=True)
    for bitmap in toy_glyphs():
        target = os.path.join(str(path), glyph_filename(bitmap.char))
        with open(target, "wb") as fh:
            fh.write(save_pgm(bitmap))
