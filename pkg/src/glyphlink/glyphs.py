"""Character bitmap handling: PGM decode, square normalization, pixel embeddings.

Glyph directories hold one binary PGM (P5) file per character, named
``U+XXXX.pgm`` with the uppercase hex codepoint. The directory itself is the
manifest; the character identity never lives inside the image file.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

import numpy as np

from .errors import BlankGlyphError, ConfigError, DataError

MAX_SIDE = 4096
DEFAULT_SIDE = 64
WHITE = 255

_FILENAME_RE = re.compile(r"^U\+([0-9A-F]{4,6})\.pgm$")


@dataclass(frozen=True)
class GlyphBitmap:
    """One grayscale character render, row-major, top-to-bottom."""

    char: str
    width: int
    height: int
    pixels: bytes

    def __post_init__(self):
        if len(self.char) != 1:
            raise DataError(f"glyph char must be a single scalar value, got {self.char!r}")
        if self.width <= 0 or self.height <= 0:
            raise DataError(f"glyph dimensions must be positive, got {self.width}x{self.height}")
        if self.width > MAX_SIDE or self.height > MAX_SIDE:
            raise DataError(
                f"glyph dimensions {self.width}x{self.height} exceed the {MAX_SIDE} pixel limit"
            )
        if len(self.pixels) != self.width * self.height:
            raise DataError(
                f"pixel payload has {len(self.pixels)} bytes, "
                f"expected {self.width * self.height} for {self.width}x{self.height}"
            )

    def as_array(self) -> np.ndarray:
        """Pixels as a (height, width) uint8 array."""
        return np.frombuffer(self.pixels, dtype=np.uint8).reshape(self.height, self.width)


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # PGM tokens are separated by whitespace; '#' starts a comment to end of line.
    n = len(data)
    while pos < n:
        c = data[pos]
        if c in b"#":
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
        elif c in b" \t\r\n\x0b\x0c":
            pos += 1
        else:
            break
    if pos >= n:
        raise DataError(f"PGM truncated in header at byte {pos}")
    start = pos
    while pos < n and data[pos] not in b" \t\r\n\x0b\x0c#":
        pos += 1
    return data[start:pos], pos


def load_pgm(data: bytes, char: str) -> GlyphBitmap:
    """Decode a binary PGM (magic P5, maxval <= 255) into a GlyphBitmap.

    The character identity is not stored in the file, so the caller supplies it
    (normally from the filename, see load_glyph_dir).
    """
    if len(data) < 2 or data[:2] != b"P5":
        magic = data[:2].decode("latin-1", "replace")
        raise DataError(f"unsupported magic {magic!r} at byte 0, expected P5")
    pos = 2
    fields = []
    for name in ("width", "height", "maxval"):
        tok, pos = _next_token(data, pos)
        try:
            value = int(tok)
        except ValueError:
            raise DataError(
                f"bad PGM {name} token {tok.decode('latin-1', 'replace')!r} at byte {pos - len(tok)}"
            ) from None
        fields.append(value)
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise DataError(f"bad PGM dimensions {width}x{height} at byte {pos}")
    if not 0 < maxval <= 255:
        raise DataError(f"unsupported PGM maxval {maxval} at byte {pos} (must be 1..255)")
    if pos >= len(data) or data[pos] not in b" \t\r\n\x0b\x0c":
        raise DataError(f"missing whitespace after PGM maxval at byte {pos}")
    pos += 1
    expected = width * height
    payload = data[pos:]
    if len(payload) < expected:
        raise DataError(
            f"PGM payload truncated at byte {pos + len(payload)}: "
            f"got {len(payload)} pixel bytes, expected {expected}"
        )
    if len(payload) > expected:
        raise DataError(f"trailing junk after PGM payload at byte {pos + expected}")
    return GlyphBitmap(char=char, width=width, height=height, pixels=bytes(payload))


def save_pgm(bitmap: GlyphBitmap) -> bytes:
    """Encode a bitmap as binary PGM; load_pgm inverts this byte-exactly."""
    header = f"P5 {bitmap.width} {bitmap.height} 255\n".encode("ascii")
    return header + bitmap.pixels


def glyph_filename(char: str) -> str:
    return f"U+{ord(char):04X}.pgm"


def parse_glyph_filename(name: str) -> str:
    """Character named by a ``U+XXXX.pgm`` file, or DataError."""
    m = _FILENAME_RE.match(name)
    if not m:
        raise DataError(f"glyph filename {name!r} does not match U+XXXX.pgm")
    cp = int(m.group(1), 16)
    if cp > 0x10FFFF or 0xD800 <= cp <= 0xDFFF:
        raise DataError(f"glyph filename {name!r} names an invalid codepoint")
    return chr(cp)


def load_glyph_dir(path: str) -> list[GlyphBitmap]:
    """Load every U+XXXX.pgm in a directory, sorted by codepoint."""
    try:
        names = [n for n in os.listdir(path) if n.endswith(".pgm")]
    except OSError as exc:
        raise DataError(f"cannot read glyph directory {path}: {exc}") from None
    if not names:
        raise DataError(f"no .pgm files in glyph directory {path}")
    bitmaps = []
    for name in sorted(names):
        char = parse_glyph_filename(name)
        with open(os.path.join(path, name), "rb") as fh:
            data = fh.read()
        try:
            bitmaps.append(load_pgm(data, char))
        except DataError as exc:
            raise DataError(f"{name}: {exc}") from None
    bitmaps.sort(key=lambda b: ord(b.char))
    return bitmaps


def normalize(bitmap: GlyphBitmap, side: int) -> GlyphBitmap:
    """Scale to fit a side x side square, centered, white-padded.

    Aspect ratio is preserved; resampling is nearest-neighbor with integer-only
    index arithmetic, so results are identical across platforms. Applying
    normalize to an already side x side image is the identity.
    """
    if side <= 0:
        raise ConfigError(f"target side must be positive, got {side}")
    w, h = bitmap.width, bitmap.height
    longest = max(w, h)
    tw = max(1, (w * side) // longest)
    th = max(1, (h * side) // longest)
    src = bitmap.as_array()
    # Nearest neighbor at pixel centers: src index = floor((2x+1)*w / (2*tw)).
    xs = ((2 * np.arange(tw, dtype=np.int64) + 1) * w) // (2 * tw)
    ys = ((2 * np.arange(th, dtype=np.int64) + 1) * h) // (2 * th)
    scaled = src[np.ix_(ys, xs)]
    canvas = np.full((side, side), WHITE, dtype=np.uint8)
    ox = (side - tw) // 2
    oy = (side - th) // 2
    canvas[oy : oy + th, ox : ox + tw] = scaled
    return GlyphBitmap(char=bitmap.char, width=side, height=side, pixels=canvas.tobytes())


def raster_embed(bitmap: GlyphBitmap, side: int = DEFAULT_SIDE) -> np.ndarray:
    """Unit-norm pixel-vector embedding of dimension side**2.

    The bitmap is first normalized to side x side, then intensities map to ink
    weight (black pixel -> 1.0, white -> 0.0) so the white padding contributes
    nothing to cosine similarity. An all-white glyph has no direction and
    raises BlankGlyphError instead of returning a zero vector.
    """
    squared = normalize(bitmap, side)
    ink = (WHITE - squared.as_array().astype(np.float64)).ravel() / WHITE
    norm = float(np.linalg.norm(ink))
    if norm == 0.0:
        raise BlankGlyphError(f"blank glyph {bitmap.char!r}: no ink after normalization")
    return ink / norm
