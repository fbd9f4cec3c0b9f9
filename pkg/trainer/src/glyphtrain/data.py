"""Toy glyph classes, view augmentation, and dataset splits.

A class is one character concept with a clean reference render and a list
of augmented views. The toy generator draws each class as a random stroke
pattern so that classes are visually distinct; views are produced by the
augmentation pipeline. Real glyph images can be supplied instead through a
directory of binary PGM files named U+XXXX.pgm (ink dark on light), the
same layout the embedding pipeline downstream consumes.

Images are float32 tensors of shape (1, side, side) with ink 1.0 on a 0.0
background.
"""

from __future__ import annotations

import os
import random
import re
from dataclasses import dataclass

import torch
import torchvision.transforms.functional as TF

from .errors import DataError

_PGM_NAME = re.compile(r"^U\+([0-9A-F]{4,6})\.pgm$")

# Ancient-profile erase patch: up to this fraction of the image area.
ERASE_MAX_FRACTION = 0.05
ROTATION_MAX_DEG = 10.0


@dataclass(frozen=True)
class GlyphClass:
    """One character class: id plus its view bitmaps."""

    char: str
    views: tuple[torch.Tensor, ...]

    def __post_init__(self):
        if len(self.char) != 1:
            raise DataError(f"class id {self.char!r} is not a single character")
        if not self.views:
            raise DataError(f"class {self.char!r} has no views")


def _draw_segment(img: torch.Tensor, r0, c0, r1, c1, thick: int) -> None:
    side = img.shape[-1]
    steps = 2 * side
    for i in range(steps + 1):
        t = i / steps
        r = r0 + (r1 - r0) * t
        c = c0 + (c1 - c0) * t
        lo_r = max(0, int(r) - thick + 1)
        lo_c = max(0, int(c) - thick + 1)
        img[0, lo_r : int(r) + thick, lo_c : int(c) + thick] = 1.0


def render_class(index: int, side: int, seed: int) -> torch.Tensor:
    """Deterministic stroke pattern for one toy class.

    All classes share a small stroke lattice, so many pairs overlap heavily
    and an untrained encoder confuses them; the structure is what training
    has to learn.
    """
    rng = random.Random(f"{seed}:class:{index}")
    img = torch.zeros(1, side, side)
    lattice = [round(side * f) for f in (0.2, 0.5, 0.8)]
    points = [(r, c) for r in lattice for c in lattice]
    for _ in range(5):
        (r0, c0), (r1, c1) = rng.sample(points, 2)
        _draw_segment(img, r0, c0, r1, c1, thick=1)
    return img


def augment(img: torch.Tensor, rng: random.Random, ancient: bool = False) -> torch.Tensor:
    """One randomized view: affine jitter, contrast, blur; more when ancient.

    The base menu keeps geometry gentle (slight translation and scaling
    only); the ancient profile adds rotation up to +-10 degrees plus
    solarize / posterize / equalize / invert / small erase, for data whose
    rendering varies far more.
    """
    side = img.shape[-1]
    angle = rng.uniform(-ROTATION_MAX_DEG, ROTATION_MAX_DEG) if ancient else 0.0
    out = TF.affine(
        img,
        angle=angle,
        translate=[round(rng.uniform(-0.1, 0.1) * side), round(rng.uniform(-0.1, 0.1) * side)],
        scale=rng.uniform(0.85, 1.15),
        shear=[0.0, 0.0],
    )
    if rng.random() < 0.5:
        out = TF.adjust_brightness(out, rng.uniform(0.8, 1.2))
    if rng.random() < 0.5:
        out = TF.adjust_contrast(out, rng.uniform(0.7, 1.3))
    if rng.random() < 0.25:
        out = TF.autocontrast(out)
    if rng.random() < 0.25:
        out = TF.gaussian_blur(out, kernel_size=3, sigma=rng.uniform(0.3, 0.8))
    # Random grayscale would be a no-op on single-channel input, so the
    # menu omits it.
    if ancient:
        if rng.random() < 0.15:
            out = _on_uint8(out, TF.equalize)
        if rng.random() < 0.15:
            bits = rng.randint(3, 6)
            out = _on_uint8(out, lambda u: TF.posterize(u, bits))
        if rng.random() < 0.15:
            out = TF.solarize(out, threshold=rng.uniform(0.5, 0.9))
        if rng.random() < 0.1:
            out = TF.invert(out)
        if rng.random() < 0.25:
            out = _erase(out, rng)
    return out.clamp(0.0, 1.0)


def _on_uint8(img: torch.Tensor, fn) -> torch.Tensor:
    u = (img.clamp(0, 1) * 255).to(torch.uint8)
    return fn(u).to(torch.float32) / 255.0


def _erase(img: torch.Tensor, rng: random.Random) -> torch.Tensor:
    side = img.shape[-1]
    area = rng.uniform(0.0, ERASE_MAX_FRACTION) * side * side
    h = max(1, min(side, round(area**0.5)))
    w = max(1, min(side, round(area / h)))
    top = rng.randrange(side - h + 1)
    left = rng.randrange(side - w + 1)
    return TF.erase(img, top, left, h, w, v=torch.zeros(1, 1, 1))


def toy_references(n_classes: int, side: int, seed: int) -> dict[str, torch.Tensor]:
    """Clean reference render per class, keyed by the class character."""
    if n_classes < 1:
        raise DataError(f"need at least one class, got {n_classes}")
    return {
        chr(0x4E00 + i): render_class(i, side, seed) for i in range(n_classes)
    }


def toy_dataset(
    n_classes: int,
    n_views: int,
    side: int,
    seed: int,
    ancient: bool = False,
) -> list[GlyphClass]:
    """n_views augmented views of every toy class, deterministic per seed."""
    if n_views < 1:
        raise DataError(f"need at least one view per class, got {n_views}")
    classes = []
    for i, (char, clean) in enumerate(sorted(toy_references(n_classes, side, seed).items())):
        rng = random.Random(f"{seed}:views:{i}")
        views = tuple(augment(clean, rng, ancient=ancient) for _ in range(n_views))
        classes.append(GlyphClass(char=char, views=views))
    return classes


def load_glyph_dir(path: str, side: int) -> dict[str, torch.Tensor]:
    """Read reference renders from a directory of U+XXXX.pgm files.

    Binary PGM, maxval 255, ink dark on light; pixels invert to ink mass
    and the image is scaled to side x side.
    """
    names = sorted(n for n in os.listdir(path) if n.endswith(".pgm"))
    if not names:
        raise DataError(f"no .pgm files in glyph directory {path}")
    out: dict[str, torch.Tensor] = {}
    for name in names:
        m = _PGM_NAME.match(name)
        if not m:
            raise DataError(f"glyph filename {name!r} does not match U+XXXX.pgm")
        char = chr(int(m.group(1), 16))
        with open(os.path.join(path, name), "rb") as fh:
            out[char] = _parse_pgm(fh.read(), name, side)
    return out


def _parse_pgm(data: bytes, name: str, side: int) -> torch.Tensor:
    fields: list[bytes] = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos])
    if fields[0] != b"P5":
        raise DataError(f"{name}: not a binary PGM")
    width, height, maxval = (int(f) for f in fields[1:])
    if maxval != 255:
        raise DataError(f"{name}: expected maxval 255, got {maxval}")
    pixels = data[pos + 1 :]
    if len(pixels) != width * height:
        raise DataError(f"{name}: expected {width * height} pixel bytes, got {len(pixels)}")
    img = torch.frombuffer(bytearray(pixels), dtype=torch.uint8).reshape(1, height, width)
    ink = (255 - img.to(torch.float32)) / 255.0
    if (height, width) != (side, side):
        ink = TF.resize(ink, [side, side], antialias=True)
    return ink.clamp(0.0, 1.0)


def views_from_references(
    references: dict[str, torch.Tensor],
    n_views: int,
    seed: int,
    ancient: bool = False,
) -> list[GlyphClass]:
    """Augmented training views for externally supplied reference renders."""
    if n_views < 1:
        raise DataError(f"need at least one view per class, got {n_views}")
    classes = []
    for i, (char, clean) in enumerate(sorted(references.items())):
        rng = random.Random(f"{seed}:views:{i}")
        views = tuple(augment(clean, rng, ancient=ancient) for _ in range(n_views))
        classes.append(GlyphClass(char=char, views=views))
    return classes


def split_views(
    classes: list[GlyphClass], seed: int, ancient: bool = False
) -> tuple[list[GlyphClass], list[tuple[str, torch.Tensor]], list[tuple[str, torch.Tensor]]]:
    """Partition every class's views into train/val/test.

    Default split is 80-10-10 per class (at least one view in each part).
    The ancient profile splits 90-10 into train/val, then transfers a
    random half of the validation views back into training, and carves the
    test part from training so numbers stay comparable.
    """
    train_classes: list[GlyphClass] = []
    val: list[tuple[str, torch.Tensor]] = []
    test: list[tuple[str, torch.Tensor]] = []
    for idx, cls in enumerate(classes):
        n = len(cls.views)
        if n < 3:
            raise DataError(f"class {cls.char!r} needs >= 3 views to split, has {n}")
        rng = random.Random(f"{seed}:split:{idx}")
        order = list(range(n))
        rng.shuffle(order)
        if ancient:
            n_val = max(1, round(0.1 * n))
            val_ids = order[:n_val]
            keep = max(1, len(val_ids) - len(val_ids) // 2)
            back = val_ids[keep:]
            val_ids = val_ids[:keep]
            train_ids = order[n_val:] + back
            test_ids = [train_ids.pop()]
        else:
            n_val = max(1, round(0.1 * n))
            n_test = max(1, round(0.1 * n))
            val_ids = order[:n_val]
            test_ids = order[n_val : n_val + n_test]
            train_ids = order[n_val + n_test :]
        if not train_ids:
            raise DataError(f"class {cls.char!r}: no views left for training")
        train_classes.append(
            GlyphClass(char=cls.char, views=tuple(cls.views[i] for i in train_ids))
        )
        val.extend((cls.char, cls.views[i]) for i in val_ids)
        test.extend((cls.char, cls.views[i]) for i in test_ids)
    return train_classes, val, test
