"""Epoch batching and hard-negative set construction.

An epoch without mining covers every class exactly once: classes are
shuffled and grouped batch_size / m at a time, and each appearance
contributes m of the class's views, drawn without replacement. With mining
the epoch additionally covers every hard-negative set once; each set
becomes its own batch of k classes x m views, and set batches are randomly
interspersed among the regular ones.
"""

from __future__ import annotations

import random
from typing import Sequence

import torch

from .data import GlyphClass
from .errors import DataError

# One batch is a list of (class char, view index) slots.
Batch = list[tuple[str, int]]


def epoch_batches(
    classes: Sequence[GlyphClass],
    views_per_class: int,
    batch_size: int,
    rng: random.Random,
    hard_sets: Sequence[Sequence[str]] | None = None,
) -> list[Batch]:
    m = views_per_class
    if batch_size % m != 0:
        raise DataError(f"batch_size {batch_size} not divisible by views_per_class {m}")
    per_batch = batch_size // m
    if per_batch > len(classes):
        raise DataError(
            f"batch needs {per_batch} classes but only {len(classes)} exist"
        )
    by_char = {cls.char: cls for cls in classes}
    for cls in classes:
        if len(cls.views) < m:
            raise DataError(
                f"class {cls.char!r} has {len(cls.views)} views, needs >= {m}"
            )

    def draw(cls: GlyphClass) -> list[tuple[str, int]]:
        return [(cls.char, i) for i in rng.sample(range(len(cls.views)), m)]

    order = list(classes)
    rng.shuffle(order)
    batches: list[Batch] = []
    for start in range(0, len(order), per_batch):
        batch: Batch = []
        for cls in order[start : start + per_batch]:
            batch.extend(draw(cls))
        batches.append(batch)

    if hard_sets is not None:
        for group in hard_sets:
            batch = []
            for char in group:
                if char not in by_char:
                    raise DataError(f"hard-negative set names unknown class {char!r}")
                batch.extend(draw(by_char[char]))
            batches.append(batch)
        rng.shuffle(batches)
    return batches


def nearest_classes(embeddings: dict[str, torch.Tensor], k: int) -> dict[str, tuple[str, ...]]:
    """k nearest classes per class by cosine, the class itself included.

    Ties break toward the lower codepoint so results are order-stable.
    """
    chars = sorted(embeddings)
    if k > len(chars):
        raise DataError(f"k={k} exceeds the {len(chars)} available classes")
    mat = torch.stack([_unit(embeddings[c]) for c in chars]).to(torch.float64)
    sims = mat @ mat.t()
    out: dict[str, tuple[str, ...]] = {}
    for i, char in enumerate(chars):
        ranked = sorted(range(len(chars)), key=lambda j: (-float(sims[i, j]), j))
        out[char] = tuple(chars[j] for j in ranked[:k])
    return out


def mine_hard_negatives(
    encoder: torch.nn.Module,
    references: dict[str, torch.Tensor],
    k: int,
    per_crop_views: Sequence[tuple[str, torch.Tensor]] | None = None,
) -> list[tuple[str, ...]]:
    """Hard-negative class sets from a trained checkpoint.

    Default mode embeds every reference render and takes each class's k
    nearest classes. Per-crop mode (used for data whose views vary wildly)
    instead mines one set per supplied view, anchored at that view's
    embedding; candidates are still the reference renders.
    """
    from .encoder import embed_images

    chars = sorted(references)
    if k > len(chars):
        raise DataError(f"k={k} exceeds the {len(chars)} available classes")
    ref_vecs = embed_images(encoder, [references[c] for c in chars]).to(torch.float64)
    if per_crop_views is None:
        by_char = dict(zip(chars, ref_vecs))
        ranked = nearest_classes(by_char, k)
        return [ranked[c] for c in chars]
    if not per_crop_views:
        raise DataError("per-crop mining needs at least one view")
    out: list[tuple[str, ...]] = []
    view_vecs = embed_images(encoder, [img for _, img in per_crop_views]).to(torch.float64)
    sims = view_vecs @ ref_vecs.t()
    for row in range(sims.shape[0]):
        order = sorted(range(len(chars)), key=lambda j: (-float(sims[row, j]), j))
        out.append(tuple(chars[j] for j in order[:k]))
    return out


def _unit(vec: torch.Tensor) -> torch.Tensor:
    flat = vec.flatten().to(torch.float64)
    norm = torch.linalg.vector_norm(flat)
    if float(norm) == 0.0:
        raise DataError("cannot rank a zero embedding")
    return flat / norm
