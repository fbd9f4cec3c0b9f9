"""Training loop: AdamW, cosine annealing with warm restarts, best-checkpoint
selection by top-1 retrieval against the reference renders.

Runs are reproducible per seed up to the floating-point nondeterminism of
the ML backend; outputs are not asserted bit-exact anywhere.
"""

from __future__ import annotations

import copy
import random
from dataclasses import dataclass
from typing import Sequence

import torch

from .batching import epoch_batches
from .config import TrainerConfig
from .data import GlyphClass
from .encoder import ToyEncoder, embed_images
from .errors import DataError
from .loss import supcon_loss


def validate_top1(
    encoder: torch.nn.Module,
    val_items: Sequence[tuple[str, torch.Tensor]],
    references: dict[str, torch.Tensor],
) -> float:
    """Fraction of views whose nearest reference embedding has their class."""
    if not val_items:
        raise DataError("validation set is empty")
    missing = {char for char, _ in val_items} - set(references)
    if missing:
        raise DataError(f"reference renders missing for classes {sorted(missing)!r}")
    chars = sorted(references)
    ref_vecs = embed_images(encoder, [references[c] for c in chars])
    val_vecs = embed_images(encoder, [img for _, img in val_items])
    nearest = (val_vecs @ ref_vecs.t()).argmax(dim=1)
    correct = sum(
        1 for (char, _), j in zip(val_items, nearest.tolist()) if chars[j] == char
    )
    return correct / len(val_items)


@dataclass
class TrainResult:
    encoder: torch.nn.Module
    best_top1: float
    history: list[float]


def train(
    classes: list[GlyphClass],
    references: dict[str, torch.Tensor],
    val_items: Sequence[tuple[str, torch.Tensor]],
    cfg: TrainerConfig,
    hard_sets: Sequence[Sequence[str]] | None = None,
    encoder: torch.nn.Module | None = None,
) -> TrainResult:
    """Train an encoder; keep the epoch checkpoint with the best top-1."""
    if not classes:
        raise DataError("no classes to train on")
    torch.manual_seed(cfg.seed)
    if encoder is None:
        encoder = ToyEncoder()
    optimizer = torch.optim.AdamW(
        encoder.parameters(), lr=cfg.lr, weight_decay=cfg.weight_decay
    )
    scheduler = torch.optim.lr_scheduler.CosineAnnealingWarmRestarts(
        optimizer, T_0=cfg.t0, T_mult=cfg.t_mult
    )
    by_char = {cls.char: cls for cls in classes}
    label_of = {cls.char: i for i, cls in enumerate(classes)}
    best_state = copy.deepcopy(encoder.state_dict())
    best_top1 = validate_top1(encoder, val_items, references)
    history = [best_top1]
    for epoch in range(cfg.epochs):
        rng = random.Random(f"{cfg.seed}:epoch:{epoch}")
        batches = epoch_batches(
            classes, cfg.views_per_class, cfg.batch_size, rng, hard_sets=hard_sets
        )
        encoder.train()
        for i, batch in enumerate(batches):
            images = torch.stack([by_char[char].views[view] for char, view in batch])
            labels = torch.tensor([label_of[char] for char, _ in batch])
            loss = supcon_loss(encoder(images), labels, cfg.tau)
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            scheduler.step(epoch + i / len(batches))
        top1 = validate_top1(encoder, val_items, references)
        history.append(top1)
        if top1 > best_top1:
            best_top1 = top1
            best_state = copy.deepcopy(encoder.state_dict())
    encoder.load_state_dict(best_state)
    encoder.eval()
    return TrainResult(encoder=encoder, best_top1=best_top1, history=history)
