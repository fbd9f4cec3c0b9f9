"""A small convolutional encoder producing unit-norm embeddings.

Three conv blocks and a linear head are plenty for toy glyph classes; the
training loop accepts any module with the same contract (images in,
unit-norm embeddings out).
"""

from __future__ import annotations

import torch
from torch import nn


class ToyEncoder(nn.Module):
    def __init__(self, out_dim: int = 64):
        super().__init__()
        self.features = nn.Sequential(
            nn.Conv2d(1, 16, 3, padding=1),
            nn.ReLU(),
            nn.MaxPool2d(2),
            nn.Conv2d(16, 32, 3, padding=1),
            nn.ReLU(),
            nn.MaxPool2d(2),
            nn.Conv2d(32, 64, 3, padding=1),
            nn.ReLU(),
            nn.AdaptiveAvgPool2d(2),
        )
        self.head = nn.Linear(64 * 4, out_dim)

    def forward(self, images: torch.Tensor) -> torch.Tensor:
        feats = self.features(images)
        emb = self.head(feats.flatten(1))
        return nn.functional.normalize(emb, dim=1)


def embed_images(
    encoder: nn.Module, images: list[torch.Tensor], batch: int = 256
) -> torch.Tensor:
    """Stack embeddings for a list of (1, S, S) images, eval mode, no grad."""
    was_training = encoder.training
    encoder.eval()
    chunks = []
    with torch.no_grad():
        for start in range(0, len(images), batch):
            stacked = torch.stack(images[start : start + batch])
            chunks.append(encoder(stacked))
    if was_training:
        encoder.train()
    return torch.cat(chunks)
