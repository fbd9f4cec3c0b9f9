"""Supervised contrastive loss over a multiview batch.

For anchor i with positives P(i) (same class, different index) and
candidates A(i) (everything except i), the loss is the mean over anchors of

    -(1/|P(i)|) * sum_{p in P(i)} log( exp(z_i.z_p / tau)
                                       / sum_{a in A(i)} exp(z_i.z_a / tau) )

Anchors whose class has only one view in the batch have no positive and
are skipped. Embeddings are expected unit-norm; the function itself takes
them as given, so gradients check cleanly against finite differences.
"""

from __future__ import annotations

import torch

from .errors import ConfigError, DataError


def supcon_loss(z: torch.Tensor, labels: torch.Tensor, tau: float = 0.1) -> torch.Tensor:
    if tau <= 0:
        raise ConfigError(f"tau must be positive, got {tau}")
    if z.dim() != 2:
        raise DataError(f"embeddings must be 2-D (batch, dim), got shape {tuple(z.shape)}")
    n = z.shape[0]
    if n < 2:
        raise DataError(f"batch must hold at least 2 embeddings, got {n}")
    if labels.shape != (n,):
        raise DataError(
            f"labels shape {tuple(labels.shape)} does not match batch size {n}"
        )
    logits = (z @ z.t()) / tau
    eye = torch.eye(n, dtype=torch.bool, device=z.device)
    # log of the A(i) denominator: everything except the anchor itself.
    denom = torch.logsumexp(logits.masked_fill(eye, float("-inf")), dim=1)
    log_prob = logits - denom.unsqueeze(1)
    positives = (labels.unsqueeze(0) == labels.unsqueeze(1)) & ~eye
    pos_counts = positives.sum(dim=1)
    valid = pos_counts > 0
    if not bool(valid.any()):
        raise DataError("no anchor has a positive; every class in the batch is singular")
    per_anchor = -(log_prob * positives).sum(dim=1)[valid] / pos_counts[valid]
    return per_anchor.mean()
