"""Embedding TSV export in the format the matching pipeline reads.

Layout: a `#dim <d>` header, then one `char<TAB>v1<TAB>...<TAB>vd` row per
character in codepoint order, components unit-normalized and written with
repr so they round-trip exactly. Deterministic: the encoder runs in eval
mode under no_grad.
"""

from __future__ import annotations

import torch

from .encoder import embed_images
from .errors import DataError


def export_embeddings(
    encoder: torch.nn.Module, references: dict[str, torch.Tensor]
) -> str:
    if not references:
        raise DataError("nothing to export: no reference renders")
    chars = sorted(references)
    vecs = embed_images(encoder, [references[c] for c in chars]).to(torch.float64)
    norms = torch.linalg.vector_norm(vecs, dim=1, keepdim=True)
    if float(norms.min()) == 0.0:
        raise DataError("encoder produced a zero embedding")
    vecs = vecs / norms
    out = [f"#dim {vecs.shape[1]}"]
    for char, vec in zip(chars, vecs):
        out.append(char + "\t" + "\t".join(repr(float(v)) for v in vec))
    return "\n".join(out) + "\n"
