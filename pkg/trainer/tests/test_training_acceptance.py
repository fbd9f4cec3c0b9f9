"""Trainer acceptance: one test per shipping criterion, one PASS line each.

Run with `pytest trainer/tests/test_training_acceptance.py -v -s`. The toy
training fixture is shared, so the whole module stays well inside the
five-minute criterion budget.
"""

import subprocess
import sys
import time

import pytest
import torch

from glyphtrain import (
    TrainerConfig,
    export_embeddings,
    mine_hard_negatives,
    split_views,
    supcon_loss,
    toy_references,
    train,
    views_from_references,
)
from glyphtrain.encoder import embed_images

from oracles import ref_supcon

N_CLASSES = 50
SEED = 1
CFG = dict(lr=1e-3, epochs=25, seed=SEED)  # toy-scale lr; other defaults stand


@pytest.fixture(scope="module")
def toy_run():
    started = time.perf_counter()
    refs = toy_references(N_CLASSES, 32, seed=SEED)
    classes = views_from_references(refs, 16, seed=SEED)
    train_classes, val_items, _ = split_views(classes, seed=SEED)
    cfg = TrainerConfig(**CFG)
    base = train(train_classes, refs, val_items, cfg)
    sets = mine_hard_negatives(base.encoder, refs, k=5)
    mined = train(train_classes, refs, val_items, cfg, hard_sets=sets)
    elapsed = time.perf_counter() - started
    return refs, classes, base, mined, elapsed


def test_supcon_oracle_and_gradient():
    g = torch.Generator().manual_seed(77)
    worst_loss, worst_grad = 0.0, 0.0
    for labels in ([0, 0, 1, 1], [0, 0, 0, 1], [0, 0, 1, 2]):
        z = torch.nn.functional.normalize(
            torch.randn(len(labels), 6, generator=g, dtype=torch.float64), dim=1
        ).requires_grad_(True)
        lab = torch.tensor(labels)
        loss = supcon_loss(z, lab, tau=0.1)
        want = ref_supcon(z.detach().tolist(), labels, 0.1)
        got = loss.item()
        worst_loss = max(worst_loss, abs(got - want))
        assert abs(got - want) <= 1e-6
        loss.backward()
        h = 1e-4
        with torch.no_grad():
            for i in range(z.shape[0]):
                for j in range(z.shape[1]):
                    bump = torch.zeros_like(z)
                    bump[i, j] = h
                    fd = (
                        float(supcon_loss(z + bump, lab, tau=0.1))
                        - float(supcon_loss(z - bump, lab, tau=0.1))
                    ) / (2 * h)
                    got = float(z.grad[i, j])
                    rel = abs(fd - got) / max(abs(fd), abs(got), 1e-8)
                    worst_grad = max(worst_grad, rel)
                    assert rel <= 1e-3, (labels, i, j)
    print(
        f"\n[supcon-oracle] PASS loss gap {worst_loss:.2e} (tol 1e-6), "
        f"gradient rel err {worst_grad:.2e} (tol 1e-3)"
    )


def test_toy_retrieval_budget_and_accuracy(toy_run):
    _, _, base, mined, elapsed = toy_run
    assert elapsed < 300.0
    assert base.best_top1 >= 0.80
    assert mined.best_top1 >= 0.95 or mined.best_top1 >= base.best_top1 - 0.02
    print(
        f"\n[toy-retrieval] PASS top-1 {base.best_top1:.4f} (>= 0.80), "
        f"mined {mined.best_top1:.4f} (>= 0.95 or within 2pp), "
        f"both runs in {elapsed:.0f}s (budget 300s)"
    )


def test_export_round_trip_through_matcher(toy_run, tmp_path):
    refs, classes, base, _, _ = toy_run
    encoder = base.encoder

    ref_tsv = tmp_path / "refs.tsv"
    ref_tsv.write_text(export_embeddings(encoder, refs), encoding="utf-8", newline="")
    table_tsv = tmp_path / "table.tsv"
    build = subprocess.run(
        [sys.executable, "-m", "glyphlink.cli", "build-table",
         "--embeddings", str(ref_tsv), "--out", str(table_tsv), "--k", "5"],
        capture_output=True, text=True,
    )
    assert build.returncode == 0, build.stderr

    # Combined table: reference chars plus every augmented view under a
    # private-use pseudo-character; the matcher's own ranking then decides
    # which reference each view lands next to.
    view_items = [
        (cls.char, view) for cls in classes for view in cls.views
    ]
    view_vecs = embed_images(encoder, [img for _, img in view_items]).to(torch.float64)
    view_vecs = view_vecs / torch.linalg.vector_norm(view_vecs, dim=1, keepdim=True)
    combined = tmp_path / "combined.tsv"
    lines = export_embeddings(encoder, refs).splitlines()
    for i, (_, _) in enumerate(view_items):
        vec = view_vecs[i]
        lines.append(chr(0xE000 + i) + "\t" + "\t".join(repr(float(v)) for v in vec))
    combined.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="")
    combined_table = tmp_path / "combined_table.tsv"
    build = subprocess.run(
        [sys.executable, "-m", "glyphlink.cli", "build-table",
         "--embeddings", str(combined), "--out", str(combined_table),
         "--k", str(len(lines) - 1)],
        capture_output=True, text=True,
    )
    assert build.returncode == 0, build.stderr

    neighbors: dict[str, list[str]] = {}
    for line in combined_table.read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            continue
        char, nbr, _ = line.split("\t")
        neighbors.setdefault(char, []).append(nbr)
    ref_chars = set(refs)
    hits = 0
    for i, (char, _) in enumerate(view_items):
        ranked = neighbors[chr(0xE000 + i)]
        first_ref = next(n for n in ranked if n in ref_chars)
        hits += first_ref == char
    rate = hits / len(view_items)
    assert rate >= 0.90
    print(
        f"\n[export-round-trip] PASS TSV loads in the matcher; "
        f"{rate:.3f} of {len(view_items)} views land on their own reference (>= 0.90)"
    )
