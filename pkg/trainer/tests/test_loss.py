import math

import pytest
import torch

from glyphtrain import ConfigError, DataError, supcon_loss

from oracles import ref_supcon


def unit_rows(n, d, seed):
    g = torch.Generator().manual_seed(seed)
    z = torch.randn(n, d, generator=g, dtype=torch.float64)
    return torch.nn.functional.normalize(z, dim=1)


def test_two_identical_same_class_is_zero():
    z = torch.tensor([[1.0, 0.0], [1.0, 0.0]], dtype=torch.float64)
    labels = torch.tensor([0, 0])
    # A(i) holds only the positive, so numerator equals denominator.
    assert float(supcon_loss(z, labels, tau=0.1)) == pytest.approx(0.0, abs=1e-12)


def test_three_element_hand_case():
    # e1 = e2 share a class, e3 is orthogonal: each valid anchor contributes
    # -log(e / (e + 1)) at tau=1.
    z = torch.tensor([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]], dtype=torch.float64)
    labels = torch.tensor([0, 0, 1])
    want = -math.log(math.e / (math.e + 1.0))
    got = float(supcon_loss(z, labels, tau=1.0))
    assert got == pytest.approx(want, abs=1e-12)
    assert got == pytest.approx(
        ref_supcon([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]], [0, 0, 1], 1.0), abs=1e-12
    )


@pytest.mark.parametrize("seed", [11, 12, 13])
def test_matches_scalar_oracle_on_small_batches(seed):
    z = unit_rows(4, 5, seed)
    labels = torch.tensor([0, 0, 1, 1])
    want = ref_supcon(z.tolist(), labels.tolist(), 0.1)
    assert float(supcon_loss(z, labels, tau=0.1)) == pytest.approx(want, abs=1e-6)


def test_uneven_classes_skip_singletons():
    z = unit_rows(4, 6, 21)
    # Class 2 appears once: its anchor is skipped, the others still count.
    labels = torch.tensor([0, 0, 0, 2])
    want = ref_supcon(z.tolist(), labels.tolist(), 0.2)
    assert float(supcon_loss(z, labels, tau=0.2)) == pytest.approx(want, abs=1e-6)


def test_permutation_invariance():
    z = unit_rows(8, 7, 31)
    labels = torch.tensor([0, 0, 1, 1, 2, 2, 3, 3])
    base = float(supcon_loss(z, labels, tau=0.1))
    perm = torch.randperm(8, generator=torch.Generator().manual_seed(5))
    permuted = float(supcon_loss(z[perm], labels[perm], tau=0.1))
    assert permuted == pytest.approx(base, abs=1e-5)


def test_rotation_invariance():
    z = unit_rows(6, 6, 41)
    labels = torch.tensor([0, 0, 1, 1, 2, 2])
    q, _ = torch.linalg.qr(
        torch.randn(6, 6, generator=torch.Generator().manual_seed(6), dtype=torch.float64)
    )
    base = float(supcon_loss(z, labels, tau=0.1))
    rotated = float(supcon_loss(z @ q, labels, tau=0.1))
    assert rotated == pytest.approx(base, abs=1e-5)


@pytest.mark.parametrize("seed", [51, 52])
def test_gradient_matches_finite_differences(seed):
    z = unit_rows(4, 5, seed).requires_grad_(True)
    labels = torch.tensor([0, 0, 1, 1])
    loss = supcon_loss(z, labels, tau=0.1)
    loss.backward()
    grad = z.grad.clone()
    h = 1e-4
    with torch.no_grad():
        for i in range(z.shape[0]):
            for j in range(z.shape[1]):
                bump = torch.zeros_like(z)
                bump[i, j] = h
                hi = float(supcon_loss(z + bump, labels, tau=0.1))
                lo = float(supcon_loss(z - bump, labels, tau=0.1))
                fd = (hi - lo) / (2 * h)
                got = float(grad[i, j])
                rel = abs(fd - got) / max(abs(fd), abs(got), 1e-8)
                assert rel <= 1e-3, (i, j, fd, got)


def test_batch_of_one_rejected():
    z = torch.tensor([[1.0, 0.0]])
    with pytest.raises(DataError, match="at least 2"):
        supcon_loss(z, torch.tensor([0]), tau=0.1)


def test_all_singleton_classes_rejected():
    z = unit_rows(3, 4, 61)
    with pytest.raises(DataError, match="no anchor"):
        supcon_loss(z, torch.tensor([0, 1, 2]), tau=0.1)


def test_bad_tau_and_shapes_rejected():
    z = unit_rows(2, 4, 71)
    with pytest.raises(ConfigError, match="tau"):
        supcon_loss(z, torch.tensor([0, 0]), tau=0.0)
    with pytest.raises(DataError, match="labels shape"):
        supcon_loss(z, torch.tensor([0, 0, 1]), tau=0.1)
    with pytest.raises(DataError, match="2-D"):
        supcon_loss(z.unsqueeze(0), torch.tensor([0, 0]), tau=0.1)
