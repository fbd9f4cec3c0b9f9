import torch

import pytest

from glyphtrain import ToyEncoder, TrainerConfig, toy_dataset, toy_references, split_views, train, validate_top1
from glyphtrain.cli import main


def small_cfg(**kw):
    base = dict(batch_size=4, views_per_class=2, epochs=2, lr=1e-3, seed=0, side=16)
    base.update(kw)
    return TrainerConfig(**base)


def test_train_improves_or_keeps_initial_accuracy():
    refs = toy_references(6, 16, seed=0)
    classes = toy_dataset(6, 6, 16, seed=0)
    tr, val, _ = split_views(classes, seed=0)
    result = train(tr, refs, val, small_cfg(epochs=4))
    assert result.best_top1 >= result.history[0]
    assert len(result.history) == 5
    assert 0.0 <= result.best_top1 <= 1.0


def test_validate_top1_perfect_when_views_equal_references():
    refs = toy_references(5, 16, seed=1)
    encoder = ToyEncoder()
    items = [(char, img) for char, img in refs.items()]
    assert validate_top1(encoder, items, refs) == 1.0


def test_validate_top1_errors():
    refs = toy_references(3, 16, seed=2)
    encoder = ToyEncoder()
    with pytest.raises(Exception, match="empty"):
        validate_top1(encoder, [], refs)
    with pytest.raises(Exception, match="missing"):
        validate_top1(encoder, [("z", torch.zeros(1, 16, 16))], refs)


def test_cli_train_writes_checkpoint_and_tsv(tmp_path, capsys):
    ckpt = tmp_path / "enc.pt"
    tsv = tmp_path / "emb.tsv"
    code = main(
        [
            "train", "--classes", "6", "--views", "4", "--side", "16",
            "--epochs", "2", "--batch-size", "4", "--m", "2", "--lr", "1e-3",
            "--checkpoint", str(ckpt), "--export", str(tsv),
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "val top-1" in out and "test top-1" in out
    text = tsv.read_text(encoding="utf-8")
    assert text.startswith("#dim 64\n")
    assert len(text.splitlines()) == 7

    # Re-export from the checkpoint: byte-identical TSV.
    tsv2 = tmp_path / "emb2.tsv"
    assert main(["export", "--checkpoint", str(ckpt), "--out", str(tsv2)]) == 0
    assert tsv2.read_bytes() == tsv.read_bytes()


def test_cli_train_from_glyph_dir(tmp_path):
    for i, ink in enumerate((bytes([0] * 128 + [255] * 128), bytes([255] * 128 + [0] * 128))):
        (tmp_path / f"U+{0x41 + i:04X}.pgm").write_bytes(b"P5\n16 16\n255\n" + ink)
    tsv = tmp_path / "emb.tsv"
    code = main(
        [
            "train", "--glyphs", str(tmp_path), "--views", "4", "--side", "16",
            "--epochs", "1", "--batch-size", "4", "--m", "2", "--lr", "1e-3",
            "--export", str(tsv),
        ]
    )
    assert code == 0
    lines = tsv.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "#dim 64"
    assert sorted(line.split("\t")[0] for line in lines[1:]) == ["A", "B"]


def test_cli_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "train.cfg"
    cfg.write_text("epochs=1\nbatch_size=4\nviews_per_class=2\nlr=1e-3\nside=16\n")
    code = main(
        ["train", "--classes", "4", "--views", "4", "--config", str(cfg), "--epochs", "1"]
    )
    assert code == 0


def test_cli_usage_and_config_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["train", "--classes", "not-a-number"])
    assert exc.value.code == 1
    capsys.readouterr()

    code = main(
        ["train", "--classes", "4", "--views", "4", "--side", "16",
         "--batch-size", "5", "--m", "2", "--epochs", "1"]
    )
    assert code == 1
    assert "not divisible" in capsys.readouterr().err


def test_cli_data_error_exit_code(tmp_path, capsys):
    code = main(["train", "--glyphs", str(tmp_path / "missing"), "--epochs", "1"])
    assert code == 2
    capsys.readouterr()
