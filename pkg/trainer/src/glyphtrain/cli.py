"""Command line front end for training and exporting toy glyph encoders."""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict

import torch

from . import batching, config, data, export
from .encoder import ToyEncoder
from .errors import ConfigError, DataError, TrainError
from .train import train as run_training
from .train import validate_top1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"glyphtrain: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="glyphtrain",
        description="Contrastive glyph encoder training at toy scale.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", metavar="command")

    p = commands.add_parser(
        "train",
        help="train an encoder and optionally export its embeddings",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    source = p.add_mutually_exclusive_group()
    source.add_argument("--classes", type=int, default=50, help="number of toy classes")
    source.add_argument("--glyphs", help="glyph directory (U+XXXX.pgm) instead of toy classes")
    p.add_argument("--views", type=int, default=12, help="augmented views per class")
    p.add_argument("--ancient", action="store_true", help="heavier augmentation profile")
    p.add_argument("--config", help="key=value parameter file; flags below override it")
    p.add_argument("--tau", type=float, help="contrastive temperature")
    p.add_argument("--batch-size", type=int, help="views per batch")
    p.add_argument("--m", type=int, dest="views_per_class", help="views per class per batch")
    p.add_argument("--k", type=int, dest="hard_neg_k", help="hard-negative set size")
    p.add_argument("--mine", action="store_true", default=None, help="hard-negative mining")
    p.add_argument("--lr", type=float, help="learning rate")
    p.add_argument("--weight-decay", type=float)
    p.add_argument("--t0", type=int, help="scheduler restart period")
    p.add_argument("--t-mult", type=int, help="scheduler restart multiplier")
    p.add_argument("--epochs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--side", type=int, help="image side in pixels")
    p.add_argument("--checkpoint", help="write the trained checkpoint here")
    p.add_argument("--export", dest="export_tsv", help="write the embedding TSV here")

    p = commands.add_parser(
        "export",
        help="export the embedding TSV from a saved checkpoint",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--out", required=True, help="embedding TSV to write")
    return parser


def _load_config(args) -> config.TrainerConfig:
    text = ""
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    return config.read_config(
        text,
        tau=args.tau,
        batch_size=args.batch_size,
        views_per_class=args.views_per_class,
        hard_neg_k=args.hard_neg_k,
        mine=args.mine,
        lr=args.lr,
        weight_decay=args.weight_decay,
        t0=args.t0,
        t_mult=args.t_mult,
        epochs=args.epochs,
        seed=args.seed,
        side=args.side,
    )


def cmd_train(args) -> int:
    cfg = _load_config(args)
    if args.glyphs:
        references = data.load_glyph_dir(args.glyphs, cfg.side)
    else:
        references = data.toy_references(args.classes, cfg.side, cfg.seed)
    classes = data.views_from_references(
        references, args.views, cfg.seed, ancient=args.ancient
    )
    train_classes, val_items, test_items = data.split_views(
        classes, cfg.seed, ancient=args.ancient
    )

    def report(tag, result):
        print(f"{tag}: best val top-1 {result.best_top1:.4f}", file=sys.stderr)

    hard_sets = None
    if cfg.mine:
        base = run_training(train_classes, references, val_items, cfg)
        report("warmup", base)
        per_crop = None
        if args.ancient:
            per_crop = [
                (cls.char, view) for cls in train_classes for view in cls.views
            ]
        hard_sets = batching.mine_hard_negatives(
            base.encoder, references, cfg.hard_neg_k, per_crop_views=per_crop
        )
    result = run_training(
        train_classes, references, val_items, cfg, hard_sets=hard_sets
    )
    report("final", result)
    test_top1 = validate_top1(result.encoder, test_items, references)
    print(f"val top-1 {result.best_top1:.4f}  test top-1 {test_top1:.4f}")

    if args.checkpoint:
        torch.save(
            {
                "state_dict": result.encoder.state_dict(),
                "references": references,
                "config": asdict(cfg),
            },
            args.checkpoint,
        )
    if args.export_tsv:
        text = export.export_embeddings(result.encoder, references)
        with open(args.export_tsv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return 0


def cmd_export(args) -> int:
    payload = torch.load(args.checkpoint, weights_only=False)
    encoder = ToyEncoder()
    encoder.load_state_dict(payload["state_dict"])
    text = export.export_embeddings(encoder, payload["references"])
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return 0


_COMMANDS = {"train": cmd_train, "export": cmd_export}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.error("a command is required")
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"glyphtrain {args.command}: {exc}", file=sys.stderr)
        return 1
    except (DataError, TrainError) as exc:
        print(f"glyphtrain {args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"glyphtrain {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
