"""Command line front end.

Subcommands cover the full pipeline: render-independent embedding of glyph
bitmaps, neighbor table construction, pairwise distances, bulk matching,
accuracy evaluation, and synthetic corpus generation. Exit codes: 0 success,
1 usage or configuration problem, 2 malformed input data.
"""

from __future__ import annotations

import argparse
import sys

from . import distance, embeddings, glyphs, knn, linkage, ngram, synth
from .errors import ConfigError, DataError, GlyphLinkError


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_cost_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--sub-cost", type=float, default=1.0, help="substitution cost scale")
    sub.add_argument("--insert-cost", type=float, default=1.0, help="insertion cost")
    sub.add_argument("--delete-cost", type=float, default=1.0, help="deletion cost")
    sub.add_argument(
        "--no-clamp",
        action="store_true",
        help="let negative cosine similarities raise substitution cost above the scale",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="glyphlink",
        description=__doc__.splitlines()[0],
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = commands.add_parser(
        "embed-raster",
        help="embed glyph bitmaps as normalized pixel vectors",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--glyphs", required=True, help="directory of U+XXXX.pgm bitmaps")
    p.add_argument("--out", required=True, help="embedding table file to write")
    p.add_argument("--side", type=int, default=glyphs.DEFAULT_SIDE, help="canvas side in pixels")

    p = commands.add_parser(
        "build-table",
        help="rank nearest neighbors by cosine for every embedded character",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--embeddings", required=True, help="embedding table file")
    p.add_argument("--out", required=True, help="homoglyph table file to write")
    p.add_argument("--k", type=int, default=knn.DEFAULT_K, help="neighbors kept per character")

    p = commands.add_parser(
        "dist",
        help="edit distance between two strings",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--table", help="homoglyph table file; omit for classic costs")
    p.add_argument(
        "--normalized",
        action="store_true",
        help="divide by the worst possible cost for these lengths",
    )
    _add_cost_flags(p)

    p = commands.add_parser(
        "match",
        help="match every query to its closest key",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--queries", required=True, help="file with one query per line")
    p.add_argument("--keys", required=True, help="file with one key per line")
    p.add_argument("--method", required=True, choices=linkage.METHODS)
    p.add_argument("--out", required=True, help="decisions file to write")
    p.add_argument("--table", help="homoglyph table file (homoglyphic-lev)")
    p.add_argument("--strokes", help="stroke table file (fuzzy-stroke)")
    p.add_argument("--n", type=int, help="n-gram order (default: 2 set metrics, 3 tf-idf)")
    pad = p.add_mutually_exclusive_group()
    pad.add_argument(
        "--pad",
        dest="pad",
        action="store_true",
        default=None,
        help="add boundary markers around every string",
    )
    pad.add_argument(
        "--no-pad", dest="pad", action="store_false", default=None, help="no boundary markers"
    )
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    _add_cost_flags(p)

    p = commands.add_parser(
        "eval",
        help="score a decisions file against ground truth",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--decisions", required=True, help="decisions file from match")
    p.add_argument("--truth", required=True, help="query TAB true-key file")
    p.add_argument("--keys", required=True, help="key file the decisions were made against")
    p.add_argument("--out", help="also write the report to this file")

    p = commands.add_parser(
        "synth",
        help="corrupt clean strings into a query/key/truth corpus",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--clean", required=True, help="file with one clean string per line")
    p.add_argument("--table", required=True, help="homoglyph table file guiding substitutions")
    p.add_argument("--out-queries", required=True)
    p.add_argument("--out-keys", required=True)
    p.add_argument("--out-truth", required=True)
    p.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    p.add_argument("--config", help="key=value parameter file; excludes the rate flags below")
    p.add_argument("--sub-rate", type=float, default=None, help="per-position substitution rate")
    p.add_argument("--ins-rate", type=float, default=None, help="per-position insertion rate")
    p.add_argument("--del-rate", type=float, default=None, help="per-position deletion rate")
    p.add_argument("--bias", type=float, default=None, help="homoglyph weighting exponent")
    p.add_argument("--alphabet", default=None, help="characters inserts draw from")

    return parser


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_homoglyphs(path: str) -> knn.HomoglyphTable:
    return knn.load_homoglyphs(_read_text(path))


def cmd_embed_raster(args) -> int:
    bitmaps = glyphs.load_glyph_dir(args.glyphs)
    if not bitmaps:
        raise DataError(f"no U+XXXX.pgm files in {args.glyphs}")
    table = embeddings.EmbeddingTable(dim=args.side * args.side)
    for bitmap in bitmaps:
        table.add(bitmap.char, glyphs.raster_embed(bitmap, side=args.side))
    _write_text(args.out, embeddings.save_table(table))
    print(f"embedded {len(table)} glyphs at {args.side}x{args.side}")
    return 0


def cmd_build_table(args) -> int:
    emb = embeddings.load_table(_read_text(args.embeddings))
    table = knn.build_table(emb, k=args.k)
    _write_text(args.out, knn.save_homoglyphs(table))
    print(f"ranked {len(table)} characters, k={table.k}")
    return 0


def _cost_model(args, sims) -> distance.CostModel:
    return distance.CostModel(
        sub_cost=args.sub_cost,
        insert_cost=args.insert_cost,
        delete_cost=args.delete_cost,
        sims=sims,
        clamp_negative=not args.no_clamp,
    )


def cmd_dist(args) -> int:
    sims = _load_homoglyphs(args.table) if args.table else None
    cost = _cost_model(args, sims)
    if args.normalized:
        value = distance.normalized_distance(args.a, args.b, cost)
    else:
        value = distance.edit_distance(args.a, args.b, cost)
    print(f"{value:g}")
    return 0


def cmd_match(args) -> int:
    queries = linkage.read_lines(args.queries)
    keys = linkage.KeySet(linkage.read_lines(args.keys))
    homoglyphs = _load_homoglyphs(args.table) if args.table else None
    if args.method == "homoglyphic-lev" and homoglyphs is None:
        raise ConfigError("homoglyphic-lev requires --table")
    strokes = ngram.load_strokes(_read_text(args.strokes)) if args.strokes else None
    config = linkage.MatchConfig(
        method=args.method,
        sub_cost=args.sub_cost,
        insert_cost=args.insert_cost,
        delete_cost=args.delete_cost,
        clamp_negative=not args.no_clamp,
        homoglyphs=homoglyphs,
        strokes=strokes,
        ngram_n=args.n,
        pad=args.pad,
        workers=args.workers,
    )
    decisions = linkage.match_all(queries, keys, config, progress=linkage.stderr_progress)
    linkage.write_decisions(args.out, decisions, keys)
    print(f"matched {len(decisions)} queries against {len(keys)} keys")
    return 0


def cmd_eval(args) -> int:
    keys = linkage.KeySet(linkage.read_lines(args.keys))
    decisions = linkage.read_decisions(args.decisions, keys)
    truth = linkage.read_truth(args.truth)
    report = linkage.evaluate(decisions, truth, keys)
    text = linkage.format_report(report)
    sys.stdout.write(text)
    if args.out:
        _write_text(args.out, text)
    return 0


def cmd_synth(args) -> int:
    flag_overrides = {
        "sub_rate": args.sub_rate,
        "ins_rate": args.ins_rate,
        "del_rate": args.del_rate,
        "homoglyph_bias": args.bias,
        "alphabet": args.alphabet,
    }
    given = {name: value for name, value in flag_overrides.items() if value is not None}
    if args.config:
        if given:
            raise ConfigError(
                "--config and the rate flags are mutually exclusive; "
                f"got both --config and {', '.join(sorted(given))}"
            )
        cfg = synth.read_config(_read_text(args.config), seed=args.seed)
    else:
        cfg = synth.CorruptionConfig(
            seed=args.seed if args.seed is not None else 0,
            sub_rate=given.get("sub_rate", synth.DEFAULT_SUB_RATE),
            ins_rate=given.get("ins_rate", synth.DEFAULT_INS_RATE),
            del_rate=given.get("del_rate", synth.DEFAULT_DEL_RATE),
            homoglyph_bias=given.get("homoglyph_bias", synth.DEFAULT_BIAS),
            alphabet=given.get("alphabet", ""),
        )
    clean = [line for line in linkage.read_lines(args.clean) if line]
    table = _load_homoglyphs(args.table)
    queries, keys, truth = synth.make_corpus(clean, table, cfg)
    linkage.write_lines(args.out_queries, queries)
    linkage.write_lines(args.out_keys, keys)
    linkage.write_truth(args.out_truth, truth)
    print(f"kept {len(truth)} of {len(clean)} entities, {len(keys)} distinct keys")
    return 0


_COMMANDS = {
    "embed-raster": cmd_embed_raster,
    "build-table": cmd_build_table,
    "dist": cmd_dist,
    "match": cmd_match,
    "eval": cmd_eval,
    "synth": cmd_synth,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"glyphlink {args.command}: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"glyphlink {args.command}: {exc}", file=sys.stderr)
        return 2
    except GlyphLinkError as exc:
        print(f"glyphlink {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
