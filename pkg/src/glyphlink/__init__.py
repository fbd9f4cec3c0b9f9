"""Visual-similarity record linkage toolkit.

Characters are embedded from their rendered glyphs, nearest visual neighbors
are tabulated, and the similarity discounts substitution cost inside an edit
distance. Matching, baselines, evaluation, and synthetic corpus tools round
out the pipeline.
"""

from .distance import CostModel, edit_distance, normalized_distance
from .embeddings import EmbeddingTable, cosine, load_table, save_table
from .errors import BlankGlyphError, ConfigError, DataError, GlyphLinkError
from .glyphs import (
    GlyphBitmap,
    glyph_filename,
    load_glyph_dir,
    load_pgm,
    normalize,
    parse_glyph_filename,
    raster_embed,
    save_pgm,
)
from .knn import (
    HomoglyphTable,
    build_table,
    empty_table,
    load_homoglyphs,
    lookup_sim,
    save_homoglyphs,
)
from .linkage import (
    KeySet,
    LinkageReport,
    MatchConfig,
    MatchDecision,
    evaluate,
    match_all,
)
from .ngram import (
    NGramProfile,
    StrokeTable,
    TfIdfIndex,
    build_tfidf,
    char_ngrams,
    load_strokes,
    set_similarity,
    stroke_ngrams,
    tfidf_cosine,
)
from .synth import CorruptionConfig, SplitMix64, corrupt, make_corpus, read_config
from .toyglyphs import TOY_CHARSET, toy_glyph, toy_glyphs, write_toy_glyph_dir

__all__ = [
    "BlankGlyphError",
    "ConfigError",
    "CorruptionConfig",
    "CostModel",
    "DataError",
    "EmbeddingTable",
    "GlyphBitmap",
    "GlyphLinkError",
    "HomoglyphTable",
    "KeySet",
    "LinkageReport",
    "MatchConfig",
    "MatchDecision",
    "NGramProfile",
    "SplitMix64",
    "StrokeTable",
    "TOY_CHARSET",
    "TfIdfIndex",
    "build_table",
    "build_tfidf",
    "char_ngrams",
    "corrupt",
    "cosine",
    "edit_distance",
    "empty_table",
    "evaluate",
    "glyph_filename",
    "load_glyph_dir",
    "load_homoglyphs",
    "load_pgm",
    "load_strokes",
    "load_table",
    "lookup_sim",
    "make_corpus",
    "match_all",
    "normalize",
    "normalized_distance",
    "parse_glyph_filename",
    "raster_embed",
    "read_config",
    "save_homoglyphs",
    "save_pgm",
    "save_table",
    "set_similarity",
    "stroke_ngrams",
    "tfidf_cosine",
    "toy_glyph",
    "toy_glyphs",
    "write_toy_glyph_dir",
]
