"""Weighted edit distance: substitutions between lookalikes cost less.

The classic Levenshtein distance charges every substitution the same.
Plugging a homoglyph table into the cost model scales each substitution by
1 - sim(a, b), so swapping a character for a near-twin barely moves the
distance while swapping it for an unrelated shape costs full price.
"""

from glyphlink import (
    CostModel,
    EmbeddingTable,
    build_table,
    edit_distance,
    normalized_distance,
    raster_embed,
    toy_glyphs,
)

emb = EmbeddingTable(dim=24 * 24)
for bitmap in toy_glyphs():
    emb.add(bitmap.char, raster_embed(bitmap, side=24))
table = build_table(emb, k=20)

classic = CostModel()
weighted = CostModel(sims=table)

# B is a sibling of A; z is unrelated. Both strings are one substitution
# from AAAA, but the weighted model sees the sibling swap as nearly free.
for other in ("BAAA", "zAAA"):
    d_classic = edit_distance("AAAA", other)
    d_weighted = edit_distance("AAAA", other, weighted)
    print(f"AAAA vs {other}: classic {d_classic:.3f}, weighted {d_weighted:.3f}")
print()

# Without a table the weighted model is exactly classic Levenshtein.
assert edit_distance("kitten", "sitting") == 3.0
assert edit_distance("kitten", "sitting", classic) == 3.0
print("kitten/sitting = 3.0 at default costs")
print()

# Normalized form divides by max(len) so long strings stay comparable.
pairs = [("AB", "AC"), ("ABABABAB", "ACABABAB")]
for s, t in pairs:
    print(
        f"{s} vs {t}: raw {edit_distance(s, t, weighted):.3f}, "
        f"normalized {normalized_distance(s, t, weighted):.3f}"
    )
