"""Build a nearest-neighbor homoglyph table from glyph embeddings.

A homoglyph table stores, for each character, its k most visually similar
characters with cosine scores. Built from the toy glyphs, every character's
closest neighbors are its own family members; unrelated characters score
much lower. The table serializes to TSV and loads back without loss.
"""

from glyphlink import (
    EmbeddingTable,
    build_table,
    load_homoglyphs,
    raster_embed,
    save_homoglyphs,
    toy_glyphs,
)
from glyphlink.toyglyphs import family_of

emb = EmbeddingTable(dim=24 * 24)
for bitmap in toy_glyphs():
    emb.add(bitmap.char, raster_embed(bitmap, side=24))

table = build_table(emb, k=6)
print(f"table covers {len(table)} characters, k={table.k}")
print()
for char in ("A", "F", "z"):
    nbrs = ", ".join(f"{n}:{s:.3f}" for n, s in table.neighbors(char))
    print(f"{char} (family {family_of(char)}): {nbrs}")
print()

# Every character ranks itself first, then its four siblings.
for char in table.chars():
    nbrs = table.neighbors(char)
    assert nbrs[0][0] == char
    siblings = {n for n, _ in nbrs[1:5]}
    assert all(family_of(n) == family_of(char) for n in siblings)
print("checked: top-5 neighbors of every character are its own family")

# Scores serialize at six decimals, so a round trip preserves neighbor
# names and order exactly and scores to write precision.
text = save_homoglyphs(table)
again = load_homoglyphs(text)
for char in table.chars():
    for (n1, s1), (n2, s2) in zip(table.neighbors(char), again.neighbors(char)):
        assert n1 == n2 and abs(s1 - s2) <= 1e-6
print(f"TSV round trip holds to write precision ({len(text.splitlines())} lines)")
