"""Render the bundled toy glyphs and turn them into pixel embeddings.

The toy charset draws 60 characters as bar patterns on a 24x24 canvas,
grouped into families of five that share most of their strokes. Rasterizing
a glyph and normalizing the pixels gives a unit vector whose cosine against
another glyph measures how much ink the two shapes share.
"""

from glyphlink import EmbeddingTable, raster_embed, toy_glyphs


def render(bitmap):
    rows = []
    for y in range(bitmap.height):
        row = bitmap.pixels[y * bitmap.width : (y + 1) * bitmap.width]
        rows.append("".join("#" if p == 0 else "." for p in row))
    return "\n".join(rows)


bitmaps = toy_glyphs()
print(f"{len(bitmaps)} glyphs, {bitmaps[0].width}x{bitmaps[0].height} each")
print()
print("The first two members of the first family (note the shared bars):")
print()
for bitmap in bitmaps[:2]:
    print(f"--- {bitmap.char} ---")
    print(render(bitmap))
    print()

table = EmbeddingTable(dim=24 * 24)
for bitmap in bitmaps:
    table.add(bitmap.char, raster_embed(bitmap, side=24))

a, b, z = bitmaps[0].char, bitmaps[1].char, bitmaps[-1].char
va, vb, vz = table.vector(a), table.vector(b), table.vector(z)
print(f"cosine({a}, {b}) = {float(va @ vb):.3f}   (same family, high)")
print(f"cosine({a}, {z}) = {float(va @ vz):.3f}   (different family, low)")
