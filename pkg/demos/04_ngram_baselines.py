"""The n-gram baselines: set-overlap metrics and TF-IDF cosine ranking.

Two families of string matchers that ignore visual similarity entirely.
The set metrics (jaccard, dice, cosine) compare distinct padded 2-gram
sets. The TF-IDF ranker weights 3-grams by corpus rarity, so a match on a
rare trigram counts for more than a match on a common one.
"""

from glyphlink import build_tfidf, char_ngrams, set_similarity, tfidf_cosine

p = char_ngrams("taro", n=2)
q = char_ngrams("tarou", n=2)
print(f"2-grams of 'taro'  (padded): {sorted(p.tokens())}")
print(f"2-grams of 'tarou' (padded): {sorted(q.tokens())}")
for metric in ("jaccard", "dice", "cosine"):
    print(f"  {metric:8s} {set_similarity(p, q, metric):.4f}")
print()

# Identical strings always score 1.0; disjoint strings score 0.0.
same = char_ngrams("taro", n=2)
assert set_similarity(p, same, "jaccard") == 1.0
assert set_similarity(p, char_ngrams("xyz", n=2), "jaccard") == 0.0

keys = ["suzuki ichiro", "suzuki jiro", "tanaka ichiro", "yamada hanako"]
index = build_tfidf(keys, lambda s: char_ngrams(s, n=3, pad=False))
for query in ("suzuki ichira", "tanaka ichira"):
    ranked = tfidf_cosine(index, query)[:3]
    shown = ", ".join(f"{keys[i]}={score:.3f}" for i, score in ranked)
    print(f"{query!r} -> {shown}")
print()
print("'suzuki' and 'tanaka' trigrams are rarer than 'ichiro' ones, so the")
print("surname dominates the ranking even though the given name also matches.")
