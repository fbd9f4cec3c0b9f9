"""Independent reference implementations the tests compare against.

Everything here is deliberately written from the textbook definitions, in
plain Python, without importing the package under test.
"""

from __future__ import annotations

import math


def ref_levenshtein(s: str, t: str) -> int:
    """Textbook integer Levenshtein with a full (m+1) x (n+1) matrix."""
    m, n = len(s), len(t)
    d = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        d[i][0] = i
    for j in range(n + 1):
        d[0][j] = j
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            sub = 0 if s[i - 1] == t[j - 1] else 1
            d[i][j] = min(
                d[i - 1][j] + 1,
                d[i][j - 1] + 1,
                d[i - 1][j - 1] + sub,
            )
    return d[m][n]


def ref_exhaustive_edit(
    s: str,
    t: str,
    sub_cost,
    insert_cost: float = 1.0,
    delete_cost: float = 1.0,
) -> float:
    """Minimum cost over every edit script, by brute recursion.

    No memoization: each call branches into delete / insert / substitute, so
    the whole script tree is enumerated. Feasible for lengths up to ~6.
    sub_cost(a, b) gives the substitution cost (0 expected when a == b).
    """
    if not s:
        total = 0.0
        for _ in t:
            total += insert_cost
        return total
    if not t:
        total = 0.0
        for _ in s:
            total += delete_cost
        return total
    best = delete_cost + ref_exhaustive_edit(s[1:], t, sub_cost, insert_cost, delete_cost)
    ins = insert_cost + ref_exhaustive_edit(s, t[1:], sub_cost, insert_cost, delete_cost)
    if ins < best:
        best = ins
    rep = sub_cost(s[0], t[0]) + ref_exhaustive_edit(
        s[1:], t[1:], sub_cost, insert_cost, delete_cost
    )
    if rep < best:
        best = rep
    return best


def ref_cosine(a: list[float], b: list[float]) -> float:
    """Dot product accumulated left to right, clamped to [-1, 1].

    Inputs are assumed unit length already (matching stored embeddings).
    """
    total = 0.0
    for x, y in zip(a, b):
        total += x * y
    return min(1.0, max(-1.0, total))


def ref_knn(
    chars: list[str], vectors: list[list[float]], k: int
) -> dict[str, list[tuple[str, float]]]:
    """O(n^2) top-k scan. chars must be in ascending codepoint order."""
    n = len(chars)
    k_eff = min(k, n)
    out: dict[str, list[tuple[str, float]]] = {}
    for i in range(n):
        sims = [ref_cosine(vectors[i], vectors[j]) for j in range(n)]
        order = sorted(range(n), key=lambda j: (-sims[j], j))[:k_eff]
        out[chars[i]] = [(chars[j], sims[j]) for j in order]
    return out


def ref_set_metric(x: frozenset, y: frozenset, metric: str) -> float:
    """Set-overlap similarity straight from the formulas."""
    if not x and not y:
        return 1.0
    if not x or not y:
        return 0.0
    inter = len(x & y)
    if metric == "jaccard":
        return inter / len(x | y)
    if metric == "dice":
        return 2 * inter / (len(x) + len(y))
    if metric == "cosine":
        return inter / math.sqrt(len(x) * len(y))
    raise ValueError(metric)


def ref_tfidf_scores(key_grams: list[dict], query_grams: dict) -> list[float]:
    """Cosine between L2-normalized tf-idf vectors, idf = ln((1+N)/(1+df)) + 1."""
    n = len(key_grams)
    df: dict = {}
    for grams in key_grams:
        for g in grams:
            df[g] = df.get(g, 0) + 1
    idf = {g: math.log((1 + n) / (1 + c)) + 1.0 for g, c in df.items()}

    def vectorize(grams: dict) -> dict:
        raw = {g: count * idf[g] for g, count in grams.items() if g in idf}
        norm = math.sqrt(sum(w * w for w in raw.values()))
        return {g: w / norm for g, w in raw.items()} if norm > 0 else {}

    qv = vectorize(query_grams)
    scores = []
    for grams in key_grams:
        kv = vectorize(grams)
        scores.append(min(1.0, sum(qw * kv.get(g, 0.0) for g, qw in qv.items())))
    return scores
