"""Edit distances: classic Levenshtein and the similarity-weighted variant.

Substituting a for b costs sub_cost * (1 - sim(a, b)), where sim comes from a
homoglyph table; without a table every distinct pair costs sub_cost, which is
classic Levenshtein at the defaults. Insertions and deletions have flat costs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .knn import HomoglyphTable


@dataclass(frozen=True)
class CostModel:
    """Edit operation costs. sims=None means classic substitution pricing."""

    sub_cost: float = 1.0
    insert_cost: float = 1.0
    delete_cost: float = 1.0
    sims: HomoglyphTable | None = None
    clamp_negative: bool = True

    def __post_init__(self):
        for name in ("sub_cost", "insert_cost", "delete_cost"):
            value = getattr(self, name)
            if value < 0:
                raise ConfigError(f"{name} must be non-negative, got {value}")

    def similarity(self, a: str, b: str) -> float:
        if a == b:
            return 1.0
        if self.sims is None:
            return 0.0
        return self.sims.lookup_sim(a, b, clamp_negative=self.clamp_negative)

    def substitution_cost(self, a: str, b: str) -> float:
        if a == b:
            return 0.0
        return self.sub_cost * (1.0 - self.similarity(a, b))


def edit_distance(s: str, t: str, cost: CostModel | None = None) -> float:
    """Minimum total cost of an insert/delete/substitute script turning s into t.

    Standard O(mn) dynamic program over the cost lattice, keeping two rolling
    rows that span t. Cells accumulate in row-major order; the orientation is
    never swapped, so the exact sequence of float operations is a function of
    (s, t, cost) alone and repeat calls are bit-identical.
    """
    if cost is None:
        cost = CostModel()
    ins, dele = cost.insert_cost, cost.delete_cost
    n = len(t)
    prev = [0.0] * (n + 1)
    for j in range(1, n + 1):
        prev[j] = prev[j - 1] + ins
    cur = [0.0] * (n + 1)
    for a in s:
        cur[0] = prev[0] + dele
        for j in range(1, n + 1):
            best = prev[j] + dele
            diag = prev[j - 1] + cost.substitution_cost(a, t[j - 1])
            if diag < best:
                best = diag
            left = cur[j - 1] + ins
            if left < best:
                best = left
            cur[j] = best
        prev, cur = cur, prev
    return prev[n]


def normalized_distance(s: str, t: str, cost: CostModel | None = None) -> float:
    """edit_distance scaled into [0, 1] by the worst case for these lengths.

    Divides by max(len(s), len(t)) * max(sub, insert, delete cost); 0.0 when
    both strings are empty or all costs are zero.
    """
    if cost is None:
        cost = CostModel()
    denom = max(len(s), len(t)) * max(cost.sub_cost, cost.insert_cost, cost.delete_cost)
    if denom == 0:
        return 0.0
    return edit_distance(s, t, cost) / denom
