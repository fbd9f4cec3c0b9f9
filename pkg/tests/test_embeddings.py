"""Embedding table parsing, canonical serialization, cosine similarity."""

import numpy as np
import pytest

from glyphlink.embeddings import EmbeddingTable, cosine, load_table, save_table
from glyphlink.errors import DataError
from glyphlink.synth import SplitMix64


def table_of(dim, **vectors):
    table = EmbeddingTable(dim)
    for char, vec in vectors.items():
        table.add(char, vec)
    return table


# --- construction ----------------------------------------------------------


def test_add_normalizes_to_unit_length():
    table = table_of(2, A=[3.0, 4.0])
    assert table.vector("A").tolist() == [0.6, 0.8]


def test_add_skips_renormalizing_already_unit_vectors():
    # A vector within 1e-9 of unit norm is stored verbatim; renormalizing it
    # would perturb the bytes and break the save/load fixed point.
    table = table_of(2, A=[0.6, 0.8])
    assert table.vector("A").tolist() == [0.6, 0.8]


def test_add_rejects_duplicate():
    table = table_of(2, A=[1.0, 0.0])
    with pytest.raises(DataError):
        table.add("A", [0.0, 1.0])


def test_add_rejects_wrong_dimension():
    with pytest.raises(DataError):
        table_of(3, A=[1.0, 0.0])


def test_add_rejects_zero_vector():
    with pytest.raises(DataError):
        table_of(2, A=[0.0, 0.0])


def test_add_rejects_non_finite():
    with pytest.raises(DataError):
        table_of(2, A=[float("nan"), 1.0])


def test_add_rejects_multichar_key():
    table = EmbeddingTable(2)
    with pytest.raises(DataError):
        table.add("ab", [1.0, 0.0])


def test_chars_sorted_by_codepoint():
    table = table_of(1, b=[1.0], A=[1.0], a=[1.0])
    assert table.chars() == ["A", "a", "b"]


def test_vector_missing_char():
    with pytest.raises(DataError):
        table_of(1, A=[1.0]).vector("B")


# --- load ------------------------------------------------------------------


def test_load_basic():
    table = load_table("#dim 2\nA\t1.0 0.0\nB\t0.0 1.0\n")
    assert len(table) == 2
    assert table.vector("B").tolist() == [0.0, 1.0]


def test_load_normalizes_rows():
    table = load_table("#dim 2\nA\t3.0 4.0\n")
    assert table.vector("A").tolist() == [0.6, 0.8]


def test_load_skips_blank_and_comment_lines():
    table = load_table("#dim 1\n\n# a comment\nA\t1.0\n")
    assert table.chars() == ["A"]


def test_load_rejects_duplicate_with_line_number():
    with pytest.raises(DataError, match="line 3"):
        load_table("#dim 2\nA\t1.0 0.0\nA\t0.0 1.0\n")


def test_load_rejects_missing_header():
    with pytest.raises(DataError, match="header"):
        load_table("A\t1.0\n")


def test_load_rejects_bad_dimension_count():
    with pytest.raises(DataError, match="line 2"):
        load_table("#dim 3\nA\t1.0 0.0\n")


def test_load_rejects_non_numeric():
    with pytest.raises(DataError, match="line 2"):
        load_table("#dim 1\nA\tpotato\n")


def test_load_rejects_missing_tab():
    with pytest.raises(DataError, match="TAB"):
        load_table("#dim 1\nA 1.0\n")


def test_load_empty_table_is_header_only():
    assert len(load_table("#dim 4\n")) == 0


# --- save ------------------------------------------------------------------


def test_save_empty_table():
    assert save_table(EmbeddingTable(4)) == "#dim 4\n"


def test_save_one_entry_two_lines():
    text = save_table(table_of(2, A=[1.0, 0.0]))
    assert text == "#dim 2\nA\t1.0 0.0\n"


def test_save_load_save_fixed_point():
    # Includes a vector whose normalization is irrational, the case where a
    # sloppy renormalize-on-load would drift the bytes.
    table = table_of(3, A=[1.0, 1.0, 1.0], B=[3.0, 4.0, 0.0], z=[0.0, 0.0, 1.0])
    first = save_table(table)
    second = save_table(load_table(first))
    assert first == second


def test_save_orders_rows_by_codepoint():
    text = save_table(table_of(1, b=[1.0], A=[1.0]))
    assert text.splitlines()[1].startswith("A\t")


# --- cosine ----------------------------------------------------------------


def test_cosine_self_is_one():
    assert cosine(table_of(2, A=[0.6, 0.8]), "A", "A") == 1.0


def test_cosine_orthogonal_is_zero():
    table = table_of(2, A=[1.0, 0.0], B=[0.0, 1.0])
    assert cosine(table, "A", "B") == 0.0


def test_cosine_hand_value():
    table = table_of(2, A=[1.0, 0.0], B=[0.6, 0.8])
    assert cosine(table, "A", "B") == 0.6


def test_cosine_symmetric_exactly():
    rng = SplitMix64(5)
    table = EmbeddingTable(5)
    for char in "abcdefgh":
        table.add(char, [rng.next_float() - 0.5 for _ in range(5)])
    for a in "abcdefgh":
        for b in "abcdefgh":
            assert table.cosine(a, b) == table.cosine(b, a)


def test_cosine_clamped_to_unit_interval():
    rng = SplitMix64(6)
    table = EmbeddingTable(8)
    for char in "abcdefghij":
        table.add(char, [rng.next_float() - 0.5 for _ in range(8)])
    for a in "abcdefghij":
        for b in "abcdefghij":
            assert -1.0 <= table.cosine(a, b) <= 1.0


def test_cosine_missing_char():
    with pytest.raises(DataError):
        cosine(table_of(1, A=[1.0]), "A", "B")
