"""N-gram extraction, stroke streams, set metrics, TF-IDF ranking."""

import pytest

from glyphlink.errors import ConfigError, DataError
from glyphlink.ngram import (
    CHAR_BOUNDARY,
    PAD_TOKEN,
    char_ngrams,
    load_strokes,
    set_similarity,
    stroke_ngrams,
    tfidf_cosine,
    build_tfidf,
)
from glyphlink.synth import SplitMix64

from reference import ref_set_metric, ref_tfidf_scores


def grams(*texts):
    return frozenset(tuple(t) for t in texts)


# --- char_ngrams -----------------------------------------------------------


def test_char_bigrams_unpadded():
    assert char_ngrams("abcd", 2, pad=False).tokens() == grams("ab", "bc", "cd")


def test_char_bigrams_padded_single_char():
    profile = char_ngrams("a", 2, pad=True)
    assert profile.tokens() == {(PAD_TOKEN, "a"), ("a", PAD_TOKEN)}


def test_char_bigrams_multiplicity():
    assert char_ngrams("aaa", 2, pad=False).counts == {("a", "a"): 2}


def test_char_ngrams_short_string_unpadded_is_empty():
    assert char_ngrams("a", 2, pad=False).tokens() == frozenset()


def test_char_ngrams_rejects_bad_n():
    with pytest.raises(ConfigError):
        char_ngrams("abc", 0)


def test_char_unigrams_ignore_padding():
    assert char_ngrams("ab", 1, pad=True).tokens() == grams("a", "b")


# --- strokes ---------------------------------------------------------------


def test_load_strokes_basic():
    table = load_strokes("x\th,v,h\ny\tv\n")
    assert table.strokes("x") == ("h", "v", "h")
    assert table.strokes("y") == ("v",)
    assert table.strokes("z") is None


def test_load_strokes_rejects_duplicate():
    with pytest.raises(DataError, match="line 2"):
        load_strokes("x\th\nx\tv\n")


def test_load_strokes_rejects_empty_sequence():
    with pytest.raises(DataError):
        load_strokes("x\t\n")


def test_stroke_trigrams_single_char():
    table = load_strokes("x\th,v,h\n")
    assert stroke_ngrams("x", table, 3).tokens() == grams("hvh")


def test_stroke_bigrams_with_boundary():
    # Streams to h v | v; windows: hv, v|, |v.
    table = load_strokes("x\th,v\ny\tv\n")
    got = stroke_ngrams("xy", table, 2).tokens()
    assert got == {("h", "v"), ("v", CHAR_BOUNDARY), (CHAR_BOUNDARY, "v")}


def test_stroke_missing_char_is_opaque_token():
    table = load_strokes("x\th,v\n")
    got = stroke_ngrams("xq", table, 2).tokens()
    assert got == {("h", "v"), ("v", CHAR_BOUNDARY), (CHAR_BOUNDARY, "q")}


# --- set_similarity --------------------------------------------------------


def test_hand_case_one_substitution():
    p = char_ngrams("abcd", 2, pad=False)
    q = char_ngrams("abce", 2, pad=False)
    assert set_similarity(p, q, "jaccard") == pytest.approx(0.5, abs=1e-12)
    assert set_similarity(p, q, "dice") == pytest.approx(2 / 3, abs=1e-12)
    assert set_similarity(p, q, "cosine") == pytest.approx(2 / 3, abs=1e-12)


def test_identical_profiles_are_one():
    p = char_ngrams("hello", 2)
    for metric in ("jaccard", "dice", "cosine"):
        assert set_similarity(p, p, metric) == 1.0


def test_disjoint_profiles_are_zero():
    p = char_ngrams("aa", 2, pad=False)
    q = char_ngrams("bb", 2, pad=False)
    for metric in ("jaccard", "dice", "cosine"):
        assert set_similarity(p, q, metric) == 0.0


def test_both_empty_profiles_are_one():
    p = char_ngrams("", 2, pad=False)
    assert set_similarity(p, p, "dice") == 1.0


def test_one_empty_profile_is_zero():
    p = char_ngrams("", 2, pad=False)
    q = char_ngrams("ab", 2, pad=False)
    assert set_similarity(p, q, "cosine") == 0.0


def test_mismatched_profiles_rejected():
    with pytest.raises(ConfigError):
        set_similarity(char_ngrams("ab", 2), char_ngrams("ab", 3), "dice")
    with pytest.raises(ConfigError):
        set_similarity(char_ngrams("ab", 2, True), char_ngrams("ab", 2, False), "dice")


def test_unknown_metric_rejected():
    p = char_ngrams("ab", 2)
    with pytest.raises(ConfigError):
        set_similarity(p, p, "euclid")


def test_metrics_match_reference_formulas():
    rng = SplitMix64(303)
    alphabet = "abcde"
    for _ in range(100):
        s = "".join(alphabet[rng.next_below(5)] for _ in range(rng.next_below(9)))
        t = "".join(alphabet[rng.next_below(5)] for _ in range(rng.next_below(9)))
        p, q = char_ngrams(s, 2, pad=False), char_ngrams(t, 2, pad=False)
        for metric in ("jaccard", "dice", "cosine"):
            assert set_similarity(p, q, metric) == ref_set_metric(
                p.tokens(), q.tokens(), metric
            )


# --- tf-idf ----------------------------------------------------------------


def unpadded_bigrams(s):
    return char_ngrams(s, 2, pad=False)


def test_tfidf_hand_case():
    index = build_tfidf(["ab", "cd"], unpadded_bigrams)
    assert tfidf_cosine(index, "ab") == [(0, 1.0), (1, 0.0)]


def test_tfidf_exact_key_ranks_first_with_one():
    index = build_tfidf(["abc", "xyz", "pqr"], unpadded_bigrams)
    ranked = tfidf_cosine(index, "xyz")
    assert ranked[0] == (1, pytest.approx(1.0, abs=1e-12))


def test_tfidf_no_shared_tokens_scores_zero():
    index = build_tfidf(["abc", "abd"], unpadded_bigrams)
    assert all(score == 0.0 for _, score in tfidf_cosine(index, "xyz"))


def test_tfidf_ties_rank_by_ascending_key_id():
    index = build_tfidf(["ab", "ab c", "zz"], unpadded_bigrams)
    ranked = tfidf_cosine(index, "zz")
    assert [kid for kid, _ in ranked] == [2, 0, 1]


def test_tfidf_matches_reference_scores():
    rng = SplitMix64(304)
    alphabet = "abcdef"
    for _ in range(20):
        keys = [
            "".join(alphabet[rng.next_below(6)] for _ in range(2 + rng.next_below(6)))
            for _ in range(5)
        ]
        query = "".join(alphabet[rng.next_below(6)] for _ in range(2 + rng.next_below(6)))
        index = build_tfidf(keys, unpadded_bigrams)
        want = ref_tfidf_scores(
            [dict(unpadded_bigrams(k).counts) for k in keys],
            dict(unpadded_bigrams(query).counts),
        )
        got = {kid: score for kid, score in tfidf_cosine(index, query)}
        for kid, score in got.items():
            assert score == pytest.approx(want[kid], abs=1e-12)


def test_tfidf_scores_capped_at_one():
    index = build_tfidf(["aa", "ab"], unpadded_bigrams)
    for _, score in tfidf_cosine(index, "aa"):
        assert score <= 1.0
