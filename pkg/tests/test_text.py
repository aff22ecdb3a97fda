import random

import pytest

from chatgrade import TokenizerConfig, ngrams, tokenize


def test_punctuation_becomes_standalone_tokens():
    assert tokenize("Hello, world!") == ["hello", ",", "world", "!"]


def test_empty_input():
    assert tokenize("") == []
    assert tokenize("   \t\n") == []


def test_lowercasing():
    assert tokenize("The the THE") == ["the", "the", "the"]


def test_nfc_normalization_unifies_forms():
    composed = "café"
    decomposed = "café"
    assert tokenize(composed) == tokenize(decomposed) == ["café"]


def test_drop_punctuation_variant():
    config = TokenizerConfig(drop_punctuation=True)
    assert tokenize("Hello, world!", config) == ["hello", "world"]


def test_whitespace_collapsed():
    assert tokenize("a  \t b\n\nc") == ["a", "b", "c"]


def test_contractions_and_symbols():
    assert tokenize("it's 30%") == ["it", "'", "s", "30", "%"]


def test_tokens_are_nonempty_and_whitespace_free():
    for token in tokenize("Some text; with 3 punct-marks, ok?"):
        assert token
        assert not any(ch.isspace() for ch in token)


def test_tokenize_idempotent():
    # retokenizing the joined token list must not change it
    rng = random.Random(7)
    words = ["Hello,", "world!", "it's", "fine.", "30%", "café", "a-b", "..."]
    for _ in range(50):
        raw = " ".join(rng.choices(words, k=rng.randint(0, 12)))
        once = tokenize(raw)
        assert tokenize(" ".join(once)) == once


def test_ngrams_bigram_example():
    assert ngrams(["a", "b", "c"], 2) == {("a", "b"): 1, ("b", "c"): 1}


def test_ngrams_multiplicity():
    assert ngrams(["a", "a", "a"], 1) == {("a",): 3}


def test_ngrams_window_longer_than_sequence():
    assert ngrams(["a", "b"], 3) == {}


def test_ngrams_rejects_order_zero():
    with pytest.raises(ValueError):
        ngrams(["a"], 0)


def test_ngram_total_count():
    rng = random.Random(3)
    for _ in range(100):
        seq = [rng.choice("abcde") for _ in range(rng.randint(0, 15))]
        n = rng.randint(1, 6)
        assert sum(ngrams(seq, n).values()) == max(0, len(seq) - n + 1)


def test_unigram_counts_match_naive_frequency():
    seq = list("abracadabra")
    counts = ngrams(seq, 1)
    for token in set(seq):
        assert counts[(token,)] == seq.count(token)
