"""Null-model corpus shuffles, reproducible from an integer seed.

All randomness comes from numpy's PCG64 generator, so a (corpus, mode, seed)
triple produces the same output corpus on any platform.

Two null models are provided, plus a stricter third for comparison:

* sentence-level: one global permutation of every word occurrence, re-dealt
  into the original sentence slots in order. Sentence lengths and sentence
  order are preserved exactly.
* text-level: keeps the number of sentences and the word inventory, but
  redraws the sentence lengths as a uniformly random composition of the
  word total into positive parts (distinct cut points chosen uniformly),
  then deals out the permuted words. Guarantees every output sentence is
  non-empty, which a literal permutation of delimiter tokens would not.
* within-sentence: permutes each sentence independently, additionally
  preserving which words share a sentence.

Every mode preserves the occurrence count of each lexeme exactly, and the
input lexicon is shared unchanged.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, Lexicon
from .errors import CompositionError


class ShuffleMode(enum.Enum):
    SENTENCE = "sentence"
    TEXT = "text"
    WITHIN_SENTENCE = "within-sentence"

    @classmethod
    def from_string(cls, name: str) -> "ShuffleMode":
        for mode in cls:
            if mode.value == name:
                return mode
        choices = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown shuffle mode {name!r} (choose from: {choices})")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _flat_words(corpus: Corpus) -> np.ndarray:
    total = corpus.total_words
    return np.fromiter(corpus.iter_word_ids(), dtype=np.int64, count=total)


def _deal(lexicon: Lexicon, words: np.ndarray, lengths: list[int]) -> Corpus:
    sentences = []
    pos = 0
    for n in lengths:
        sentences.append(tuple(int(w) for w in words[pos : pos + n]))
        pos += n
    return Corpus(lexicon, tuple(sentences))


def shuffle_sentence_level(corpus: Corpus, seed: int) -> Corpus:
    """Globally permute all word occurrences, keeping sentence boundaries fixed.

    The output sentence-length vector equals the input's position by position.
    """
    words = _flat_words(corpus)
    if words.size == 0:
        return Corpus(corpus.lexicon, corpus.sentences)
    shuffled = _rng(seed).permutation(words)
    return _deal(corpus.lexicon, shuffled, corpus.sentence_lengths())


def _random_composition(rng: np.random.Generator, total: int, parts: int) -> list[int]:
    """Uniform random composition of `total` into `parts` positive integers."""
    if parts == 1:
        return [total]
    cuts = np.sort(rng.choice(total - 1, size=parts - 1, replace=False)) + 1
    bounds = np.concatenate(([0], cuts, [total]))
    return np.diff(bounds).tolist()


def shuffle_text_level(corpus: Corpus, seed: int) -> Corpus:
    """Permute all words and redraw sentence lengths, keeping the sentence count.

    The composition of total words into sentences is drawn first, then the
    permuted word sequence is dealt into it. Requires at least as many words
    as sentences, so every output sentence is non-empty.
    """
    n_sentences = corpus.sentence_count
    words = _flat_words(corpus)
    if words.size < n_sentences:
        raise CompositionError(
            f"cannot split {words.size} words into {n_sentences} non-empty sentences"
        )
    if n_sentences == 0:
        return Corpus(corpus.lexicon, ())
    rng = _rng(seed)
    lengths = _random_composition(rng, int(words.size), n_sentences)
    shuffled = rng.permutation(words)
    return _deal(corpus.lexicon, shuffled, lengths)


def shuffle_within_sentence(corpus: Corpus, seed: int) -> Corpus:
    """Permute each sentence independently (words never change sentence)."""
    rng = _rng(seed)
    sentences = []
    for sentence in corpus.sentences:
        arr = np.asarray(sentence, dtype=np.int64)
        sentences.append(tuple(int(w) for w in rng.permutation(arr)))
    return Corpus(corpus.lexicon, tuple(sentences))


_SHUFFLERS = {
    ShuffleMode.SENTENCE: shuffle_sentence_level,
    ShuffleMode.TEXT: shuffle_text_level,
    ShuffleMode.WITHIN_SENTENCE: shuffle_within_sentence,
}


def shuffle_corpus(corpus: Corpus, mode: ShuffleMode, seed: int) -> Corpus:
    return _SHUFFLERS[mode](corpus, seed)


@dataclass(frozen=True)
class PreservationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class PreservationReport:
    """Pass/fail record of what a shuffle was supposed to leave untouched."""

    mode: ShuffleMode
    checks: tuple[PreservationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


def _lexeme_counts(corpus: Corpus) -> Counter:
    counts: Counter = Counter()
    lexeme = corpus.lexicon.lexeme_of
    for sentence in corpus.sentences:
        for word_id in sentence:
            counts[lexeme(word_id)] += 1
    return counts


def _sample(items: list[str], limit: int = 5) -> str:
    shown = items[:limit]
    suffix = ", ..." if len(items) > limit else ""
    return ", ".join(shown) + suffix


def preservation_check(
    original: Corpus, shuffled: Corpus, mode: ShuffleMode
) -> PreservationReport:
    """Verify the invariants the given shuffle mode is required to preserve.

    Always checked: per-lexeme occurrence counts (exact multiset equality),
    vocabulary identity, and sentence count. For sentence-level and
    within-sentence modes the per-position sentence-length vector must also
    match. Comparison is by lexeme, so corpora with independently built
    lexicons compare correctly.
    """
    checks: list[PreservationCheck] = []

    orig_counts = _lexeme_counts(original)
    shuf_counts = _lexeme_counts(shuffled)
    if orig_counts == shuf_counts:
        checks.append(PreservationCheck("word_occurrences", True))
    else:
        diffs = [
            f"{lex!r}: {orig_counts.get(lex, 0)} != {shuf_counts.get(lex, 0)}"
            for lex in sorted(set(orig_counts) | set(shuf_counts))
            if orig_counts.get(lex, 0) != shuf_counts.get(lex, 0)
        ]
        checks.append(PreservationCheck("word_occurrences", False, _sample(diffs)))

    orig_vocab = set(orig_counts)
    shuf_vocab = set(shuf_counts)
    if orig_vocab == shuf_vocab:
        checks.append(PreservationCheck("vocabulary", True))
    else:
        missing = sorted(orig_vocab - shuf_vocab)
        added = sorted(shuf_vocab - orig_vocab)
        detail = f"missing: [{_sample(missing)}] added: [{_sample(added)}]"
        checks.append(PreservationCheck("vocabulary", False, detail))

    if original.sentence_count == shuffled.sentence_count:
        checks.append(PreservationCheck("sentence_count", True))
    else:
        detail = f"{original.sentence_count} != {shuffled.sentence_count}"
        checks.append(PreservationCheck("sentence_count", False, detail))

    if mode in (ShuffleMode.SENTENCE, ShuffleMode.WITHIN_SENTENCE):
        orig_lengths = original.sentence_lengths()
        shuf_lengths = shuffled.sentence_lengths()
        if orig_lengths == shuf_lengths:
            checks.append(PreservationCheck("sentence_lengths", True))
        else:
            diffs = [
                f"position {i}: {a} != {b}"
                for i, (a, b) in enumerate(zip(orig_lengths, shuf_lengths))
                if a != b
            ]
            if len(orig_lengths) != len(shuf_lengths):
                diffs.append(f"length-vector sizes {len(orig_lengths)} != {len(shuf_lengths)}")
            checks.append(PreservationCheck("sentence_lengths", False, _sample(diffs)))

    return PreservationReport(mode=mode, checks=tuple(checks))
