"""Plain-text ingestion: tokenization, sentence segmentation, corpus statistics.

A corpus is an immutable pair (lexicon, sentences): the lexicon interns every
distinct word to a dense integer id assigned in first-occurrence order, and
each sentence is a tuple of those ids. Tokenization is a single pass over the
text: characters from the configured delimiter set end sentences, whitespace
and other punctuation separate words (apostrophes are dropped without
splitting, so "don't" becomes "dont"), and words are case-folded by default.

Corpora serialize to a line-oriented text format, one sentence per line with
space-separated lexemes, readable back with `corpus_from_lines`.
"""

from __future__ import annotations

import json
import unicodedata
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path

from .errors import DecodingError

DEFAULT_DELIMITERS = frozenset(".!?")

# Dropped inside words instead of splitting them.
_APOSTROPHES = frozenset("'’ʼ")


@dataclass(frozen=True)
class TokenizeConfig:
    """Sentence-delimiter character set and case-folding switch."""

    delimiters: frozenset[str] = DEFAULT_DELIMITERS
    case_fold: bool = True

    def __post_init__(self):
        object.__setattr__(self, "delimiters", frozenset(self.delimiters))


@dataclass(frozen=True)
class Word:
    lexeme: str


@dataclass(frozen=True)
class Delimiter:
    symbol: str


Token = Word | Delimiter


def decode_utf8(data: bytes) -> str:
    """Decode bytes as UTF-8; on failure report the offset of the bad byte."""
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DecodingError(exc.start, exc.reason) from exc


def _is_stripped_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("P", "S")


def tokenize(text: str, config: TokenizeConfig | None = None) -> list[Token]:
    """Split text into Word and Delimiter tokens, in text order.

    Each delimiter character yields its own token, so consecutive delimiters
    produce consecutive Delimiter tokens. Non-delimiter punctuation acts as a
    word separator and is stripped, except apostrophes, which are removed
    without splitting the surrounding word. Purely numeric tokens are kept
    as words.
    """
    if config is None:
        config = TokenizeConfig()
    tokens: list[Token] = []
    current: list[str] = []

    def flush() -> None:
        if current:
            lexeme = "".join(current)
            if config.case_fold:
                lexeme = lexeme.lower()
            tokens.append(Word(lexeme))
            current.clear()

    for ch in text:
        if ch in config.delimiters:
            flush()
            tokens.append(Delimiter(ch))
        elif ch.isspace():
            flush()
        elif ch in _APOSTROPHES:
            continue
        elif _is_stripped_punct(ch):
            flush()
        else:
            current.append(ch)
    flush()
    return tokens


class Lexicon:
    """Bijective map between lexemes and dense integer word ids.

    Ids start at 0 and follow first-occurrence order. Treat as read-only
    once the owning corpus is built; shuffled corpora share it unchanged.
    """

    __slots__ = ("_lexemes", "_index")

    def __init__(self, lexemes: Iterable[str] = ()):
        self._lexemes: list[str] = []
        self._index: dict[str, int] = {}
        for lexeme in lexemes:
            self.intern(lexeme)

    def intern(self, lexeme: str) -> int:
        """Return the id of `lexeme`, assigning the next free id if new."""
        word_id = self._index.get(lexeme)
        if word_id is None:
            word_id = len(self._lexemes)
            self._index[lexeme] = word_id
            self._lexemes.append(lexeme)
        return word_id

    def id_of(self, lexeme: str) -> int:
        return self._index[lexeme]

    def lexeme_of(self, word_id: int) -> str:
        return self._lexemes[word_id]

    def __len__(self) -> int:
        return len(self._lexemes)

    def __contains__(self, lexeme: object) -> bool:
        return lexeme in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self._lexemes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lexicon):
            return NotImplemented
        return self._lexemes == other._lexemes

    def __repr__(self) -> str:
        return f"Lexicon({len(self)} lexemes)"


@dataclass(frozen=True)
class Corpus:
    """An interned text: lexicon plus ordered sentences of word ids.

    Immutable and safe to share across concurrent readers. Every stored
    sentence is non-empty, every id resolves through the lexicon, and every
    lexicon entry occurs in at least one sentence.
    """

    lexicon: Lexicon
    sentences: tuple[tuple[int, ...], ...]

    @property
    def total_words(self) -> int:
        return sum(len(s) for s in self.sentences)

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    def sentence_lengths(self) -> list[int]:
        return [len(s) for s in self.sentences]

    def iter_word_ids(self) -> Iterator[int]:
        for sentence in self.sentences:
            yield from sentence

    def __repr__(self) -> str:
        return (
            f"Corpus({self.total_words} words, {len(self.lexicon)} unique, "
            f"{len(self.sentences)} sentences)"
        )


def segment(tokens: Iterable[Token]) -> Corpus:
    """Group the words between delimiters into sentences and intern them.

    Empty segments (consecutive, leading or trailing delimiters) are dropped;
    a trailing run of words with no closing delimiter still forms a sentence.
    """
    lexicon = Lexicon()
    sentences: list[tuple[int, ...]] = []
    current: list[int] = []
    for token in tokens:
        if isinstance(token, Word):
            current.append(lexicon.intern(token.lexeme))
        elif current:
            sentences.append(tuple(current))
            current = []
    if current:
        sentences.append(tuple(current))
    return Corpus(lexicon, tuple(sentences))


def count_empty_segments(tokens: Iterable[Token]) -> int:
    """Number of zero-word segments that `segment` drops (ingestion diagnostic).

    Counts each delimiter that closes a segment containing no words; a final
    delimiter at end of text is normal sentence punctuation, not a drop.
    """
    dropped = 0
    pending_words = False
    for token in tokens:
        if isinstance(token, Word):
            pending_words = True
        else:
            if not pending_words:
                dropped += 1
            pending_words = False
    return dropped


def ingest_text(text: str, config: TokenizeConfig | None = None) -> Corpus:
    """Tokenize and segment in one step."""
    return segment(tokenize(text, config))


@dataclass(frozen=True)
class CorpusStats:
    """Word/sentence totals plus the sentence-length histogram."""

    total_words: int
    unique_words: int
    sentence_count: int
    sentence_length_histogram: dict[int, int]

    def to_json_dict(self) -> dict:
        return {
            "total_words": self.total_words,
            "unique_words": self.unique_words,
            "sentence_count": self.sentence_count,
            "histogram": [
                [length, freq]
                for length, freq in sorted(self.sentence_length_histogram.items())
            ],
        }


def stats(corpus: Corpus) -> CorpusStats:
    """Count words, unique words and sentences; histogram sentence lengths."""
    histogram = Counter(len(s) for s in corpus.sentences)
    return CorpusStats(
        total_words=sum(length * freq for length, freq in histogram.items()),
        unique_words=len(corpus.lexicon),
        sentence_count=sum(histogram.values()),
        sentence_length_histogram=dict(sorted(histogram.items())),
    )


def stats_to_json(corpus_stats: CorpusStats) -> str:
    return json.dumps(corpus_stats.to_json_dict(), sort_keys=True, indent=2) + "\n"


def corpus_to_text(corpus: Corpus) -> str:
    """Serialize: one sentence per line, space-separated lexemes."""
    lexeme = corpus.lexicon.lexeme_of
    return "".join(
        " ".join(lexeme(w) for w in sentence) + "\n" for sentence in corpus.sentences
    )


def corpus_from_lines(text: str) -> Corpus:
    """Read the line-oriented corpus format back (one sentence per line)."""
    lexicon = Lexicon()
    sentences: list[tuple[int, ...]] = []
    for line in text.splitlines():
        words = line.split()
        if words:
            sentences.append(tuple(lexicon.intern(w) for w in words))
    return Corpus(lexicon, tuple(sentences))


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    Path(path).write_bytes(corpus_to_text(corpus).encode("utf-8"))


def load_corpus(path: str | Path) -> Corpus:
    return corpus_from_lines(decode_utf8(Path(path).read_bytes()))
