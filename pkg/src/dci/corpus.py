"""Corpus ingestion: processed review files, bilingual dictionaries, transfer tasks.

The on-disk document format is one document per line, whitespace-separated
``token:count`` fields, optionally terminated by a ``#label#:positive`` /
``#label#:negative`` field (``#label#:unlabeled`` or no label field on
unlabeled files).  Tokens are opaque strings; bigram tokens such as
``not_good`` pass through untouched.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional

from .errors import ConfigError, ParseError

logger = logging.getLogger(__name__)

LABEL_FIELD_PREFIX = "#label#:"

POSITIVE = 1
NEGATIVE = -1

_LABEL_NAMES = {"positive": POSITIVE, "negative": NEGATIVE, "unlabeled": None}
_NAME_OF_LABEL = {POSITIVE: "positive", NEGATIVE: "negative"}

DEFAULT_PIVOTS_CROSS_DOMAIN = 1000
DEFAULT_PIVOTS_CROSS_LINGUAL = 450


class Vocabulary:
    """Bijective term <-> dense integer id map, ids assigned in first-seen order.

    One Vocabulary is shared by every domain of a language, so that a term
    denotes the same id on both sides of a monolingual transfer task.
    """

    def __init__(self):
        self._term_to_id: dict[str, int] = {}
        self._id_to_term: list[str] = []

    def intern(self, term: str) -> int:
        """Return the id of ``term``, assigning the next free id if unseen."""
        tid = self._term_to_id.get(term)
        if tid is None:
            tid = len(self._id_to_term)
            self._term_to_id[term] = tid
            self._id_to_term.append(term)
        return tid

    def id_of(self, term: str) -> Optional[int]:
        return self._term_to_id.get(term)

    def term(self, tid: int) -> str:
        return self._id_to_term[tid]

    def __len__(self) -> int:
        return len(self._id_to_term)

    def __contains__(self, term: str) -> bool:
        return term in self._term_to_id


@dataclass
class Document:
    """Sparse term-count vector with an optional binary sentiment label.

    ``terms`` maps term id to a positive count; absent terms are not stored.
    ``label`` is +1 (positive), -1 (negative) or None.
    """

    terms: dict[int, int]
    label: Optional[int] = None


@dataclass
class DomainPool:
    """All documents of one (language, domain) side, split by role.

    ``labeled`` documents all carry labels and are available for training,
    ``unlabeled`` documents contribute distributional evidence only, and
    ``test`` documents are labeled but held out for scoring.
    """

    language: str
    domain: str
    vocabulary: Vocabulary
    labeled: list[Document] = field(default_factory=list)
    unlabeled: list[Document] = field(default_factory=list)
    test: list[Document] = field(default_factory=list)

    @property
    def tag(self) -> str:
        return f"{self.language}-{self.domain}"


@dataclass
class TranslationOracle:
    """Deterministic one-best word translator built from a bilingual dictionary.

    Missing entries are reported as absent (None), never guessed.
    """

    entries: dict[str, str]
    duplicates: int = 0

    def translate(self, term: str) -> Optional[str]:
        return self.entries.get(term)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class TransferTask:
    """A source pool, a target pool, and the resources to bridge them."""

    source: DomainPool
    target: DomainPool
    dictionary: Optional[TranslationOracle] = None
    n_pivots: int = DEFAULT_PIVOTS_CROSS_DOMAIN

    @property
    def cross_lingual(self) -> bool:
        return self.source.language != self.target.language

    @property
    def tag(self) -> str:
        return f"{self.source.tag}->{self.target.tag}"


def _parse_line(line: str, path, lineno: int, vocab: Vocabulary) -> Document:
    terms: dict[int, int] = {}
    label = None
    saw_label_field = False
    for fld in line.split():
        if fld.startswith(LABEL_FIELD_PREFIX):
            if saw_label_field:
                raise ParseError(path, lineno, "duplicate label field")
            name = fld[len(LABEL_FIELD_PREFIX):]
            if name not in _LABEL_NAMES:
                raise ParseError(path, lineno, f"unknown label {name!r}")
            label = _LABEL_NAMES[name]
            saw_label_field = True
            continue
        token, sep, count_s = fld.rpartition(":")
        if not sep or not token:
            raise ParseError(path, lineno, f"malformed field {fld!r} (expected token:count)")
        try:
            count = int(count_s)
        except ValueError:
            raise ParseError(path, lineno, f"non-integer count in field {fld!r}") from None
        if count < 1:
            raise ParseError(path, lineno, f"non-positive count in field {fld!r}")
        tid = vocab.intern(token)
        terms[tid] = terms.get(tid, 0) + count
    return Document(terms=terms, label=label)


def load_processed_file(path, vocab: Vocabulary) -> list[Document]:
    """Load one processed corpus file into a list of documents.

    Args:
        path: file in the ``token:count ... #label#:<y>`` line format.
        vocab: vocabulary into which tokens are interned (mutated in place).

    Returns:
        One Document per non-empty line, in file order.  The label field never
        enters the term map or the vocabulary.

    Raises:
        ParseError: on a malformed field or unknown label, naming the line.
        FileNotFoundError: if the file does not exist.
    """
    path = Path(path)
    docs: list[Document] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            docs.append(_parse_line(line, path, lineno, vocab))
    return docs


def dump_processed_file(docs: Iterable[Document], vocab: Vocabulary, path) -> None:
    """Serialize documents back to the processed line format (sorted term order)."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(document_to_line(doc, vocab) + "\n")


def document_to_line(doc: Document, vocab: Vocabulary) -> str:
    parts = [f"{vocab.term(tid)}:{count}" for tid, count in sorted(doc.terms.items())]
    if doc.label is not None:
        parts.append(LABEL_FIELD_PREFIX + _NAME_OF_LABEL[doc.label])
    return " ".join(parts)


def load_dictionary(path) -> TranslationOracle:
    """Load a bilingual dictionary, one ``source<TAB>target`` pair per line.

    Lines without a tab fall back to single-space splitting.  The first
    occurrence of a source term wins; later duplicates are counted and ignored.

    Raises:
        ParseError: on a line with fewer (or more) than two fields.
    """
    path = Path(path)
    entries: dict[str, str] = {}
    duplicates = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            fields = line.split("\t") if "\t" in line else line.split()
            fields = [f.strip() for f in fields]
            if len(fields) != 2 or not fields[0] or not fields[1]:
                raise ParseError(path, lineno, f"expected two fields, got {len(fields)}")
            src, tgt = fields
            if src in entries:
                duplicates += 1
                continue
            entries[src] = tgt
    if duplicates:
        logger.warning("%s: ignored %d duplicate dictionary entries", path, duplicates)
    return TranslationOracle(entries=entries, duplicates=duplicates)


def load_domain_pool(language, domain, vocab, labeled=(), unlabeled=(), test=()):
    """Load a DomainPool from per-split file lists (each a sequence of paths)."""
    pool = DomainPool(language=language, domain=domain, vocabulary=vocab)
    for paths, split in ((labeled, pool.labeled), (unlabeled, pool.unlabeled), (test, pool.test)):
        for p in paths:
            split.extend(load_processed_file(p, vocab))
    for doc in pool.labeled:
        if doc.label is None:
            raise ConfigError(f"{pool.tag}: labeled split contains an unlabeled document")
    for doc in pool.test:
        if doc.label is None:
            raise ConfigError(f"{pool.tag}: test split contains an unlabeled document")
    return pool


def build_task(source: DomainPool, target: DomainPool,
               dictionary: Optional[TranslationOracle] = None,
               n_pivots: int = 0) -> TransferTask:
    """Assemble a transfer task, applying the standard pivot-count defaults.

    Passing ``n_pivots=0`` selects 1000 pivots for same-language tasks and 450
    for cross-lingual ones.  A target pool without a test split (the MDS
    layout, which has a single labeled set per domain) is viewed with its
    labeled documents as the held-out test set.

    Raises:
        ConfigError: cross-lingual task without a dictionary.
        ValueError: negative n_pivots.
    """
    if n_pivots < 0:
        raise ValueError(f"n_pivots must be >= 0, got {n_pivots}")
    cross_lingual = source.language != target.language
    if cross_lingual and dictionary is None:
        raise ConfigError(
            f"task {source.tag}->{target.tag} is cross-lingual but no dictionary was given")
    if n_pivots == 0:
        n_pivots = DEFAULT_PIVOTS_CROSS_LINGUAL if cross_lingual else DEFAULT_PIVOTS_CROSS_DOMAIN
    if not target.test and target.labeled:
        target = replace(target, labeled=[], test=list(target.labeled))
    return TransferTask(source=source, target=target, dictionary=dictionary, n_pivots=n_pivots)


def translate_document(doc: Document, oracle: TranslationOracle,
                       src_vocab: Vocabulary, tgt_vocab: Vocabulary) -> Document:
    """Map a document term-by-term into the target-language vocabulary.

    Terms without a dictionary entry, or whose translation never occurs in the
    target-side data, are dropped.  Collisions (two source terms translating to
    the same target term) merge their counts.
    """
    terms: dict[int, int] = {}
    for tid, count in doc.terms.items():
        translated = oracle.translate(src_vocab.term(tid))
        if translated is None:
            continue
        new_id = tgt_vocab.id_of(translated)
        if new_id is None:
            continue
        terms[new_id] = terms.get(new_id, 0) + count
    return Document(terms=terms, label=doc.label)
