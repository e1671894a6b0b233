"""Small corpus builders shared by the test modules."""

from __future__ import annotations

from dci.corpus import Document, DomainPool, Vocabulary


def make_docs(term_lists, vocab: Vocabulary, labels=None):
    """Documents from lists of term strings; repeated strings add to the count."""
    if labels is None:
        labels = [None] * len(term_lists)
    docs = []
    for terms, label in zip(term_lists, labels):
        counts: dict[int, int] = {}
        for term in terms:
            tid = vocab.intern(term)
            counts[tid] = counts.get(tid, 0) + 1
        docs.append(Document(terms=counts, label=label))
    return docs


def make_pool(labeled=(), labels=(), unlabeled=(), test=(), test_labels=(),
              language="en", domain="dom", vocab=None) -> DomainPool:
    vocab = vocab if vocab is not None else Vocabulary()
    return DomainPool(
        language=language, domain=domain, vocabulary=vocab,
        labeled=make_docs(labeled, vocab, list(labels)),
        unlabeled=make_docs(unlabeled, vocab),
        test=make_docs(test, vocab, list(test_labels)))


def random_term_sets(rng, n_docs: int, vocab_size: int, density: float = 0.3):
    """Random binary documents as term-string lists plus their string universe."""
    terms = [f"t{i}" for i in range(vocab_size)]
    docs = []
    for _ in range(n_docs):
        mask = rng.random(vocab_size) < density
        docs.append([terms[i] for i in range(vocab_size) if mask[i]])
    return docs, terms
