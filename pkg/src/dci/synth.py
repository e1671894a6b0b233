"""Seeded generator of two-domain sentiment corpora with a controllable shift.

Three term families drive the construction.  Shared polar terms occur in both
domains and lean moderately toward one label, so they survive support
filtering on both sides and become pivots.  Domain-specific polar terms are
strongly predictive but disjoint between domains, which is exactly the
adaptation gap: a classifier trained on raw source features leans on terms
the target never shows it.  Neutral terms are label-independent noise shared
by both domains.  Documents are presence vectors (every count is 1) with
balanced labels; unlabeled documents are sampled from the same latent labels.

With ``cross_lingual=True`` the target side uses distinct surface forms and
the task carries a dictionary covering the shared families, so the same
construction exercises the translated pivot path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import (NEGATIVE, POSITIVE, Document, DomainPool, TranslationOracle,
                     TransferTask, Vocabulary, build_task)
from .errors import ConfigError


@dataclass
class SyntheticSpec:
    """Term-family sizes and per-document occurrence probabilities."""

    n_shared_polar: int = 24
    n_specific_polar: int = 24
    n_neutral: int = 60
    p_shared_match: float = 0.30
    p_shared_other: float = 0.10
    p_specific_match: float = 0.75
    p_specific_other: float = 0.05
    p_neutral: float = 0.20

    def validate(self) -> None:
        if self.n_shared_polar <= 0:
            raise ConfigError(
                "synthetic spec has no shared polar terms; nothing can serve as a pivot")
        if self.n_specific_polar < 0 or self.n_neutral < 0:
            raise ConfigError("synthetic term-family sizes must be non-negative")
        for name in ("p_shared_match", "p_shared_other", "p_specific_match",
                     "p_specific_other", "p_neutral"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"synthetic probability {name}={p} outside [0, 1]")


def _polar_family(prefix: str, size: int) -> list[tuple[str, int]]:
    # even positions lean positive, odd lean negative; balanced for even sizes
    return [(f"{prefix}{i}", POSITIVE if i % 2 == 0 else NEGATIVE)
            for i in range(size)]


def _sample_document(rng, vocab: Vocabulary, latent: int, polar_terms,
                     neutral_terms, spec: SyntheticSpec, stored_label) -> Document:
    terms: dict[int, int] = {}
    for surface, orientation, p_match, p_other in polar_terms:
        p = p_match if orientation == latent else p_other
        if rng.random() < p:
            terms[vocab.intern(surface)] = 1
    for surface in neutral_terms:
        if rng.random() < spec.p_neutral:
            terms[vocab.intern(surface)] = 1
    return Document(terms=terms, label=stored_label)


def _sample_split(rng, vocab, n_docs, polar_terms, neutral_terms, spec,
                  keep_labels: bool) -> list[Document]:
    docs = []
    for i in range(n_docs):
        latent = POSITIVE if i % 2 == 0 else NEGATIVE
        docs.append(_sample_document(rng, vocab, latent, polar_terms,
                                     neutral_terms, spec,
                                     latent if keep_labels else None))
    return docs


def make_synthetic_task(seed: int, n_docs_per_split: int = 60,
                        spec: SyntheticSpec | None = None,
                        cross_lingual: bool = False,
                        with_dictionary: bool = True,
                        n_pivots: int = 0) -> TransferTask:
    """Generate a deterministic transfer task from a seed.

    Each domain gets a labeled, an unlabeled and a test split of
    ``n_docs_per_split`` documents.  ``with_dictionary=False`` (cross-lingual
    only) attaches an empty dictionary, producing a task with no usable shared
    features; useful as a no-bridge control.
    """
    spec = spec if spec is not None else SyntheticSpec()
    spec.validate()
    if n_docs_per_split < 1:
        raise ConfigError(f"n_docs_per_split must be positive, got {n_docs_per_split}")

    shared = _polar_family("sh", spec.n_shared_polar)
    neutral = [f"nt{i}" for i in range(spec.n_neutral)]
    specific = {k: _polar_family(f"d{k}sp", spec.n_specific_polar) for k in (0, 1)}

    def surfaces(side: int):
        if cross_lingual and side == 1:
            return ([(f"t_{s}", o) for s, o in shared],
                    [f"t_{s}" for s in neutral],
                    [(f"t_{s}", o) for s, o in specific[1]])
        return shared, neutral, specific[side]

    src_vocab = Vocabulary()
    tgt_vocab = Vocabulary() if cross_lingual else src_vocab
    rng = np.random.default_rng(seed)
    pools = []
    for side, language, vocab in ((0, "en", src_vocab),
                                  (1, "xx" if cross_lingual else "en", tgt_vocab)):
        side_shared, side_neutral, side_specific = surfaces(side)
        # intern in a fixed order so term ids never depend on sampling
        for surface, _ in side_shared + side_specific:
            vocab.intern(surface)
        for surface in side_neutral:
            vocab.intern(surface)
        polar = ([(s, o, spec.p_shared_match, spec.p_shared_other) for s, o in side_shared]
                 + [(s, o, spec.p_specific_match, spec.p_specific_other)
                    for s, o in side_specific])
        pool = DomainPool(
            language=language, domain=f"d{side}s{seed}", vocabulary=vocab,
            labeled=_sample_split(rng, vocab, n_docs_per_split, polar, side_neutral,
                                  spec, keep_labels=True),
            unlabeled=_sample_split(rng, vocab, n_docs_per_split, polar, side_neutral,
                                    spec, keep_labels=False),
            test=_sample_split(rng, vocab, n_docs_per_split, polar, side_neutral,
                               spec, keep_labels=True))
        pools.append(pool)

    dictionary = None
    if cross_lingual:
        if with_dictionary:
            entries = {s: f"t_{s}" for s, _ in shared}
            entries.update({s: f"t_{s}" for s in neutral})
            dictionary = TranslationOracle(entries=entries)
        else:
            dictionary = TranslationOracle(entries={})
    return build_task(pools[0], pools[1], dictionary=dictionary, n_pivots=n_pivots)
