# Distributional correspondence on a corpus small enough to check by hand.
#
# Six short "reviews" mention either food or service words together with a
# positive or negative polarity word.  The DCF of a term against a pivot asks:
# does this term co-occur with the pivot more than chance would predict?
# Terms that ride along with "good" get positive scores against it, terms
# that avoid it go negative, and terms that ignore it sit near zero.

import numpy as np

from dci.corpus import Document, Vocabulary
from dci.dcf import build_correspondence_matrix, dcf_cosine, dcf_linear
from dci.vectorize import index_documents

RAW_DOCS = [
    ["good", "tasty", "pasta"],
    ["good", "tasty", "soup"],
    ["good", "friendly", "staff"],
    ["bad", "rude", "staff"],
    ["bad", "bland", "pasta"],
    ["bad", "slow", "service"],
]


def main() -> None:
    vocab = Vocabulary()
    docs = [Document(terms={vocab.intern(t): 1 for t in words})
            for words in RAW_DOCS]
    index = index_documents(docs, len(vocab))

    pivots = [vocab.id_of("good"), vocab.id_of("bad")]
    probes = ["tasty", "rude", "staff", "pasta"]

    print(f"{len(docs)} documents, {len(vocab)} distinct terms")
    print()
    print(f"{'term':>8} {'linear(good)':>13} {'linear(bad)':>12} "
          f"{'cosine(good)':>13} {'cosine(bad)':>12}")
    for name in probes:
        f = vocab.id_of(name)
        row = [dcf_linear(index, f, p) for p in pivots]
        row += [dcf_cosine(index, f, p) for p in pivots]
        print(f"{name:>8} " + " ".join(f"{v:>12.4f}" for v in row))

    # "tasty" appears in 2 of the 3 "good" documents and in none of the
    # others, so linear gives P(tasty|good) - P(tasty|not good) = 2/3 - 0
    # against that pivot and the mirror image against "bad".  "staff" and
    # "pasta" appear once with each polarity word, so the two conditional
    # probabilities cancel exactly and both DCFs are 0.

    # Stacking every term's scores against every pivot gives the
    # correspondence matrix that documents are projected through.  Rows are
    # L2-normalized, so each term becomes a unit direction in pivot space
    # and terms with no correspondence signal stay at the origin.
    matrix = build_correspondence_matrix(index, pivots, "linear",
                                         standardize=False)
    print()
    print("linear correspondence matrix (rows = terms, columns = good/bad):")
    for name in probes:
        row = matrix[vocab.id_of(name)]
        print(f"{name:>8} [{row[0]:+.4f} {row[1]:+.4f}]  "
              f"norm={np.linalg.norm(row):.3f}")


if __name__ == "__main__":
    main()
