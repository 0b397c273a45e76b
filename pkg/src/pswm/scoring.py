"""First-level analysis: syntactic candidates and their feature scores.

Candidates are the documents sharing at least one token with the query
(OR semantics over the syntax-tree leaves). Each candidate gets two scores
in [0, 1] that together form the probability network's input vector:

  syntactic -- fraction of distinct query tokens present in the body
  semantic  -- Jaccard overlap between the query tokens and the document's
               metadata tags (keywords plus concept tags whose weight is at
               least ``CONCEPT_WEIGHT_THRESHOLD``)
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Document, InvertedIndex, MetaRecord
from .query import QuerySyntaxTree, tokenize

# Concept tags at or above this weight count as metadata tags for matching.
CONCEPT_WEIGHT_THRESHOLD = 0.5


@dataclass
class CandidateFeatures:
    doc_id: str
    syntactic: float
    semantic: float


def syntactic_candidates(tree: QuerySyntaxTree, index: InvertedIndex) -> set[str]:
    """Ids of documents whose body contains at least one query token."""
    found: set[str] = set()
    for token in set(tree.leaves):
        for doc_id, _tf in index.postings.get(token, []):
            found.add(doc_id)
    return found


def syntactic_score(tree: QuerySyntaxTree, doc: Document) -> float:
    """Fraction of distinct query tokens that occur in the document body."""
    wanted = set(tree.leaves)
    if not wanted:
        return 0.0
    matched = wanted & set(tokenize(doc.body))
    return len(matched) / len(wanted)


def _meta_tags(meta: MetaRecord) -> set[str]:
    tags = set(meta.keywords)
    for tag, weight in meta.concepts.items():
        if weight >= CONCEPT_WEIGHT_THRESHOLD:
            tags.add(tag)
    return tags


def semantic_score(tree: QuerySyntaxTree, meta: MetaRecord) -> float:
    """Jaccard overlap between query tokens and metadata tags (0 when both empty)."""
    q = set(tree.leaves)
    k = _meta_tags(meta)
    union = q | k
    if not union:
        return 0.0
    return len(q & k) / len(union)


def analyze(tree: QuerySyntaxTree, index: InvertedIndex) -> list[CandidateFeatures]:
    """Score every syntactic candidate, in ascending doc-id order.

    Zero-semantic candidates are kept; rejection is the probability stage's
    job, not this one's.
    """
    out: list[CandidateFeatures] = []
    for doc_id in sorted(syntactic_candidates(tree, index)):
        doc = index.docs[doc_id]
        out.append(
            CandidateFeatures(
                doc_id=doc_id,
                syntactic=syntactic_score(tree, doc),
                semantic=semantic_score(tree, doc.meta),
            )
        )
    return out
