"""False-friend detection over cognate pairs in a shared embedding space.

A cognate pair (c1, c2) is a false friend when some word in the second
language sits closer to c1 than c2 does; that nearest word is the suggested
correction, and the similarity gap is the degree of falseness.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .divergence import CognateSet
from .embeddings import (
    EmbeddingSpace,
    NeighborHit,
    _clamp,
    lookup,
    lookup_index,
    similarity_scan,
)


class Falseness(Enum):
    HARD = "hard"
    SOFT = "soft"
    TRUE_COGNATE = "true_cognate"


# Default split between fully divergent meanings and connotation shifts.
DEFAULT_THRESHOLD = 0.3


@dataclass(frozen=True)
class FalseFriendReport:
    """Verdict for one cognate pair: whether the best in-language-2 match for
    word1 is a different word than word2, and by how much."""

    lang1: str
    lang2: str
    word1: str
    word2: str
    is_false_friend: bool
    correction: str | None
    falseness: float
    cognate_similarity: float
    best_similarity: float
    alternates: tuple[NeighborHit, ...] = ()

    def __post_init__(self) -> None:
        if self.falseness < 0.0:
            raise ValueError(f"falseness must be non-negative, got {self.falseness}")
        if self.is_false_friend != (self.correction is not None):
            raise ValueError("correction must be present exactly for false friends")
        if self.is_false_friend != (self.falseness > 0.0):
            raise ValueError("falseness must be positive exactly for false friends")


@dataclass(frozen=True)
class FalsenessClass:
    kind: Falseness
    threshold: float


@dataclass(frozen=True)
class FalseFriendBatch:
    results: tuple[tuple[FalseFriendReport, FalsenessClass], ...]
    skipped_oov_count: int


def detect(
    word1: str,
    word2: str,
    space1: EmbeddingSpace,
    space2: EmbeddingSpace,
    search_k: int = 1,
) -> FalseFriendReport:
    """Scan the full second-language vocabulary for the word closest to word1.

    word2 is always among the candidates; an exact similarity tie between
    word2 and the scan winner resolves to word2 (prefer "not a false friend"),
    and other ties resolve to the lower row index. With ``search_k`` > 1 the
    report carries the top hits as alternates.
    """
    if search_k < 1:
        raise ValueError(f"search_k must be >= 1, got {search_k}")
    if not (space1.normalized and space2.normalized):
        raise ValueError("detect requires normalized shared spaces")
    v1 = lookup(space1, word1)
    if v1 is None:
        raise ValueError(f"word {word1!r} not in {space1.language!r} vocabulary")
    c2_idx = lookup_index(space2, word2)
    if c2_idx is None:
        raise ValueError(f"word {word2!r} not in {space2.language!r} vocabulary")

    sims = similarity_scan(space2, v1)
    best_idx = int(np.argmax(sims))  # first occurrence wins ties
    best_sim = _clamp(sims[best_idx])
    c2_sim = _clamp(sims[c2_idx])

    alternates: tuple[NeighborHit, ...] = ()
    if search_k > 1:
        order = np.argsort(-sims, kind="stable")[: min(search_k, len(sims))]
        alternates = tuple(
            NeighborHit(space2.vocab[i], _clamp(sims[i]), int(i)) for i in order
        )

    if best_idx == c2_idx or best_sim == c2_sim:
        return FalseFriendReport(
            space1.language,
            space2.language,
            word1,
            word2,
            is_false_friend=False,
            correction=None,
            falseness=0.0,
            cognate_similarity=c2_sim,
            best_similarity=c2_sim,
            alternates=alternates,
        )
    return FalseFriendReport(
        space1.language,
        space2.language,
        word1,
        word2,
        is_false_friend=True,
        correction=space2.vocab[best_idx],
        falseness=best_sim - c2_sim,
        cognate_similarity=c2_sim,
        best_similarity=best_sim,
        alternates=alternates,
    )


def classify(report: FalseFriendReport, threshold: float = DEFAULT_THRESHOLD) -> FalsenessClass:
    """Grade a report: hard at or above the threshold, soft below it, true
    cognate at zero falseness."""
    if threshold <= 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    if report.falseness == 0.0:
        kind = Falseness.TRUE_COGNATE
    elif report.falseness >= threshold:
        kind = Falseness.HARD
    else:
        kind = Falseness.SOFT
    return FalsenessClass(kind, threshold)


def detect_batch(
    cognates: Sequence[CognateSet],
    lang1: str,
    lang2: str,
    spaces: Mapping[str, EmbeddingSpace],
    threshold: float = DEFAULT_THRESHOLD,
    search_k: int = 1,
) -> FalseFriendBatch:
    """One classified report per scorable cognate pair, sorted by descending
    falseness (stable: ties keep input order). OOV pairs are skipped and
    counted."""
    for lang in (lang1, lang2):
        if lang not in spaces:
            raise ValueError(f"no embedding space for language {lang!r}")
    space1, space2 = spaces[lang1], spaces[lang2]
    results: list[tuple[FalseFriendReport, FalsenessClass]] = []
    skipped = 0
    for cset in cognates:
        w1 = cset.form(lang1)
        w2 = cset.form(lang2)
        if w1 is None or w2 is None:
            continue
        if lookup_index(space1, w1) is None or lookup_index(space2, w2) is None:
            skipped += 1
            continue
        report = detect(w1, w2, space1, space2, search_k=search_k)
        results.append((report, classify(report, threshold)))
    if not results:
        warnings.warn(f"no scorable cognate pairs for {lang1}-{lang2}", stacklevel=2)
    results.sort(key=lambda item: -item[0].falseness)
    return FalseFriendBatch(tuple(results), skipped)


def class_counts(batch: FalseFriendBatch) -> dict[str, int]:
    counts = {kind.value: 0 for kind in Falseness}
    for _, cls in batch.results:
        counts[cls.kind.value] += 1
    return counts


def write_report_tsv(batch: FalseFriendBatch, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("word1\tword2\tis_false_friend\tcorrection\tfalseness\tclass\n")
        for report, cls in batch.results:
            fh.write(
                f"{report.word1}\t{report.word2}\t"
                f"{'true' if report.is_false_friend else 'false'}\t"
                f"{report.correction or ''}\t{report.falseness:.6g}\t{cls.kind.value}\n"
            )


def write_report_json(batch: FalseFriendBatch, path: str | Path) -> None:
    reports = [
        {
            "word1": report.word1,
            "word2": report.word2,
            "is_false_friend": report.is_false_friend,
            "correction": report.correction,
            "falseness": report.falseness,
            "cognate_similarity": report.cognate_similarity,
            "best_similarity": report.best_similarity,
            "class": cls.kind.value,
        }
        for report, cls in batch.results
    ]
    payload = {
        "class_counts": class_counts(batch),
        "skipped_oov_count": batch.skipped_oov_count,
        "reports": reports,
    }
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
