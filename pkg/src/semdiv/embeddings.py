"""Monolingual word-embedding spaces: file parsing, unit normalization, and
exact nearest-neighbor search over the full vocabulary."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

FloatArray = NDArray[np.float64]

# Vector files are frequency-ordered, so a prefix keeps the common vocabulary
# while bounding memory and scan cost.
DEFAULT_VOCAB_LIMIT = 200_000

UNIT_NORM_TOL = 1e-6


def _clamp(value: float) -> float:
    return min(1.0, max(-1.0, float(value)))


@dataclass(frozen=True)
class NeighborHit:
    """Single ranked hit from a nearest-neighbor scan."""

    word: str
    similarity: float
    index: int


@dataclass(frozen=True, eq=False)
class EmbeddingSpace:
    """Vocabulary-to-vector table for one language, immutable once built.

    Row order follows the source file (frequency order in standard dumps).
    ``normalized`` records that every row has unit Euclidean norm, which makes
    cosine similarity a plain dot product.
    """

    language: str
    dim: int
    vocab: tuple[str, ...]
    vectors: FloatArray
    normalized: bool = False
    _exact: dict[str, int] = field(init=False, repr=False)
    _folded: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.language:
            raise ValueError("language tag must be non-empty")
        if self.dim <= 0:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        vocab = tuple(self.vocab)
        if not vocab:
            raise ValueError("vocabulary must be non-empty")
        vectors = np.array(self.vectors, dtype=np.float64)
        if vectors.shape != (len(vocab), self.dim):
            raise ValueError(
                f"vector matrix shape {vectors.shape} does not match "
                f"{len(vocab)} words x dim {self.dim}"
            )
        if not np.isfinite(vectors).all():
            raise ValueError("vectors contain non-finite components")
        if self.normalized:
            norms = np.linalg.norm(vectors, axis=1)
            worst = float(np.abs(norms - 1.0).max())
            if worst > UNIT_NORM_TOL:
                raise ValueError(
                    f"normalized space has a row with norm off by {worst:.3g}"
                )
        vectors.setflags(write=False)
        exact: dict[str, int] = {}
        folded: dict[str, int] = {}
        for i, word in enumerate(vocab):
            if word in exact:
                raise ValueError(f"duplicate vocabulary entry {word!r}")
            exact[word] = i
            folded.setdefault(word.lower(), i)
        object.__setattr__(self, "vocab", vocab)
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "_exact", exact)
        object.__setattr__(self, "_folded", folded)

    def __len__(self) -> int:
        return len(self.vocab)

    def __contains__(self, word: str) -> bool:
        return word in self._exact


def load_embeddings(
    path: str | Path,
    language: str,
    limit: int | None = DEFAULT_VOCAB_LIMIT,
) -> EmbeddingSpace:
    """Parse a text vector file: a "count dim" header line, then one token and
    ``dim`` decimals per line.

    Rows are read in file order up to ``min(count, limit)`` (``limit=None``
    reads everything); duplicate tokens after the first occurrence are dropped
    with a summary warning. Tokens are split off at the first whitespace run.
    """
    if limit is not None and limit <= 0:
        raise ValueError(f"limit must be positive, got {limit}")
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline()
        fields = header.split()
        if len(fields) != 2:
            raise ValueError(f"{path}: malformed header {header.strip()!r}, expected 'count dim'")
        try:
            count, dim = int(fields[0]), int(fields[1])
        except ValueError:
            raise ValueError(
                f"{path}: malformed header {header.strip()!r}, expected two integers"
            ) from None
        if dim <= 0:
            raise ValueError(f"{path}: dimension must be positive, got {dim}")
        if count < 0:
            raise ValueError(f"{path}: negative row count {count}")

        take = count if limit is None else min(count, limit)
        words: list[str] = []
        rows: list[FloatArray] = []
        seen: set[str] = set()
        dropped = 0
        read = 0
        for lineno, line in enumerate(fh, start=2):
            if read >= take:
                break
            read += 1
            fields = line.split()
            if len(fields) != dim + 1:
                raise ValueError(
                    f"{path} line {lineno}: expected 1 token + {dim} components, "
                    f"got {len(fields)} fields"
                )
            token = fields[0]
            try:
                values = np.array(fields[1:], dtype=np.float64)
            except ValueError:
                raise ValueError(f"{path} line {lineno}: non-numeric component") from None
            if not np.isfinite(values).all():
                raise ValueError(f"{path} line {lineno}: non-finite component")
            if token in seen:
                dropped += 1
                continue
            seen.add(token)
            words.append(token)
            rows.append(values)

    if dropped:
        warnings.warn(
            f"{path}: dropped {dropped} duplicate tokens (kept first occurrence)",
            stacklevel=2,
        )
    if not words:
        raise ValueError(f"{path}: empty vocabulary after parsing")
    return EmbeddingSpace(language, dim, tuple(words), np.vstack(rows), normalized=False)


def serialize_embeddings(space: EmbeddingSpace, path: str | Path) -> None:
    """Write a space back in vector-file format, floats at 6 significant digits."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(space.vocab)} {space.dim}\n")
        for word, row in zip(space.vocab, space.vectors):
            fh.write(word + " " + " ".join(f"{v:.6g}" for v in row) + "\n")


def normalize(space: EmbeddingSpace) -> EmbeddingSpace:
    """Scale every row to unit Euclidean norm; rejects zero rows by word."""
    if space.normalized:
        return space
    norms = np.linalg.norm(space.vectors, axis=1)
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise ValueError(f"cannot normalize zero vector for word {space.vocab[zero[0]]!r}")
    return replace(space, vectors=space.vectors / norms[:, None], normalized=True)


def lookup_index(space: EmbeddingSpace, word: str) -> int | None:
    """Row index for a word: exact match first, lowercase fallback second."""
    idx = space._exact.get(word)
    if idx is None:
        idx = space._folded.get(word.lower())
    return idx


def lookup(space: EmbeddingSpace, word: str) -> FloatArray | None:
    """Vector for a word, or None when absent (absence is a value, not an error)."""
    idx = lookup_index(space, word)
    return None if idx is None else space.vectors[idx]


def similarity_scan(
    space: EmbeddingSpace,
    query: FloatArray,
    chunk_size: int | None = None,
) -> FloatArray:
    """Dot product of every row against ``query``, in row order.

    Computed with a row-local reduction (einsum, not BLAS gemv) so each row's
    result is independent of how the scan is partitioned: any ``chunk_size``
    yields a bit-identical array.
    """
    query = np.asarray(query, dtype=np.float64)
    if query.shape != (space.dim,):
        raise ValueError(f"query shape {query.shape} does not match dim {space.dim}")
    if chunk_size is None or chunk_size >= len(space.vocab):
        return np.einsum("ij,j->i", space.vectors, query)
    if chunk_size <= 0:
        raise ValueError(f"chunk_size must be positive, got {chunk_size}")
    out = np.empty(len(space.vocab), dtype=np.float64)
    for start in range(0, len(space.vocab), chunk_size):
        stop = min(start + chunk_size, len(space.vocab))
        out[start:stop] = np.einsum("ij,j->i", space.vectors[start:stop], query)
    return out


def nearest_neighbor(
    space: EmbeddingSpace,
    query: FloatArray,
    k: int,
    chunk_size: int | None = None,
) -> list[NeighborHit]:
    """Top-k words by cosine similarity to a unit query, descending.

    Exact brute-force scan; ties resolve to the lower row index, so the result
    is deterministic regardless of internal chunking.
    """
    if not space.normalized:
        raise ValueError("nearest_neighbor requires a normalized space")
    if not 1 <= k <= len(space.vocab):
        raise ValueError(f"k={k} out of range for vocabulary of {len(space.vocab)}")
    sims = similarity_scan(space, query, chunk_size)
    order = np.argsort(-sims, kind="stable")[:k]
    return [NeighborHit(space.vocab[i], _clamp(sims[i]), int(i)) for i in order]
