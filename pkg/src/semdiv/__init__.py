"""Toolkit for aligning monolingual word-embedding spaces, measuring the
semantic divergence of cognate pairs across languages, clustering languages by
divergence, and detecting, grading, and correcting false friends."""

from .alignment import (
    AlignmentMap,
    SeedLexicon,
    apply_alignment,
    identity_alignment,
    learn_alignment,
    load_alignment_matrix,
    load_seed_lexicon,
    shared_space_pair,
)
from .clustering import (
    DendrogramNode,
    DistanceMatrix,
    MergeStep,
    to_distance,
    to_newick,
    upgma,
    upgma_steps,
)
from .divergence import (
    CognatePairScore,
    CognateSet,
    Histogram,
    LanguagePairSummary,
    OovSkip,
    SimilarityMatrix,
    cosine_similarity,
    extreme_pairs,
    histogram,
    language_pair_divergence,
    load_cognate_sets,
    score_pair,
    similarity_matrix,
)
from .embeddings import (
    DEFAULT_VOCAB_LIMIT,
    EmbeddingSpace,
    NeighborHit,
    load_embeddings,
    lookup,
    lookup_index,
    nearest_neighbor,
    normalize,
    serialize_embeddings,
)
from .evaluation import (
    EvalResult,
    GoldPair,
    SynsetTable,
    evaluate,
    gold_from_synsets,
    load_gold_pairs,
    load_synsets,
)
from .falsefriends import (
    DEFAULT_THRESHOLD,
    Falseness,
    FalseFriendBatch,
    FalseFriendReport,
    FalsenessClass,
    classify,
    detect,
    detect_batch,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentMap",
    "CognatePairScore",
    "CognateSet",
    "DEFAULT_THRESHOLD",
    "DEFAULT_VOCAB_LIMIT",
    "DendrogramNode",
    "DistanceMatrix",
    "EmbeddingSpace",
    "EvalResult",
    "FalseFriendBatch",
    "FalseFriendReport",
    "Falseness",
    "FalsenessClass",
    "GoldPair",
    "Histogram",
    "LanguagePairSummary",
    "MergeStep",
    "NeighborHit",
    "OovSkip",
    "SeedLexicon",
    "SimilarityMatrix",
    "SynsetTable",
    "apply_alignment",
    "classify",
    "cosine_similarity",
    "detect",
    "detect_batch",
    "evaluate",
    "extreme_pairs",
    "gold_from_synsets",
    "histogram",
    "identity_alignment",
    "language_pair_divergence",
    "learn_alignment",
    "load_alignment_matrix",
    "load_cognate_sets",
    "load_embeddings",
    "load_gold_pairs",
    "load_seed_lexicon",
    "load_synsets",
    "lookup",
    "lookup_index",
    "nearest_neighbor",
    "normalize",
    "score_pair",
    "serialize_embeddings",
    "shared_space_pair",
    "similarity_matrix",
    "to_distance",
    "to_newick",
    "upgma",
    "upgma_steps",
]
