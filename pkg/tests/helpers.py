"""Shared builders: synthetic spaces, orthogonal maps, and a fully planted
three-language toy corpus with exactly known similarities."""

from __future__ import annotations

import json
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from semdiv.embeddings import EmbeddingSpace


# published cross-language cognate similarity means for the Romance demo
ROMANCE_LABELS = ("es", "fr", "it", "pt", "ro", "la")
ROMANCE_SIMILARITY = np.array(
    [
        [1.00, 0.67, 0.69, 0.70, 0.58, 0.41],
        [0.67, 1.00, 0.66, 0.64, 0.56, 0.40],
        [0.69, 0.66, 1.00, 0.66, 0.57, 0.41],
        [0.70, 0.64, 0.66, 1.00, 0.57, 0.41],
        [0.58, 0.56, 0.57, 0.57, 1.00, 0.40],
        [0.41, 0.40, 0.41, 0.41, 0.40, 1.00],
    ]
)


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q * np.sign(np.diag(r))


def oracle_false_friend(word1, word2, space1, space2):
    """Independent scan for the detector: per-candidate dot products, argmax
    with the same tie rules (lowest index; a clamped-similarity tie with word2
    resolves to word2). Returns (verdict, correction, falseness)."""
    clamp = lambda x: min(1.0, max(-1.0, x))
    v1 = space1.vectors[space1.vocab.index(word1)]
    best_idx = None
    best_sim = None
    for i in range(len(space2.vocab)):
        sim = float(np.dot(space2.vectors[i], v1))
        if best_sim is None or sim > best_sim:
            best_idx, best_sim = i, sim
    c2_idx = space2.vocab.index(word2)
    c2_sim = clamp(float(np.dot(space2.vectors[c2_idx], v1)))
    best_sim = clamp(best_sim)
    if best_idx == c2_idx or best_sim == c2_sim:
        return False, None, 0.0
    return True, space2.vocab[best_idx], best_sim - c2_sim


def unit_rows(n: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    m = rng.normal(size=(n, dim))
    return m / np.linalg.norm(m, axis=1, keepdims=True)


def space_of(language, words, rows, normalized=False) -> EmbeddingSpace:
    rows = np.asarray(rows, dtype=np.float64)
    return EmbeddingSpace(language, rows.shape[1], tuple(words), rows, normalized)


def write_vec(path, words, rows) -> None:
    rows = np.asarray(rows, dtype=np.float64)
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(f"{len(words)} {rows.shape[1]}\n")
        for word, row in zip(words, rows):
            fh.write(word + " " + " ".join(f"{v:.17g}" for v in row) + "\n")


def write_matrix(path, matrix) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for row in np.asarray(matrix, dtype=np.float64):
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def hadamard8() -> np.ndarray:
    h2 = np.array([[1.0, 1.0], [1.0, -1.0]])
    return np.kron(h2, np.kron(h2, h2))


def signed_shift(dim: int, shift: int, signs) -> np.ndarray:
    m = np.zeros((dim, dim))
    for i in range(dim):
        m[i, (i + shift) % dim] = signs[i]
    return m


def build_toy_project(root: Path) -> SimpleNamespace:
    """Languages aa (pivot), bb, cc with planted cognate similarities.

    Content vectors are defined in pivot coordinates; bb and cc files store
    them rotated by exact signed permutations, so loading + aligning recovers
    the planted dot products. Shared anchor words (a spread-out orthonormal
    basis) give every pair of spaces an exactly solvable seed dictionary while
    staying at cosine 1/sqrt(8) from every content direction. Every cognate of
    aa finds its own counterpart as nearest bb/cc word except rock/fels, the
    engineered false friend (bb's "stein" sits at 0.9 while "fels" sits at
    0.2, falseness 0.7).
    """
    dim = 8
    e = np.eye(dim)
    anchors = hadamard8() / np.sqrt(8.0)
    anchor_names = [f"anchor{i}" for i in range(dim)]

    aa_words = ["sun", "moon", "tree", "rock"] + anchor_names
    aa_rows = np.vstack([e[0], e[1], e[2], e[3], anchors])

    bb_pivot = {
        "sonne": e[0],
        "mond": 0.5 * e[1] + np.sqrt(0.75) * e[4],
        "baum": e[2],
        "fels": 0.2 * e[3] + np.sqrt(0.96) * e[4],
        "stein": 0.9 * e[3] + np.sqrt(0.19) * e[5],
    }
    cc_pivot = {
        "sol": e[0],
        "luna": 0.8 * e[1] + 0.6 * e[5],
        "arbol": 0.6 * e[2] + 0.8 * e[4],
        "roca": e[3],
    }
    r_b = signed_shift(dim, 3, [1, -1, 1, 1, -1, 1, 1, 1])
    r_c = signed_shift(dim, 5, [1, 1, -1, 1, 1, 1, -1, 1])

    write_vec(root / "aa.vec", aa_words, aa_rows)
    for lang, pivot_vectors, rotation in [("bb", bb_pivot, r_b), ("cc", cc_pivot, r_c)]:
        words = list(pivot_vectors) + anchor_names
        rows = np.vstack([np.vstack(list(pivot_vectors.values())), anchors]) @ rotation
        write_vec(root / f"{lang}.vec", words, rows)
    write_matrix(root / "bb_to_aa.txt", r_b.T)
    write_matrix(root / "cc_to_aa.txt", r_c.T)

    seed_lines = "".join(f"{name}\t{name}\n" for name in anchor_names)
    (root / "seeds_bb_aa.tsv").write_text(seed_lines, encoding="utf-8")
    (root / "seeds_cc_aa.tsv").write_text(seed_lines, encoding="utf-8")

    (root / "cognates.tsv").write_text(
        "etymon\taa\tbb\tcc\n"
        "sol_\tsun\tsonne\tsol\n"
        "luna_\tmoon\tmond\tluna\n"
        "arbor\ttree\tbaum\tarbol\n"
        "petra\trock\tfels\troca\n",
        encoding="utf-8",
    )

    def write_config(name: str, alignments: dict) -> Path:
        path = root / name
        path.write_text(
            json.dumps(
                {
                    "languages": ["aa", "bb", "cc"],
                    "pivot": "aa",
                    "embeddings": {"aa": "aa.vec", "bb": "bb.vec", "cc": "cc.vec"},
                    "alignments": alignments,
                    "cognates": "cognates.tsv",
                    "out": "out",
                },
                indent=2,
            ),
            encoding="utf-8",
        )
        return path

    config = write_config(
        "config.json",
        {"bb": {"matrix": "bb_to_aa.txt"}, "cc": {"matrix": "cc_to_aa.txt"}},
    )
    config_seeds = write_config(
        "config_seeds.json",
        {"bb": {"seeds": "seeds_bb_aa.tsv"}, "cc": {"seeds": "seeds_cc_aa.tsv"}},
    )

    return SimpleNamespace(
        root=root,
        config=config,
        config_seeds=config_seeds,
        out=root / "out",
        rotations={"bb": r_b, "cc": r_c},
        expected_means={("aa", "bb"): 0.675, ("aa", "cc"): 0.85, ("bb", "cc"): 0.55},
        expected_false_friend=("rock", "fels", "stein", 0.7),
    )


def build_eval_project(root: Path) -> SimpleNamespace:
    """Two identity-aligned languages engineered so the detector's verdicts
    against the gold list land on confusion counts (tp, tn, fp, fn) =
    (3, 4, 1, 2): axes 0, 1, 2, 7 carry a planted distractor at 0.9 that beats
    the cognate at 0.3, the rest pair each word with its own unit vector."""
    dim = 12
    e = np.eye(dim)
    ff_axes = {0, 1, 2, 7}

    xx_words = [f"p{i}" for i in range(10)]
    xx_rows = e[:10]
    yy_words = []
    yy_rows = []
    for i in range(10):
        yy_words.append(f"q{i}")
        if i in ff_axes:
            yy_rows.append(0.3 * e[i] + np.sqrt(0.91) * e[11])
        else:
            yy_rows.append(e[i])
    for i in sorted(ff_axes):
        yy_words.append(f"d{i}")
        yy_rows.append(0.9 * e[i] + np.sqrt(0.19) * e[10])

    write_vec(root / "xx.vec", xx_words, xx_rows)
    write_vec(root / "yy.vec", yy_words, yy_rows)
    write_matrix(root / "yy_to_xx.txt", np.eye(dim))

    gold_ff = {0, 1, 2, 8, 9}  # predicted FF on 0,1,2 (tp) and 7 (fp); missed on 8,9 (fn)
    (root / "gold.tsv").write_text(
        "".join(
            f"p{i}\tq{i}\t{'FF' if i in gold_ff else 'TC'}\n" for i in range(10)
        ),
        encoding="utf-8",
    )

    config = root / "config.json"
    config.write_text(
        json.dumps(
            {
                "languages": ["xx", "yy"],
                "pivot": "xx",
                "embeddings": {"xx": "xx.vec", "yy": "yy.vec"},
                "alignments": {"yy": {"matrix": "yy_to_xx.txt"}},
                "out": "out",
            },
            indent=2,
        ),
        encoding="utf-8",
    )
    return SimpleNamespace(
        root=root, config=config, out=root / "out", gold=root / "gold.tsv"
    )
