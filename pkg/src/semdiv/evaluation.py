"""Scoring of false-friend predictions against gold standards: curated pair
lists and synonym-set co-membership labels."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .falsefriends import FalseFriendReport

FALSE_FRIEND = "false_friend"
TRUE_COGNATE = "true_cognate"

_LABEL_TOKENS = {"FF": FALSE_FRIEND, "TC": TRUE_COGNATE}


@dataclass(frozen=True)
class GoldPair:
    word1: str
    word2: str
    lang1: str
    lang2: str
    label: str

    def __post_init__(self) -> None:
        if self.label not in (FALSE_FRIEND, TRUE_COGNATE):
            raise ValueError(f"unknown gold label {self.label!r}")


@dataclass(frozen=True)
class SynsetTable:
    """Synonym sets whose members are exact (language, word) entries."""

    synsets: tuple[frozenset[tuple[str, str]], ...]

    def __post_init__(self) -> None:
        for i, synset in enumerate(self.synsets):
            if not synset:
                raise ValueError(f"synset {i} is empty")


@dataclass(frozen=True)
class EvalResult:
    """Confusion counts and derived metrics; the positive class is
    "false friend". Precision/recall are absent when their denominator is 0."""

    tp: int
    tn: int
    fp: int
    fn: int
    accuracy: float
    precision: float | None
    recall: float | None
    evaluated_count: int
    excluded_count: int


def load_gold_pairs(path: str | Path, lang1: str, lang2: str) -> list[GoldPair]:
    """Read a gold TSV with columns word1, word2, label (FF or TC).

    Duplicate pairs are rejected with the offending line number.
    """
    path = Path(path)
    pairs: list[GoldPair] = []
    seen: dict[tuple[str, str], int] = {}
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            fields = stripped.split("\t")
            if len(fields) != 3:
                raise ValueError(f"{path} line {lineno}: expected 3 columns, got {len(fields)}")
            word1, word2, token = fields
            if token not in _LABEL_TOKENS:
                raise ValueError(
                    f"{path} line {lineno}: unknown label {token!r} (expected FF or TC)"
                )
            key = (word1, word2)
            if key in seen:
                raise ValueError(
                    f"{path} line {lineno}: duplicate pair {word1!r}/{word2!r} "
                    f"(first seen on line {seen[key]})"
                )
            seen[key] = lineno
            pairs.append(GoldPair(word1, word2, lang1, lang2, _LABEL_TOKENS[token]))
    if not pairs:
        raise ValueError(f"{path}: no gold pairs found")
    return pairs


def load_synsets(path: str | Path) -> SynsetTable:
    """Read a synset flat file: one synset per line, members as space-separated
    "lang:word" tokens."""
    path = Path(path)
    synsets: list[frozenset[tuple[str, str]]] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            members = []
            for token in stripped.split():
                lang, sep, word = token.partition(":")
                if not sep or not lang or not word:
                    raise ValueError(
                        f"{path} line {lineno}: malformed member {token!r} "
                        "(expected lang:word)"
                    )
                members.append((lang, word))
            synsets.append(frozenset(members))
    if not synsets:
        raise ValueError(f"{path}: no synsets found")
    return SynsetTable(tuple(synsets))


def gold_from_synsets(
    table: SynsetTable,
    pairs: Sequence[tuple[str, str]],
    lang1: str,
    lang2: str,
) -> tuple[list[GoldPair], list[tuple[str, str]]]:
    """Label pairs by synset co-membership: true cognates share a synset, false
    friends appear in the table but never together, and pairs with a word that
    appears in no synset are excluded."""
    member_ids: dict[tuple[str, str], set[int]] = {}
    for i, synset in enumerate(table.synsets):
        for member in synset:
            member_ids.setdefault(member, set()).add(i)

    gold: list[GoldPair] = []
    excluded: list[tuple[str, str]] = []
    for word1, word2 in pairs:
        ids1 = member_ids.get((lang1, word1))
        ids2 = member_ids.get((lang2, word2))
        if ids1 is None or ids2 is None:
            excluded.append((word1, word2))
            continue
        label = TRUE_COGNATE if ids1 & ids2 else FALSE_FRIEND
        gold.append(GoldPair(word1, word2, lang1, lang2, label))
    return gold, excluded


def evaluate(
    predictions: Sequence[FalseFriendReport], gold: Sequence[GoldPair]
) -> EvalResult:
    """Confusion counts of predicted verdicts against gold labels.

    Every prediction must correspond to a gold pair; gold pairs with no
    prediction are excluded from the counts and reported.
    """
    gold_by_key = {(g.word1, g.word2): g for g in gold}
    pred_by_key: dict[tuple[str, str], FalseFriendReport] = {}
    for report in predictions:
        key = (report.word1, report.word2)
        if key not in gold_by_key:
            raise ValueError(
                f"prediction/gold mismatch: no gold label for pair {key[0]!r}/{key[1]!r}"
            )
        if key in pred_by_key:
            raise ValueError(f"duplicate prediction for pair {key[0]!r}/{key[1]!r}")
        pred_by_key[key] = report

    tp = tn = fp = fn = 0
    excluded = 0
    for key, gold_pair in gold_by_key.items():
        report = pred_by_key.get(key)
        if report is None:
            excluded += 1
            continue
        gold_positive = gold_pair.label == FALSE_FRIEND
        predicted_positive = report.is_false_friend
        if gold_positive and predicted_positive:
            tp += 1
        elif gold_positive:
            fn += 1
        elif predicted_positive:
            fp += 1
        else:
            tn += 1

    evaluated = tp + tn + fp + fn
    if evaluated == 0:
        raise ValueError("no evaluable pairs (every gold pair lacked a prediction)")
    accuracy = (tp + tn) / evaluated
    precision = tp / (tp + fp) if (tp + fp) else None
    recall = tp / (tp + fn) if (tp + fn) else None
    return EvalResult(tp, tn, fp, fn, accuracy, precision, recall, evaluated, excluded)


def as_percent(value: float | None) -> str:
    """Metric rendered as a 2-decimal percentage; '-' when undefined."""
    return "-" if value is None else f"{100.0 * value:.2f}"


def format_eval_table(rows: Sequence[tuple[str, EvalResult]]) -> str:
    """Aligned text table with columns pair, Accuracy, Precision, Recall."""
    header = ("pair", "Accuracy", "Precision", "Recall")
    body = [
        (name, as_percent(r.accuracy), as_percent(r.precision), as_percent(r.recall))
        for name, r in rows
    ]
    widths = [max(len(row[i]) for row in [header, *body]) for i in range(4)]
    lines = []
    for row in [header, *body]:
        cells = [row[0].ljust(widths[0])] + [
            row[i].rjust(widths[i]) for i in range(1, 4)
        ]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def eval_to_json(result: EvalResult, path: str | Path, **extra) -> None:
    payload = {
        "tp": result.tp,
        "tn": result.tn,
        "fp": result.fp,
        "fn": result.fn,
        "accuracy": result.accuracy,
        "precision": result.precision,
        "recall": result.recall,
        "accuracy_pct": as_percent(result.accuracy),
        "precision_pct": as_percent(result.precision),
        "recall_pct": as_percent(result.recall),
        "evaluated_count": result.evaluated_count,
        "excluded_count": result.excluded_count,
    }
    payload.update(extra)
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
