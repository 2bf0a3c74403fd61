import pytest
from hypothesis import given
from hypothesis import strategies as st

from semdiv.evaluation import (
    FALSE_FRIEND,
    TRUE_COGNATE,
    GoldPair,
    SynsetTable,
    as_percent,
    evaluate,
    format_eval_table,
    gold_from_synsets,
    load_gold_pairs,
    load_synsets,
)
from semdiv.falsefriends import FalseFriendReport


def prediction(word1, word2, is_ff):
    return FalseFriendReport(
        "es", "pt", word1, word2,
        is_false_friend=is_ff,
        correction="fix" if is_ff else None,
        falseness=0.4 if is_ff else 0.0,
        cognate_similarity=0.2,
        best_similarity=0.6 if is_ff else 0.2,
    )


def gold(word1, word2, label):
    return GoldPair(word1, word2, "es", "pt", label)


def confusion_fixture(tp, tn, fp, fn):
    """Gold pairs plus predictions realizing exactly the given counts."""
    gold_pairs = []
    predictions = []
    i = 0
    for count, label, verdict in [
        (tp, FALSE_FRIEND, True),
        (tn, TRUE_COGNATE, False),
        (fp, TRUE_COGNATE, True),
        (fn, FALSE_FRIEND, False),
    ]:
        for _ in range(count):
            gold_pairs.append(gold(f"w{i}", f"v{i}", label))
            predictions.append(prediction(f"w{i}", f"v{i}", verdict))
            i += 1
    return predictions, gold_pairs


class TestLoadGoldPairs:
    def test_parse(self, tmp_path):
        path = tmp_path / "gold.tsv"
        path.write_text("pelo\tpelo\tFF\nocho\toito\tTC\n", encoding="utf-8")
        pairs = load_gold_pairs(path, "es", "pt")
        assert pairs[0] == gold("pelo", "pelo", FALSE_FRIEND)
        assert pairs[1].label == TRUE_COGNATE

    def test_unknown_label(self, tmp_path):
        path = tmp_path / "gold.tsv"
        path.write_text("pelo\tpelo\tXX\n", encoding="utf-8")
        with pytest.raises(ValueError, match="unknown label"):
            load_gold_pairs(path, "es", "pt")

    def test_duplicate_names_second_line(self, tmp_path):
        path = tmp_path / "gold.tsv"
        lines = ["a0\tb0\tFF", "a1\tb1\tTC", "a2\tb2\tFF", "a3\tb3\tTC"]
        lines += [f"f{i}\tx{i}\tTC" for i in range(4)] + ["a1\tb1\tFF"]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        with pytest.raises(ValueError, match=r"line 9.*line 2"):
            load_gold_pairs(path, "es", "pt")

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "gold.tsv"
        path.write_text("\n", encoding="utf-8")
        with pytest.raises(ValueError, match="no gold pairs"):
            load_gold_pairs(path, "es", "pt")


class TestSynsets:
    def test_load_flat_file(self, tmp_path):
        path = tmp_path / "synsets.txt"
        path.write_text(
            "# comment\nes:ocho fr:huit\nes:caja pt:caixa es:arca\n", encoding="utf-8"
        )
        table = load_synsets(path)
        assert table.synsets[0] == frozenset({("es", "ocho"), ("fr", "huit")})
        assert len(table.synsets) == 2

    def test_malformed_member(self, tmp_path):
        path = tmp_path / "synsets.txt"
        path.write_text("es:ocho nolang\n", encoding="utf-8")
        with pytest.raises(ValueError, match="malformed member"):
            load_synsets(path)

    def test_co_membership_is_true_cognate(self):
        table = SynsetTable((frozenset({("es", "ocho"), ("fr", "huit")}),))
        labeled, excluded = gold_from_synsets(table, [("ocho", "huit")], "es", "fr")
        assert labeled[0].label == TRUE_COGNATE
        assert excluded == []

    def test_present_but_never_together_is_false_friend(self):
        table = SynsetTable(
            (
                frozenset({("es", "prez"), ("es", "premio")}),
                frozenset({("fr", "prix")}),
            )
        )
        labeled, _ = gold_from_synsets(table, [("prix", "prez")], "fr", "es")
        assert labeled[0].label == FALSE_FRIEND

    def test_word_absent_from_table_is_excluded(self):
        table = SynsetTable((frozenset({("es", "ocho")}),))
        labeled, excluded = gold_from_synsets(table, [("ocho", "huit")], "es", "fr")
        assert labeled == []
        assert excluded == [("ocho", "huit")]

    def test_order_independent(self):
        synsets = (
            frozenset({("es", "a"), ("pt", "b")}),
            frozenset({("es", "c")}),
            frozenset({("pt", "d")}),
        )
        pairs = [("a", "b"), ("c", "d"), ("a", "d")]
        base, base_excluded = gold_from_synsets(SynsetTable(synsets), pairs, "es", "pt")
        flipped, flipped_excluded = gold_from_synsets(
            SynsetTable(synsets[::-1]), pairs[::-1], "es", "pt"
        )
        assert {(g.word1, g.word2): g.label for g in base} == {
            (g.word1, g.word2): g.label for g in flipped
        }
        assert sorted(base_excluded) == sorted(flipped_excluded)


class TestEvaluate:
    def test_all_correct(self):
        predictions, gold_pairs = confusion_fixture(5, 5, 0, 0)
        result = evaluate(predictions, gold_pairs)
        assert result.accuracy == 1.0
        assert result.fp == result.fn == 0

    def test_hand_confusion_counts(self):
        predictions, gold_pairs = confusion_fixture(3, 4, 1, 2)
        result = evaluate(predictions, gold_pairs)
        assert (result.tp, result.tn, result.fp, result.fn) == (3, 4, 1, 2)
        assert result.accuracy == pytest.approx(0.70)
        assert result.precision == pytest.approx(0.75)
        assert result.recall == pytest.approx(0.60)
        assert result.evaluated_count == 10

    def test_missing_predictions_excluded(self):
        predictions, gold_pairs = confusion_fixture(2, 2, 0, 0)
        result = evaluate(predictions[:-1], gold_pairs)
        assert result.excluded_count == 1
        assert result.evaluated_count == 3

    def test_prediction_outside_gold_rejected(self):
        predictions, gold_pairs = confusion_fixture(1, 1, 0, 0)
        stray = prediction("zzz", "yyy", True)
        with pytest.raises(ValueError, match="prediction/gold mismatch"):
            evaluate(predictions + [stray], gold_pairs)

    def test_duplicate_prediction_rejected(self):
        predictions, gold_pairs = confusion_fixture(1, 1, 0, 0)
        with pytest.raises(ValueError, match="duplicate prediction"):
            evaluate(predictions + [predictions[0]], gold_pairs)

    def test_no_evaluable_pairs_rejected(self):
        _, gold_pairs = confusion_fixture(1, 0, 0, 0)
        with pytest.raises(ValueError, match="no evaluable"):
            evaluate([], gold_pairs)

    def test_precision_absent_when_no_positive_predictions(self):
        predictions, gold_pairs = confusion_fixture(0, 3, 0, 2)
        result = evaluate(predictions, gold_pairs)
        assert result.precision is None
        assert result.recall == 0.0

    @given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
    def test_counts_and_verdict_swap(self, tp, tn, fp, fn):
        if tp + tn + fp + fn == 0:
            return
        predictions, gold_pairs = confusion_fixture(tp, tn, fp, fn)
        result = evaluate(predictions, gold_pairs)
        assert (result.tp, result.tn, result.fp, result.fn) == (tp, tn, fp, fn)
        assert result.evaluated_count == tp + tn + fp + fn
        flipped = [
            prediction(p.word1, p.word2, not p.is_false_friend) for p in predictions
        ]
        swapped = evaluate(flipped, gold_pairs)
        assert (swapped.tp, swapped.tn, swapped.fp, swapped.fn) == (fn, fp, tn, tp)


class TestFormatting:
    def test_percent_strings(self):
        predictions, gold_pairs = confusion_fixture(3, 4, 1, 2)
        result = evaluate(predictions, gold_pairs)
        assert as_percent(result.accuracy) == "70.00"
        assert as_percent(result.precision) == "75.00"
        assert as_percent(result.recall) == "60.00"
        assert as_percent(None) == "-"

    def test_table_layout(self):
        predictions, gold_pairs = confusion_fixture(3, 4, 1, 2)
        result = evaluate(predictions, gold_pairs)
        table = format_eval_table([("es-pt", result)])
        lines = table.splitlines()
        assert lines[0].split() == ["pair", "Accuracy", "Precision", "Recall"]
        assert lines[1].split() == ["es-pt", "70.00", "75.00", "60.00"]
