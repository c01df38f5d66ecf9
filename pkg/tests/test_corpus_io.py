import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bnbpe.corpus_io import (
    largest_remainder,
    load_labeled_corpus,
    read_splits,
    stratified_split,
    write_splits,
)
from bnbpe.errors import ClassTooSmall, MalformedRow, MissingColumn
from bnbpe.normalizer import as_normalized


def _samples(per_class):
    return [(as_normalized(f"লেখা {c} {i}"), c) for c, n in per_class.items() for i in range(n)]


def test_csv_drops_empty_text(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text('text,label\nবাংলা,a\n"",b\n"ভাষা, লেখা",a\n', encoding="utf-8")
    raw = load_labeled_corpus(p)
    assert [s.content for s, _ in raw.samples] == ["বাংলা", "ভাষা, লেখা"]
    assert raw.dropped_count == 1


def test_text_cleaned_to_nothing_is_dropped(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text("text,label\nhello 123,a\nক,a\n", encoding="utf-8")
    raw = load_labeled_corpus(p)
    assert len(raw.samples) == 1 and raw.dropped_count == 1


def test_missing_column(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text("body,label\nক,a\n", encoding="utf-8")
    with pytest.raises(MissingColumn):
        load_labeled_corpus(p)


def test_jsonl_malformed_rows(tmp_path):
    p = tmp_path / "c.jsonl"
    lines = ['{"text": "ক", "label": "x"}', "{not json", '{"text": 5, "label": "x"}', '{"text": "খ", "label": 3}']
    p.write_text("\n".join(lines) + "\n", encoding="utf-8")
    raw = load_labeled_corpus(p)
    assert raw.malformed == [2, 3]
    assert [lab for _, lab in raw.samples] == ["x", "3"]
    with pytest.raises(MalformedRow):
        load_labeled_corpus(p, max_malformed=1)


@pytest.mark.parametrize(
    "n,ratios,expected",
    [
        (100, (0.7, 0.1, 0.2), [70, 10, 20]),
        (10, (0.7, 0.1, 0.2), [7, 1, 2]),
        (3, (0.7, 0.1, 0.2), [2, 0, 1]),
        (7, (1, 1, 1), [3, 2, 2]),
    ],
)
def test_largest_remainder(n, ratios, expected):
    assert largest_remainder(n, ratios) == expected


@given(st.integers(0, 5000), st.tuples(*[st.integers(0, 20)] * 3).filter(lambda r: sum(r) > 0))
def test_largest_remainder_sums(n, ratios):
    counts = largest_remainder(n, ratios)
    assert sum(counts) == n
    assert all(abs(c - n * r / sum(ratios)) < 1 for c, r in zip(counts, ratios))


def test_split_exact_counts():
    corpus = stratified_split(_samples({"a": 100, "b": 100, "c": 10}))
    counts = corpus.counts()
    assert [counts[s]["a"] for s in ("train", "val", "test")] == [70, 10, 20]
    assert [counts[s]["c"] for s in ("train", "val", "test")] == [7, 1, 2]
    assert corpus.label_names == ["a", "b", "c"]


def test_split_deterministic_and_seeded():
    data = _samples({"a": 50, "b": 40})
    a = stratified_split(data, seed=7)
    b = stratified_split(data, seed=7)
    c = stratified_split(data, seed=8)
    assert [s.split for s in a.samples] == [s.split for s in b.samples]
    assert [s.split for s in a.samples] != [s.split for s in c.samples]


def test_class_too_small():
    with pytest.raises(ClassTooSmall):
        stratified_split(_samples({"a": 10, "b": 2}))


def test_bad_ratios():
    with pytest.raises(ValueError):
        stratified_split(_samples({"a": 10}), ratios=(0.5, 0.5))


def test_write_read_round_trip(tmp_path):
    corpus = stratified_split(_samples({"a": 20, "b": 30}))
    write_splits(corpus, tmp_path)
    meta = json.loads((tmp_path / "split.json").read_text("utf-8"))
    assert meta["fingerprint"] == corpus.fingerprint
    again = read_splits(tmp_path)
    assert sorted((s.split, s.label, s.text.content) for s in again.samples) == sorted(
        (s.split, s.label, s.text.content) for s in corpus.samples
    )
