import pytest

from bnbpe.baselines import TokenizerHandle
from bnbpe.bench import compare, measure_throughput, tokenization_stats
from bnbpe.errors import CorpusSmallerThanWarmup

WS = TokenizerHandle("whitespace")


def test_stats_toy():
    s = tokenization_stats(["বাংলা ভাষা"], WS)
    assert s.avg_tokens_per_sample == 2
    assert s.tokens_per_char == pytest.approx(0.2)
    assert s.total_chars == 10


def test_stats_single_token():
    s = tokenization_stats(["ক"], WS)
    assert s.avg_tokens_per_sample == s.median_tokens == 1


def test_empty_corpus():
    with pytest.raises(ValueError):
        tokenization_stats([], WS)


def test_fake_clock_median():
    ticks = iter([0.0, 2.0, 10.0, 15.0, 20.0, 21.0])
    r = measure_throughput(["ক"] * 1010, WS, warmup=10, repeats=3, clock=lambda: next(ticks))
    assert r.pass_seconds == [2.0, 5.0, 1.0]
    assert r.wall_seconds == 2.0
    assert r.samples_processed == 1000
    assert r.samples_per_sec == pytest.approx(500.0)


def test_warmup_too_large():
    with pytest.raises(CorpusSmallerThanWarmup):
        measure_throughput(["ক"] * 5, WS, warmup=5)


def test_threaded_throughput_counts_everything():
    r = measure_throughput(["ক খ"] * 300, WS, warmup=10, repeats=1, threads=3)
    assert r.samples_processed == 290 and r.threads == 3


def test_compare_rows(bengali_model, generic_model, sample_corpus):
    handles = [
        WS,
        TokenizerHandle("bengali", bengali_model),
        TokenizerHandle("generic", generic_model),
        TokenizerHandle("bengali", bengali_model, name="bengali-again"),
    ]
    report = compare(sample_corpus[:300], handles, warmup=10, repeats=1)
    assert [r.tokenizer for r in report.rows] == ["whitespace", "bengali", "generic", "bengali-again"]
    tpc = {r.tokenizer: r.stats.tokens_per_char for r in report.rows}
    assert tpc["bengali"] > tpc["whitespace"]
    assert tpc["bengali"] == tpc["bengali-again"]
    d = report.to_dict(with_timing=False)
    assert "throughput" not in d["rows"][0]


def test_compare_needs_handles(sample_corpus):
    with pytest.raises(ValueError):
        compare(sample_corpus[:10], [])
