"""Tokenization statistics, encoding throughput and side-by-side reports."""

from __future__ import annotations

import hashlib
import os
import platform
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from . import __version__, kernels
from .baselines import TokenizerHandle
from .corpus_io import LabeledCorpus
from .errors import CorpusSmallerThanWarmup
from .normalizer import NormalizedText

TOKENS_PER_CHAR_NOTE = "total tokens / total codepoints of normalized text, spaces included"
TIMING_NOTE = "tokenizer only; normalization and file I/O excluded"


@dataclass
class TokenizationStats:
    avg_tokens_per_sample: float
    median_tokens: float
    tokens_per_char: float
    sample_count: int
    total_tokens: int
    total_chars: int


@dataclass
class ThroughputResult:
    samples_per_sec: float
    wall_seconds: float
    samples_processed: int
    warmup_samples: int
    repeats: int = 1
    threads: int = 1
    pass_seconds: list[float] = field(default_factory=list)


@dataclass
class BenchmarkRow:
    tokenizer: str
    kind: str
    stats: TokenizationStats
    throughput: ThroughputResult | None = None
    eval: dict | None = None
    model_fingerprint: str | None = None
    vocab_size: int | None = None


@dataclass
class BenchmarkReport:
    rows: list[BenchmarkRow]
    corpus_fingerprint: str
    environment: dict

    def to_dict(self, with_timing: bool = True) -> dict:
        d = asdict(self)
        if not with_timing:
            for row in d["rows"]:
                row.pop("throughput", None)
            d["environment"].pop("python", None)
        return d


def _texts(corpus) -> list:
    if isinstance(corpus, LabeledCorpus):
        return corpus.texts()
    return list(corpus)


def _length(t) -> int:
    return len(t.content) if isinstance(t, NormalizedText) else len(t)


def corpus_fingerprint(corpus) -> str:
    if isinstance(corpus, LabeledCorpus):
        return corpus.fingerprint
    h = hashlib.sha256()
    for t in corpus:
        h.update((t.content if isinstance(t, NormalizedText) else t).encode("utf-8") + b"\n")
    return h.hexdigest()[:16]


def tokenization_stats(corpus, handle: TokenizerHandle) -> TokenizationStats:
    texts = _texts(corpus)
    if not texts:
        raise ValueError("empty corpus")
    counts = [len(handle(t)) for t in texts]
    total_chars = sum(_length(t) for t in texts)
    total = sum(counts)
    return TokenizationStats(
        avg_tokens_per_sample=total / len(counts),
        median_tokens=float(statistics.median_low(counts)),
        tokens_per_char=total / total_chars if total_chars else 0.0,
        sample_count=len(counts),
        total_tokens=total,
        total_chars=total_chars,
    )


def measure_throughput(
    corpus,
    handle: TokenizerHandle,
    warmup: int = 100,
    repeats: int = 3,
    clock: Callable[[], float] = time.perf_counter,
    threads: int = 1,
) -> ThroughputResult:
    """Encode ``warmup`` samples untimed, then time the rest ``repeats`` times
    and report the median pass."""
    texts = _texts(corpus)
    if len(texts) <= warmup:
        raise CorpusSmallerThanWarmup(f"{len(texts)} samples, warmup {warmup}")
    for t in texts[:warmup]:
        handle(t)
    timed = texts[warmup:]

    def run_chunk(chunk):
        for t in chunk:
            handle(t)

    chunks = None
    if threads > 1:
        size = (len(timed) + threads - 1) // threads
        chunks = [timed[i : i + size] for i in range(0, len(timed), size)]

    passes = []
    for _ in range(max(1, repeats)):
        if chunks is None:
            start = clock()
            for t in timed:
                handle(t)
            passes.append(clock() - start)
        else:
            with ThreadPoolExecutor(threads) as pool:
                start = clock()
                list(pool.map(run_chunk, chunks))
                passes.append(clock() - start)
    wall = statistics.median(passes)
    return ThroughputResult(
        samples_per_sec=len(timed) / wall if wall > 0 else float("inf"),
        wall_seconds=wall,
        samples_processed=len(timed),
        warmup_samples=warmup,
        repeats=len(passes),
        threads=threads,
        pass_seconds=passes,
    )


def environment(threads: int = 1) -> dict:
    return {
        "toolkit_version": __version__,
        "kernel_backend": kernels.BACKEND,
        "threads": threads,
        "cpu_count": os.cpu_count(),
        "python": f"{platform.python_implementation()} {sys.version.split()[0]}",
        "tokens_per_char": TOKENS_PER_CHAR_NOTE,
        "timing": TIMING_NOTE,
    }


def compare(
    corpus,
    handles: Sequence[TokenizerHandle],
    include_eval: bool = False,
    warmup: int = 100,
    repeats: int = 3,
    threads: int = 1,
    measure: bool = True,
    eval_kwargs: dict | None = None,
) -> BenchmarkReport:
    if not handles:
        raise ValueError("compare needs at least one tokenizer")
    if include_eval and not isinstance(corpus, LabeledCorpus):
        raise ValueError("evaluation needs a labeled, split corpus")
    fp = corpus_fingerprint(corpus)
    texts = _texts(corpus)
    rows = []
    for h in handles:
        row = BenchmarkRow(
            tokenizer=h.label,
            kind=h.kind,
            stats=tokenization_stats(texts, h),
            model_fingerprint=h.model.config_fingerprint if h.model is not None else None,
            vocab_size=len(h.model) if h.model is not None else None,
        )
        if measure:
            w = min(warmup, max(0, len(texts) - 1))
            row.throughput = measure_throughput(texts, h, w, repeats, threads=threads)
        if include_eval:
            from .eval import tune_and_evaluate

            row.eval = tune_and_evaluate(corpus, h, **(eval_kwargs or {})).to_dict()
        # all rows must describe the same corpus
        assert corpus_fingerprint(corpus) == fp
        rows.append(row)
    return BenchmarkReport(rows, fp, environment(threads))
