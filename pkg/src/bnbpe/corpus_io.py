"""Labeled corpus loading (CSV / JSON lines) and stratified splitting.

Splits use Python's ``random.Random`` (Mersenne Twister, MT19937) seeded with
the integer seed and consumed once per class in sorted label order; the
shuffle is ``random.Random.shuffle``, which is stable across platforms and
Python versions for a fixed seed.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import ClassTooSmall, MalformedRow, MissingColumn
from .normalizer import DEFAULT_CONFIG, NormalizationConfig, NormalizedText, as_normalized, clean

log = logging.getLogger(__name__)

SPLITS = ("train", "val", "test")
DEFAULT_RATIOS = (0.70, 0.10, 0.20)
DEFAULT_SEED = 42


@dataclass
class RawCorpus:
    samples: list[tuple[NormalizedText, str]]
    dropped_count: int = 0
    malformed: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class LabeledSample:
    text: NormalizedText
    label: int
    split: str


@dataclass
class LabeledCorpus:
    samples: list[LabeledSample]
    label_names: list[str]
    split_ratios: tuple[float, float, float] = DEFAULT_RATIOS
    seed: int = DEFAULT_SEED

    def split(self, name: str) -> list[LabeledSample]:
        return [s for s in self.samples if s.split == name]

    def texts(self, name: str | None = None) -> list[NormalizedText]:
        return [s.text for s in self.samples if name is None or s.split == name]

    def labels(self, name: str | None = None) -> list[int]:
        return [s.label for s in self.samples if name is None or s.split == name]

    def counts(self) -> dict[str, dict[str, int]]:
        out = {split: {n: 0 for n in self.label_names} for split in SPLITS}
        for s in self.samples:
            out[s.split][self.label_names[s.label]] += 1
        return out

    @property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        for s in self.samples:
            h.update(f"{s.split}\t{s.label}\t{s.text.content}\n".encode("utf-8"))
        h.update("\t".join(self.label_names).encode("utf-8"))
        return h.hexdigest()[:16]


def _detect_format(path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".jsonl", ".ndjson", ".json"):
        return "jsonl"
    return "csv"


def _iter_csv(f):
    reader = csv.DictReader(f)
    fields = reader.fieldnames or []
    missing = [c for c in ("text", "label") if c not in fields]
    if missing:
        raise MissingColumn(f"CSV header lacks column(s): {', '.join(missing)}")
    for row in reader:
        line = reader.line_num
        if None in row or row.get("text") is None or row.get("label") is None:
            yield line, None, None
        else:
            yield line, row["text"], row["label"]


def _iter_jsonl(f):
    first = True
    for n, line in enumerate(f, 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            yield n, None, None
            continue
        if not isinstance(obj, dict):
            yield n, None, None
            continue
        if first:
            missing = [c for c in ("text", "label") if c not in obj]
            if missing:
                raise MissingColumn(f"first record lacks key(s): {', '.join(missing)}")
            first = False
        text, label = obj.get("text"), obj.get("label")
        if not isinstance(text, str) or label is None:
            yield n, None, None
        else:
            yield n, text, str(label)


def load_labeled_corpus(
    path,
    format: str | None = None,
    config: NormalizationConfig = DEFAULT_CONFIG,
    max_malformed: int = 100,
    prenormalized: bool = False,
) -> RawCorpus:
    """Read ``text``/``label`` records and clean every text.

    Malformed rows are skipped and reported by line number until more than
    ``max_malformed`` have been seen, at which point the load fails.
    """
    fmt = format or _detect_format(path)
    if fmt not in ("csv", "jsonl"):
        raise ValueError(f"unknown corpus format {fmt!r}")
    out = RawCorpus([])
    with open(path, encoding="utf-8", newline="") as f:
        rows = _iter_csv(f) if fmt == "csv" else _iter_jsonl(f)
        for line, text, label in rows:
            if text is None or not str(label).strip():
                out.malformed.append(line)
                log.warning("%s: malformed row at line %d", os.fspath(path), line)
                if len(out.malformed) > max_malformed:
                    raise MalformedRow(f"more than {max_malformed} malformed rows", line)
                continue
            norm = as_normalized(text, config) if prenormalized else clean(text, config)
            if not norm.content:
                out.dropped_count += 1
                continue
            out.samples.append((norm, str(label).strip()))
    return out


def largest_remainder(n: int, ratios) -> list[int]:
    """Split ``n`` items by ``ratios`` with largest-remainder rounding.

    Ties on the remainder go to the earlier split.
    """
    fr = [Fraction(str(r)) for r in ratios]
    total = sum(fr)
    exact = [n * r / total for r in fr]
    counts = [int(e) for e in exact]
    order = sorted(range(len(fr)), key=lambda i: (-(exact[i] - counts[i]), i))
    for i in order[: n - sum(counts)]:
        counts[i] += 1
    return counts


def stratified_split(
    samples,
    ratios=DEFAULT_RATIOS,
    seed: int = DEFAULT_SEED,
) -> LabeledCorpus:
    if len(ratios) != 3 or any(r < 0 for r in ratios) or sum(ratios) <= 0:
        raise ValueError(f"bad split ratios {ratios!r}")
    pairs = list(samples.samples if isinstance(samples, RawCorpus) else samples)
    label_names = sorted({label for _, label in pairs})
    by_class = {name: [] for name in label_names}
    for i, (_, label) in enumerate(pairs):
        by_class[label].append(i)
    for name, idx in by_class.items():
        if len(idx) < 3:
            raise ClassTooSmall(f"class {name!r} has {len(idx)} samples, need at least 3")

    rng = random.Random(seed)
    assignment = [None] * len(pairs)
    for name in label_names:
        idx = by_class[name]
        rng.shuffle(idx)
        n_train, n_val, _ = largest_remainder(len(idx), ratios)
        for k, i in enumerate(idx):
            assignment[i] = "train" if k < n_train else "val" if k < n_train + n_val else "test"

    label_id = {n: i for i, n in enumerate(label_names)}
    out = [LabeledSample(text, label_id[label], assignment[i]) for i, (text, label) in enumerate(pairs)]
    return LabeledCorpus(out, label_names, tuple(ratios), seed)


def write_splits(corpus: LabeledCorpus, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in SPLITS:
        path = out_dir / f"{name}.jsonl"
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for s in corpus.split(name):
                rec = {"text": s.text.content, "label": corpus.label_names[s.label]}
                f.write(json.dumps(rec, ensure_ascii=False) + "\n")
        written.append(path)
    meta = {
        "label_names": corpus.label_names,
        "split_ratios": list(corpus.split_ratios),
        "seed": corpus.seed,
        "normalization": corpus.samples[0].text.fingerprint if corpus.samples else None,
        "fingerprint": corpus.fingerprint,
        "counts": corpus.counts(),
    }
    path = out_dir / "split.json"
    path.write_text(json.dumps(meta, ensure_ascii=False, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(path)
    return written


def read_splits(in_dir, config: NormalizationConfig = DEFAULT_CONFIG) -> LabeledCorpus:
    """Load a directory written by :func:`write_splits`.

    Texts are trusted to be normalized already. Missing ``val``/``test``
    files are read as empty splits.
    """
    in_dir = Path(in_dir)
    meta_path = in_dir / "split.json"
    meta = json.loads(meta_path.read_text("utf-8")) if meta_path.exists() else {}
    records = []
    for name in SPLITS:
        path = in_dir / f"{name}.jsonl"
        if not path.exists():
            continue
        raw = load_labeled_corpus(path, "jsonl", config, prenormalized=True)
        records.extend((text, label, name) for text, label in raw.samples)
    label_names = meta.get("label_names") or sorted({label for _, label, _ in records})
    label_id = {n: i for i, n in enumerate(label_names)}
    samples = [LabeledSample(text, label_id[label], split) for text, label, split in records]
    return LabeledCorpus(
        samples,
        list(label_names),
        tuple(meta.get("split_ratios", DEFAULT_RATIOS)),
        meta.get("seed", DEFAULT_SEED),
    )
