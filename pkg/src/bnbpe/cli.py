"""Command line entry point: ``bnbpe <subcommand> ...``.

Exit codes: 0 success, 1 data/runtime error, 2 usage error. Paths given as
``-`` read stdin / write stdout.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from importlib import resources
from pathlib import Path

from . import __version__
from .baselines import KINDS, TokenizerHandle
from .bpe import DEFAULT_MIN_PAIR_FREQ, DEFAULT_VOCAB_SIZE, ConstraintProfile, TokenSequence, decode, train
from .corpus_io import DEFAULT_SEED, load_labeled_corpus, read_splits, stratified_split, write_splits
from .errors import BnbpeError, MissingModel
from .eval import DEFAULT_GRID
from .grapheme import segment_graphemes
from .model_io import load_model, save_model
from .normalizer import NormalizationConfig, clean

log = logging.getLogger("bnbpe")

WORD_SEP = "|"


class DataError(BnbpeError):
    pass


# -- io helpers -----------------------------------------------------------------


@contextmanager
def _open_in(path):
    if path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as f:
            yield f


@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            yield f


def _read_lines(path) -> list[str]:
    with _open_in(path) as f:
        return [line.rstrip("\r\n") for line in f]


def _file_hash(path) -> str | None:
    if path in (None, "-") or not Path(path).is_file():
        return None
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _dir_hash(path) -> str | None:
    p = Path(path)
    if not p.is_dir():
        return _file_hash(path)
    h = hashlib.sha256()
    for child in sorted(p.glob("*.jsonl")):
        h.update(child.name.encode() + b"\0" + (_file_hash(child) or "").encode())
    return h.hexdigest()


def write_manifest(path, subcommand, config: dict, inputs: dict, seed=None):
    manifest = {
        "subcommand": subcommand,
        "config": config,
        "inputs": {k: _dir_hash(v) if v else None for k, v in sorted(inputs.items())},
        "seed": seed,
        "toolkit_version": __version__,
    }
    Path(path).write_text(json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return manifest


def _norm_config(args) -> NormalizationConfig:
    return NormalizationConfig(
        strip_numerals=not getattr(args, "keep_numerals", False),
        strip_web_artifacts=not getattr(args, "no_strip_web", False),
    )


def _bundled(name) -> str:
    return str(resources.files("bnbpe").joinpath("data", name))


# -- subcommands -------------------------------------------------------------------


def cmd_normalize(args):
    config = _norm_config(args)
    lines = _read_lines(args.input)
    with _open_out(args.out) as out:
        for line in lines:
            out.write(clean(line, config).content + "\n")
    return 0


def cmd_graphemes(args):
    for line in _read_lines(args.input):
        clusters = [WORD_SEP if c.surface == " " else c.surface for c in segment_graphemes(line)]
        print(" ".join(clusters))
    return 0


def _load_raw(path, fmt, config, max_malformed=100):
    raw = load_labeled_corpus(path, fmt, config, max_malformed=max_malformed)
    if raw.dropped_count:
        log.info("%s: dropped %d empty documents", path, raw.dropped_count)
    return raw


def cmd_split(args):
    config = _norm_config(args)
    raw = _load_raw(args.input, args.format, config)
    ratios = tuple(float(x) for x in args.ratios.split(","))
    corpus = stratified_split(raw, ratios, args.seed)
    write_splits(corpus, args.out_dir)
    write_manifest(
        Path(args.out_dir) / "manifest.json",
        "split",
        {"ratios": list(ratios), "format": args.format, "normalization": config.to_dict(),
         "dropped": raw.dropped_count, "malformed_lines": raw.malformed},
        {"input": args.input},
        args.seed,
    )
    return 0


def _profile(mode, suffixes):
    return ConstraintProfile.bengali(suffixes) if mode == "bengali" else ConstraintProfile.generic()


def cmd_train(args):
    config = _norm_config(args)
    texts = [clean(line, config) for line in _read_lines(args.corpus)]
    texts = [t for t in texts if t.content]
    model = train(texts, args.vocab_size, _profile(args.mode, args.suffixes), args.min_pair_freq, config, args.threads)
    save_model(model, args.out)
    write_manifest(
        str(args.out) + ".manifest.json",
        "train",
        {"vocab_size": args.vocab_size, "mode": args.mode, "min_pair_freq": args.min_pair_freq,
         "normalization": config.to_dict(), "config_fingerprint": model.config_fingerprint},
        {"corpus": args.corpus, "suffixes": args.suffixes or _bundled("suffixes.txt")},
        None,
    )
    log.info("%r", model)
    return 0


def format_tokens(seq: TokenSequence, ids: bool = False) -> str:
    parts = []
    for n, word in enumerate(seq.words()):
        if n:
            parts.append(WORD_SEP)
        parts.extend(str(i) if ids else s for s, i in word)
    return " ".join(parts)


def parse_tokens(line: str, model=None) -> TokenSequence:
    tokens = []
    bounds = []
    fresh = True
    for item in line.split(" "):
        if not item:
            continue
        if item == WORD_SEP:
            fresh = True
            continue
        if fresh:
            bounds.append(len(tokens))
            fresh = False
        if model is not None and item.lstrip("-").isdigit():
            i = int(item)
            if not 0 <= i < len(model.id_to_surface):
                raise DataError(f"token id {i} outside vocabulary")
            tokens.append((model.id_to_surface[i], i))
        else:
            tokens.append((item, model.vocab.get(item, 0) if model is not None else 0))
    return TokenSequence(tokens, bounds)


def _map(fn, items, threads):
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def cmd_encode(args):
    model = load_model(args.model)
    lines = _read_lines(args.input)
    config = model.normalization

    def one(line):
        return format_tokens(model.encode(clean(line, config)), args.ids)

    with _open_out(args.out) as out:
        for line in _map(one, lines, args.threads):
            out.write(line + "\n")
    return 0


def cmd_decode(args):
    model = load_model(args.model)
    with _open_out(args.out) as out:
        for line in _read_lines(args.input):
            out.write(decode(parse_tokens(line, model)) + "\n")
    return 0


def _parse_models(spec, kinds):
    """``--models`` accepts ``kind=path`` items or bare paths matched in order
    to the BPE kinds of ``--tokenizers``."""
    out = {}
    if not spec:
        return out
    bpe_kinds = [k for k in kinds if k != "whitespace"]
    bare = []
    for item in spec.split(","):
        kind, sep, path = item.partition("=")
        if sep:
            out[kind] = path
        else:
            bare.append(item)
    for kind, path in zip([k for k in bpe_kinds if k not in out], bare):
        out[kind] = path
    return out


def _handles(kinds, models, train_texts, args, model_dir=None):
    handles = []
    trained = {}
    for kind in kinds:
        if kind not in KINDS:
            raise DataError(f"unknown tokenizer {kind!r}; choose from {', '.join(KINDS)}")
        if kind == "whitespace":
            handles.append(TokenizerHandle("whitespace"))
            continue
        if kind in models:
            model = load_model(models[kind])
        elif kind in trained:
            model = trained[kind]
        else:
            if train_texts is None:
                raise MissingModel(f"no model given for {kind}")
            log.info("training %s model (vocab %d)", kind, args.vocab_size)
            model = train(train_texts, args.vocab_size, _profile(kind, args.suffixes),
                          args.min_pair_freq, _norm_config(args), args.threads)
            if model_dir is not None:
                save_model(model, Path(model_dir) / f"{kind}.model")
        trained[kind] = model
        if model.mode != kind:
            raise DataError(f"model for {kind} was trained in {model.mode} mode")
        handles.append(TokenizerHandle(kind, model))
    return handles


def _load_any_corpus(path, args):
    """A split directory, a labeled CSV/JSONL file, or plain text lines."""
    p = Path(path)
    config = _norm_config(args)
    if p.is_dir():
        return read_splits(p, config)
    if p.suffix.lower() in (".csv", ".jsonl", ".ndjson"):
        raw = _load_raw(path, None, config)
        return stratified_split(raw, seed=args.seed)
    texts = [clean(line, config) for line in _read_lines(path)]
    return [t for t in texts if t.content]


def _write_report(path, report: dict):
    with _open_out(path) as out:
        out.write(json.dumps(report, ensure_ascii=False, indent=2, sort_keys=True) + "\n")


def cmd_bench(args):
    from .bench import compare
    from .corpus_io import LabeledCorpus

    corpus = _load_any_corpus(args.corpus, args)
    kinds = [k.strip() for k in args.tokenizers.split(",") if k.strip()]
    labeled = isinstance(corpus, LabeledCorpus)
    if args.with_eval and not labeled:
        raise DataError("--with-eval needs a labeled corpus (CSV/JSONL or split directory)")
    train_texts = corpus.texts("train") if labeled else corpus
    handles = _handles(kinds, _parse_models(args.models, kinds), train_texts, args)
    report = compare(
        corpus, handles, include_eval=args.with_eval, warmup=args.warmup, repeats=args.repeats,
        threads=args.threads, eval_kwargs={"grid": args.grid, "workers": args.threads},
    )
    _write_report(args.report, report.to_dict())
    if args.report not in (None, "-"):
        write_manifest(
            str(args.report) + ".manifest.json", "bench",
            {"tokenizers": kinds, "models": _parse_models(args.models, kinds), "with_eval": args.with_eval,
             "vocab_size": args.vocab_size, "warmup": args.warmup, "repeats": args.repeats},
            {"corpus": args.corpus}, args.seed,
        )
    return 0


def cmd_eval(args):
    from .eval import tune_and_evaluate

    corpus = read_splits(args.corpus, _norm_config(args)) if Path(args.corpus).is_dir() else _load_any_corpus(args.corpus, args)
    models = {args.tokenizer: args.model} if args.model else {}
    (handle,) = _handles([args.tokenizer], models, corpus.texts("train"), args)
    report = tune_and_evaluate(corpus, handle, args.grid, workers=args.threads)
    _write_report(args.report, report.to_dict())
    if args.report not in (None, "-"):
        write_manifest(
            str(args.report) + ".manifest.json", "eval",
            {"tokenizer": args.tokenizer, "grid": list(args.grid), "model": args.model},
            {"corpus": args.corpus, "model": args.model}, args.seed,
        )
    return 0


def cmd_pipeline(args):
    from .bench import compare

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus_path = args.corpus or _bundled("synthetic_news.jsonl")
    config = _norm_config(args)
    raw = _load_raw(corpus_path, None, config)
    corpus = stratified_split(raw, seed=args.seed)
    write_splits(corpus, out_dir / "splits")
    kinds = [k.strip() for k in args.tokenizers.split(",") if k.strip()]
    handles = _handles(kinds, {}, corpus.texts("train"), args, model_dir=out_dir)
    report = compare(
        corpus, handles, include_eval=True, warmup=args.warmup, repeats=args.repeats,
        threads=args.threads, eval_kwargs={"grid": args.grid, "workers": args.threads},
    )
    d = report.to_dict()
    d["dropped_documents"] = raw.dropped_count
    d["split_counts"] = corpus.counts()
    _write_report(out_dir / "report.json", d)
    write_manifest(
        out_dir / "manifest.json", "pipeline",
        {"tokenizers": kinds, "vocab_size": args.vocab_size, "min_pair_freq": args.min_pair_freq,
         "grid": list(args.grid), "normalization": config.to_dict()},
        {"corpus": corpus_path, "suffixes": args.suffixes or _bundled("suffixes.txt")}, args.seed,
    )
    for row in d["rows"]:
        ev = row.get("eval") or {}
        print(
            f"{row['tokenizer']:<11} avg_tokens={row['stats']['avg_tokens_per_sample']:.2f} "
            f"tokens/char={row['stats']['tokens_per_char']:.3f} "
            f"samples/s={row['throughput']['samples_per_sec']:.1f} "
            f"val_acc={ev.get('val_acc', float('nan')):.4f} test_acc={ev.get('test_acc', float('nan')):.4f} "
            f"macro_f1={ev.get('macro_f1', float('nan')):.4f}"
        )
    return 0


# -- parser ----------------------------------------------------------------------------


def _grid(text):
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    if not vals or any(v <= 0 for v in vals):
        raise argparse.ArgumentTypeError("grid values must be positive")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads (results do not depend on it)")
    common.add_argument("-v", "--verbose", action="store_true")

    norm = argparse.ArgumentParser(add_help=False)
    norm.add_argument("--keep-numerals", action="store_true", help="keep Bengali digits")
    norm.add_argument("--no-strip-web", action="store_true", help="do not strip URLs, emoji and HTML tags")

    training = argparse.ArgumentParser(add_help=False)
    training.add_argument("--vocab-size", type=int, default=DEFAULT_VOCAB_SIZE)
    training.add_argument("--min-pair-freq", type=int, default=DEFAULT_MIN_PAIR_FREQ)
    training.add_argument("--suffixes", default=None, help="suffix lexicon file (default: bundled)")
    training.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = argparse.ArgumentParser(prog="bnbpe", description="Bengali grapheme-aware BPE toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common, norm], help="clean raw text, one document per line")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("graphemes", parents=[common], help="print grapheme clusters per line")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_graphemes)

    s = sub.add_parser("split", parents=[common, norm], help="stratified train/val/test split")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--format", choices=("csv", "jsonl"), default=None)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--ratios", default="0.7,0.1,0.2")
    s.add_argument("--out-dir", required=True)
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("train", parents=[common, norm], help="train a BPE model")
    s.add_argument("--corpus", required=True)
    s.add_argument("--vocab-size", type=int, default=DEFAULT_VOCAB_SIZE)
    s.add_argument("--mode", choices=("bengali", "generic"), default="bengali")
    s.add_argument("--suffixes", default=None)
    s.add_argument("--min-pair-freq", type=int, default=DEFAULT_MIN_PAIR_FREQ)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_train)

    s = sub.add_parser("encode", parents=[common], help="encode text with a model")
    s.add_argument("--model", required=True)
    s.add_argument("--in", dest="input", default="-")
    s.add_argument("--out", default="-")
    s.add_argument("--ids", action="store_true", help="write vocabulary ids instead of surfaces")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", parents=[common], help="decode encoder output back to text")
    s.add_argument("--model", required=True)
    s.add_argument("--in", dest="input", default="-")
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("bench", parents=[common, norm, training], help="tokenization statistics and throughput")
    s.add_argument("--corpus", required=True)
    s.add_argument("--tokenizers", default="whitespace,bengali,generic")
    s.add_argument("--models", default=None, help="kind=path,... or paths in --tokenizers order")
    s.add_argument("--report", default="-")
    s.add_argument("--with-eval", action="store_true")
    s.add_argument("--grid", type=_grid, default=list(DEFAULT_GRID))
    s.add_argument("--warmup", type=int, default=100)
    s.add_argument("--repeats", type=int, default=3)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("eval", parents=[common, norm, training], help="TF-IDF + logistic regression evaluation")
    s.add_argument("--corpus", required=True, help="split directory (or labeled CSV/JSONL)")
    s.add_argument("--tokenizer", choices=KINDS, required=True)
    s.add_argument("--model", default=None)
    s.add_argument("--grid", type=_grid, default=list(DEFAULT_GRID))
    s.add_argument("--report", default="-")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("pipeline", parents=[common, norm, training], help="normalize, split, train, bench and evaluate")
    s.add_argument("--corpus", default=None, help="labeled CSV/JSONL (default: bundled synthetic news)")
    s.add_argument("--out-dir", required=True)
    s.add_argument("--tokenizers", default="whitespace,bengali,generic")
    s.add_argument("--grid", type=_grid, default=list(DEFAULT_GRID))
    s.add_argument("--warmup", type=int, default=100)
    s.add_argument("--repeats", type=int, default=3)
    s.set_defaults(func=cmd_pipeline)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except BrokenPipeError:
        # downstream closed the pipe (e.g. `| head`); not an error
        sys.stdout = open(os.devnull, "w")
        return 0
    except (BnbpeError, OSError, UnicodeDecodeError, ValueError) as e:
        print(f"bnbpe {args.command}: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
