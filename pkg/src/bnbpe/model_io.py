"""Plain-text model files.

Layout (UTF-8, ``\\n`` line ends)::

    #bnbpe-model
    format_version: 1
    config_fingerprint: ...
    ...
    [suffixes]
    রা
    [vocab]
    <unk>\t0
    ...
    [merges]
    ক\tল

Ids are laid out as specials, then the alphabet, then one id per merge in
rank order; ``load_model`` re-derives that layout and rejects any file that
disagrees with it.
"""

from __future__ import annotations

import io
import json
import os

from .bpe import SPECIALS, BpeModel, ConstraintProfile, MergeRule
from .errors import CorruptFile, VersionMismatch
from .normalizer import NormalizationConfig

MAGIC = "#bnbpe-model"
FORMAT_VERSION = 1
SECTIONS = ("[suffixes]", "[vocab]", "[merges]")


def dumps(model: BpeModel) -> str:
    out = io.StringIO()
    profile = model.constraint_profile
    header = [
        ("format_version", str(FORMAT_VERSION)),
        ("config_fingerprint", model.config_fingerprint),
        ("normalization_fingerprint", model.normalization_fingerprint),
        ("mode", model.mode),
        ("vocab_size", str(len(model.vocab))),
        ("alphabet_size", str(len(model.alphabet))),
        ("merge_count", str(len(model.merges))),
        ("target_vocab_size", str(model.target_vocab_size)),
        ("min_pair_freq", str(model.min_pair_freq)),
        ("suffix_lexicon_hash", profile.lexicon_hash),
        ("normalization", json.dumps(model.normalization.to_dict(), sort_keys=True, separators=(",", ":"))),
    ]
    out.write(MAGIC + "\n")
    for key, value in header:
        out.write(f"{key}: {value}\n")
    out.write("[suffixes]\n")
    for s in sorted(profile.suffix_lexicon):
        out.write(s + "\n")
    out.write("[vocab]\n")
    for i, s in enumerate(model.id_to_surface):
        out.write(f"{s}\t{i}\n")
    out.write("[merges]\n")
    for m in model.merges:
        out.write(f"{m.left}\t{m.right}\n")
    return out.getvalue()


def save_model(model: BpeModel, path) -> None:
    data = dumps(model)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(data)
    except OSError as e:
        raise OSError(f"cannot write model to {os.fspath(path)}: {e}") from e


def _corrupt(msg):
    return CorruptFile(msg)


def loads(text: str) -> BpeModel:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != MAGIC:
        raise _corrupt("missing model file magic line")

    header = {}
    i = 1
    while i < len(lines) and lines[i] not in SECTIONS:
        key, sep, value = lines[i].partition(": ")
        if not sep:
            raise _corrupt(f"bad header line {i + 1}: {lines[i]!r}")
        header[key] = value
        i += 1

    try:
        version = int(header["format_version"])
    except (KeyError, ValueError):
        raise _corrupt("missing or invalid format_version") from None
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"model format {version}, this build reads {FORMAT_VERSION}")

    sections = {name: [] for name in SECTIONS}
    current = None
    seen = set()
    for line in lines[i:]:
        if line in SECTIONS:
            if line in seen:
                raise _corrupt(f"duplicate section {line}")
            seen.add(line)
            current = line
            continue
        if current is None:
            raise _corrupt("data before first section")
        sections[current].append(line)
    for name in SECTIONS:
        if name not in seen:
            raise _corrupt(f"missing section {name}")

    try:
        mode = header["mode"]
        target = int(header["target_vocab_size"])
        min_pair_freq = int(header["min_pair_freq"])
        norm = NormalizationConfig.from_dict(json.loads(header["normalization"]))
        expected = {k: int(header[k]) for k in ("vocab_size", "alphabet_size", "merge_count")}
    except (KeyError, ValueError) as e:
        raise _corrupt(f"bad header: {e}") from None

    try:
        profile = ConstraintProfile(mode, frozenset(sections["[suffixes]"]))
    except ValueError as e:
        raise _corrupt(str(e)) from None
    if profile.lexicon_hash != header.get("suffix_lexicon_hash"):
        raise _corrupt("suffix lexicon does not match suffix_lexicon_hash")

    surfaces = []
    for n, line in enumerate(sections["[vocab]"]):
        surface, sep, idx = line.rpartition("\t")
        if not sep or not surface:
            raise _corrupt(f"bad vocab line {line!r}")
        if idx != str(n):
            raise _corrupt(f"vocab ids not contiguous at {line!r}")
        surfaces.append(surface)
    if tuple(surfaces[: len(SPECIALS)]) != SPECIALS:
        raise _corrupt("vocab does not start with the reserved specials")

    merge_pairs = []
    for line in sections["[merges]"]:
        parts = line.split("\t")
        if len(parts) != 2 or not all(parts):
            raise _corrupt(f"bad merge line {line!r}")
        merge_pairs.append(tuple(parts))

    n_merges = len(merge_pairs)
    if n_merges != expected["merge_count"]:
        raise _corrupt(f"merges section has {n_merges} rules, header says {expected['merge_count']}")
    if len(surfaces) != expected["vocab_size"]:
        raise _corrupt(f"vocab section has {len(surfaces)} entries, header says {expected['vocab_size']}")
    n_alpha = len(surfaces) - len(SPECIALS) - n_merges
    if n_alpha != expected["alphabet_size"] or n_alpha < 0:
        raise _corrupt("vocab size != specials + alphabet + merges")
    alphabet = surfaces[len(SPECIALS) : len(SPECIALS) + n_alpha]
    known = set(SPECIALS) | set(alphabet)
    merges = []
    for rank, (left, right) in enumerate(merge_pairs):
        if left not in known or right not in known:
            raise _corrupt(f"merge {rank} uses a surface not yet in the vocabulary")
        surface = left + right
        if surfaces[len(SPECIALS) + n_alpha + rank] != surface:
            raise _corrupt(f"merge {rank} result is not vocab id {len(SPECIALS) + n_alpha + rank}")
        known.add(surface)
        merges.append(MergeRule(left, right, rank))
    if len(alphabet) + len(merges) > target:
        raise _corrupt("vocabulary exceeds target_vocab_size")

    try:
        model = BpeModel(alphabet, merges, target, profile, norm, min_pair_freq)
    except ValueError as e:
        raise _corrupt(str(e)) from None
    if model.config_fingerprint != header.get("config_fingerprint"):
        raise _corrupt("config_fingerprint does not match the stored configuration")
    return model


def load_model(path) -> BpeModel:
    try:
        with open(path, encoding="utf-8", newline="") as f:
            text = f.read()
    except OSError as e:
        raise OSError(f"cannot read model {os.fspath(path)}: {e}") from e
    try:
        return loads(text)
    except CorruptFile as e:
        raise CorruptFile(f"{os.fspath(path)}: {e}") from None
