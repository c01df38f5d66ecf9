"""Grapheme-initialized BPE with word-final suffix blocking.

Training counts adjacent symbol pairs inside words (weighted by word
frequency), merges the most frequent allowed pair, and repeats. In
``bengali`` mode a pair is not allowed when its right side is a word-final
lexicon suffix and its left side is not itself a suffix, which keeps plural
and case markers (রা, দের, কে, ...) as separate tokens. Encoding replays the
merge table in rank order under the same rule.
"""

from __future__ import annotations

import hashlib
import heapq
import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Sequence

from . import kernels
from ._pykernels import FLAG_MARK, FLAG_SUFFIX
from .errors import EmptyCorpus, FingerprintMismatch, TargetTooSmall
from .grapheme import GRAMMAR_VERSION, CodepointClass, classify_codepoint, graphemes, starts_with_mark
from .normalizer import DEFAULT_CONFIG, NormalizationConfig, NormalizedText, normalize_unicode

UNK = "<unk>"
PAD = "<pad>"
SPECIALS = (UNK, PAD)
UNK_ID = 0
PAD_ID = 1

DEFAULT_VOCAB_SIZE = 8000
DEFAULT_MIN_PAIR_FREQ = 2


def load_suffix_lexicon(path=None) -> frozenset[str]:
    if path is None:
        text = resources.files("bnbpe").joinpath("data/suffixes.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    out = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.add(normalize_unicode(line))
    return frozenset(out)


@dataclass(frozen=True)
class ConstraintProfile:
    mode: str = "bengali"
    suffix_lexicon: frozenset[str] = frozenset()
    block_cross_word: bool = True

    def __post_init__(self):
        if self.mode not in ("bengali", "generic"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not self.block_cross_word:
            raise ValueError("cross-word merges are never allowed")
        object.__setattr__(self, "suffix_lexicon", frozenset(self.suffix_lexicon))

    @classmethod
    def bengali(cls, suffixes_path=None):
        return cls("bengali", load_suffix_lexicon(suffixes_path))

    @classmethod
    def generic(cls):
        return cls("generic", frozenset())

    @property
    def effective_lexicon(self) -> frozenset[str]:
        return self.suffix_lexicon if self.mode == "bengali" else frozenset()

    @property
    def lexicon_hash(self) -> str:
        blob = "\n".join(sorted(self.effective_lexicon)).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:16]


def is_merge_allowed(
    left: str,
    right: str,
    word_final: bool = False,
    profile: ConstraintProfile = ConstraintProfile.generic(),
    crosses_word: bool = False,
) -> bool:
    if crosses_word:
        return False
    if starts_with_mark(left):
        return False
    if (
        profile.mode == "bengali"
        and word_final
        and right in profile.suffix_lexicon
        and left not in profile.suffix_lexicon
    ):
        return False
    return True


def _split_word(word: str) -> list[str]:
    units = []
    start = 0
    for i, ch in enumerate(word):
        if classify_codepoint(ord(ch)) == CodepointClass.PUNCTUATION:
            if i > start:
                units.append(word[start:i])
            units.append(ch)
            start = i + 1
    if start < len(word):
        units.append(word[start:])
    return units


def _content(text) -> str:
    return text.content if isinstance(text, NormalizedText) else text


def pretokenize(text) -> list[str]:
    """Split on spaces and detach every punctuation codepoint."""
    units = []
    for word in _content(text).split(" "):
        if word:
            units.extend(_split_word(word))
    return units


@dataclass(frozen=True)
class MergeRule:
    left: str
    right: str
    rank: int
    frequency_at_merge: int | None = None

    @property
    def surface(self) -> str:
        return self.left + self.right


@dataclass
class TokenSequence:
    tokens: list[tuple[str, int]] = field(default_factory=list)
    word_boundaries: list[int] = field(default_factory=list)

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    @property
    def surfaces(self) -> list[str]:
        return [s for s, _ in self.tokens]

    @property
    def ids(self) -> list[int]:
        return [i for _, i in self.tokens]

    def words(self) -> list[list[tuple[str, int]]]:
        bounds = list(self.word_boundaries) + [len(self.tokens)]
        return [self.tokens[a:b] for a, b in zip(bounds, bounds[1:])]


def decode(tokens: TokenSequence) -> str:
    return " ".join("".join(s for s, _ in word) for word in tokens.words())


class BpeModel:
    """A trained tokenizer. Treat as immutable; encoding is thread-safe."""

    CACHE_LIMIT = 200_000

    def __init__(
        self,
        alphabet: Sequence[str],
        merges: Sequence[MergeRule],
        target_vocab_size: int,
        profile: ConstraintProfile,
        normalization: NormalizationConfig = DEFAULT_CONFIG,
        min_pair_freq: int = DEFAULT_MIN_PAIR_FREQ,
    ):
        self.alphabet = tuple(alphabet)
        self.merges = tuple(merges)
        self.target_vocab_size = int(target_vocab_size)
        self.constraint_profile = profile
        self.normalization = normalization
        self.min_pair_freq = int(min_pair_freq)

        self.id_to_surface = list(SPECIALS) + list(self.alphabet) + [m.surface for m in self.merges]
        self.vocab = {s: i for i, s in enumerate(self.id_to_surface)}
        if len(self.vocab) != len(self.id_to_surface):
            raise ValueError("duplicate surface in vocabulary")
        self.merge_base = len(SPECIALS) + len(self.alphabet)

        lexicon = profile.effective_lexicon
        flags = bytearray(len(self.id_to_surface))
        n_graphemes = [1] * len(self.id_to_surface)
        pairs = {}
        for i, s in enumerate(self.id_to_surface):
            if i < len(SPECIALS):
                continue
            if s in lexicon:
                flags[i] |= FLAG_SUFFIX
            if starts_with_mark(s):
                flags[i] |= FLAG_MARK
        for m in self.merges:
            left, right = self.vocab[m.left], self.vocab[m.right]
            pairs[(left << 32) | right] = m.rank
            n_graphemes[self.merge_base + m.rank] = n_graphemes[left] + n_graphemes[right]
        self.flags = bytes(flags)
        self.n_graphemes = n_graphemes
        self._table = kernels.MergeTable(pairs, self.flags, self.merge_base, profile.mode == "bengali")
        self._cache: dict[str, tuple[tuple[str, int], ...]] = {}

    # -- identity ---------------------------------------------------------

    @property
    def mode(self) -> str:
        return self.constraint_profile.mode

    @property
    def normalization_fingerprint(self) -> str:
        return self.normalization.fingerprint

    @property
    def config_fingerprint(self) -> str:
        blob = json.dumps(
            {
                "normalization": self.normalization.to_dict(),
                "grammar_version": GRAMMAR_VERSION,
                "mode": self.mode,
                "suffix_lexicon": sorted(self.constraint_profile.effective_lexicon),
                "min_pair_freq": self.min_pair_freq,
                "target_vocab_size": self.target_vocab_size,
            },
            sort_keys=True,
            ensure_ascii=False,
        )
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]

    def __len__(self):
        return len(self.vocab)

    def __repr__(self):
        return (
            f"BpeModel(mode={self.mode!r}, alphabet={len(self.alphabet)}, "
            f"merges={len(self.merges)}, vocab={len(self.vocab)})"
        )

    def truncated(self, k: int) -> "BpeModel":
        """The same model keeping only the first ``k`` merges."""
        return BpeModel(
            self.alphabet,
            self.merges[:k],
            self.target_vocab_size,
            self.constraint_profile,
            self.normalization,
            self.min_pair_freq,
        )

    # -- encoding ---------------------------------------------------------

    def encode_unit(self, unit: str) -> tuple[tuple[str, int], ...]:
        hit = self._cache.get(unit)
        if hit is not None:
            return hit
        gs = graphemes(unit)
        vocab = self.vocab
        ids = self._table.apply([vocab.get(g, UNK_ID) for g in gs])
        out = []
        pos = 0
        id_to_surface = self.id_to_surface
        if UNK_ID in ids:
            for i in ids:
                if i == UNK_ID:
                    out.append((gs[pos], UNK_ID))
                    pos += 1
                else:
                    out.append((id_to_surface[i], i))
                    pos += self.n_graphemes[i]
        else:
            out = [(id_to_surface[i], i) for i in ids]
        res = tuple(out)
        if len(self._cache) >= self.CACHE_LIMIT:
            self._cache.clear()
        self._cache[unit] = res
        return res

    def encode(self, text) -> TokenSequence:
        if isinstance(text, NormalizedText) and text.fingerprint != self.normalization_fingerprint:
            raise FingerprintMismatch(
                f"text normalized with {text.fingerprint}, model expects {self.normalization_fingerprint}"
            )
        tokens: list[tuple[str, int]] = []
        bounds = []
        for word in _content(text).split(" "):
            if not word:
                continue
            bounds.append(len(tokens))
            for unit in _split_word(word):
                tokens.extend(self.encode_unit(unit))
        return TokenSequence(tokens, bounds)

    def decode(self, tokens: TokenSequence) -> str:
        return decode(tokens)

    def decode_ids(self, ids: Iterable[int]) -> str:
        """Best-effort decode of a bare id stream (no word boundaries, UNK lost)."""
        return "".join(self.id_to_surface[i] for i in ids if i >= len(SPECIALS))


def encode(text, model: BpeModel) -> TokenSequence:
    return model.encode(text)


# -- training -----------------------------------------------------------------


def count_words(corpus: Iterable, threads: int = 1) -> Counter:
    texts = [_content(t) for t in corpus]
    if threads <= 1 or len(texts) < 2:
        return Counter(u for t in texts for u in pretokenize(t))
    chunk = (len(texts) + threads - 1) // threads
    parts = [texts[i : i + chunk] for i in range(0, len(texts), chunk)]
    with ThreadPoolExecutor(threads) as pool:
        counters = list(pool.map(lambda p: Counter(u for t in p for u in pretokenize(t)), parts))
    total = Counter()
    for c in counters:
        total.update(c)
    return total


def _allowed_pairs(syms, flags, bengali):
    """Yield (index, pair) for every pair occurrence the constraints allow."""
    last = len(syms) - 1
    for i in range(last):
        left = syms[i]
        right = syms[i + 1]
        if flags[left] & FLAG_MARK:
            continue
        if bengali and i + 1 == last and flags[right] & FLAG_SUFFIX and not flags[left] & FLAG_SUFFIX:
            continue
        yield i, (left, right)


def train(
    corpus: Sequence,
    target_vocab_size: int = DEFAULT_VOCAB_SIZE,
    profile: ConstraintProfile | None = None,
    min_pair_freq: int = DEFAULT_MIN_PAIR_FREQ,
    normalization: NormalizationConfig = DEFAULT_CONFIG,
    threads: int = 1,
) -> BpeModel:
    """Learn a merge table from normalized text.

    Stops when ``len(alphabet) + len(merges)`` reaches ``target_vocab_size``,
    when the best pair is rarer than ``min_pair_freq``, or when no allowed
    pair is left. Ties on frequency go to the lexicographically smallest
    ``(left, right)``. A pair whose concatenation is already in the
    vocabulary is skipped, so every merge adds exactly one entry.
    """
    if profile is None:
        profile = ConstraintProfile.bengali()
    word_counts = count_words(corpus, threads)
    if not word_counts:
        raise EmptyCorpus("corpus contains no words")

    words = sorted(word_counts)
    split = [graphemes(w) for w in words]
    alphabet = sorted({g for gs in split for g in gs})
    if target_vocab_size <= len(alphabet):
        raise TargetTooSmall(f"target {target_vocab_size} <= alphabet size {len(alphabet)}")

    surfaces = list(SPECIALS) + alphabet
    vocab = {s: i for i, s in enumerate(surfaces)}
    lexicon = profile.effective_lexicon
    bengali = profile.mode == "bengali"
    flags = bytearray(len(surfaces))
    for i, s in enumerate(surfaces[len(SPECIALS) :], len(SPECIALS)):
        flags[i] = (FLAG_SUFFIX if s in lexicon else 0) | (FLAG_MARK if starts_with_mark(s) else 0)

    wsyms = [[vocab[g] for g in gs] for gs in split]
    wfreq = [word_counts[w] for w in words]

    counts: dict[tuple[int, int], int] = {}
    where: dict[tuple[int, int], set[int]] = {}
    for w, syms in enumerate(wsyms):
        f = wfreq[w]
        for _, p in _allowed_pairs(syms, flags, bengali):
            counts[p] = counts.get(p, 0) + f
            where.setdefault(p, set()).add(w)

    heap = [(-c, surfaces[a], surfaces[b], a, b) for (a, b), c in counts.items()]
    heapq.heapify(heap)

    merges: list[MergeRule] = []
    banned = set()
    while len(alphabet) + len(merges) < target_vocab_size and heap:
        negc, ls, rs, a, b = heap[0]
        c = counts.get((a, b), 0)
        if c != -negc or (a, b) in banned:
            heapq.heappop(heap)
            continue
        if c < min_pair_freq:
            break
        heapq.heappop(heap)
        surface = ls + rs
        if surface in vocab:
            banned.add((a, b))
            continue

        new = len(surfaces)
        surfaces.append(surface)
        vocab[surface] = new
        flags.append((FLAG_SUFFIX if surface in lexicon else 0) | (FLAG_MARK if starts_with_mark(surface) else 0))
        merges.append(MergeRule(ls, rs, len(merges), c))

        touched = set()
        for w in sorted(where.pop((a, b), ())):
            syms = wsyms[w]
            old = [p for _, p in _allowed_pairs(syms, flags, bengali)]
            allowed_at = {i for i, p in _allowed_pairs(syms, flags, bengali) if p == (a, b)}
            if not allowed_at:
                continue
            merged = []
            i = 0
            n = len(syms)
            while i < n:
                if i in allowed_at and i + 1 < n:
                    merged.append(new)
                    i += 2
                else:
                    merged.append(syms[i])
                    i += 1
            wsyms[w] = merged
            f = wfreq[w]
            for p in old:
                counts[p] -= f
                touched.add(p)
            for _, p in _allowed_pairs(merged, flags, bengali):
                counts[p] = counts.get(p, 0) + f
                where.setdefault(p, set()).add(w)
                touched.add(p)
        for p in touched:
            c = counts[p]
            if c > 0:
                heapq.heappush(heap, (-c, surfaces[p[0]], surfaces[p[1]], p[0], p[1]))
            else:
                del counts[p]
                where.pop(p, None)

    return BpeModel(alphabet, merges, target_vocab_size, profile, normalization, min_pair_freq)
