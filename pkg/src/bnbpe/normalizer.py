"""Bengali text cleaning: web-artifact stripping, NFKC, character filtering
and whitespace collapse.

The pipeline order is fixed (web strip -> NFKC -> filter -> collapse) and is
folded into :attr:`NormalizationConfig.fingerprint`, so a model trained on
text cleaned one way refuses text cleaned another way.
"""

from __future__ import annotations

import hashlib
import json
import re
import unicodedata
from dataclasses import dataclass, field

BENGALI_BLOCK = (0x0980, 0x09FF)
BENGALI_DIGITS = (0x09E6, 0x09EF)
VIRAMA = 0x09CD
ZWNJ = 0x200C
ZWJ = 0x200D

DEFAULT_PUNCTUATION = frozenset(map(ord, "।॥.,!?;:'\"()-"))

# Bumped whenever the cleaning steps change behaviour.
PIPELINE_VERSION = 1

_TAG_RE = re.compile(r"<[^>]*>")
_URL_RE = re.compile(r"(?:https?://|www\.)\S*", re.IGNORECASE)

# Emoji and pictograph blocks, plus the variation selectors and ZWJ-sequence
# helpers that travel with them.
_EMOJI_RANGES = (
    (0x1F000, 0x1FAFF),
    (0x2600, 0x27BF),
    (0x2B00, 0x2BFF),
    (0x1F1E6, 0x1F1FF),
    (0xFE00, 0xFE0F),
    (0xE0020, 0xE007F),
    (0x2300, 0x23FF),
)
_EMOJI_RE = re.compile(
    "[" + "".join(f"\\U{lo:08X}-\\U{hi:08X}" for lo, hi in _EMOJI_RANGES) + "]"
)


@dataclass(frozen=True)
class NormalizationConfig:
    apply_nfkc: bool = True
    retain_ranges: tuple[tuple[int, int], ...] = (BENGALI_BLOCK,)
    keep_punctuation: frozenset[int] = DEFAULT_PUNCTUATION
    strip_numerals: bool = True
    strip_web_artifacts: bool = True

    def __post_init__(self):
        ranges = tuple(sorted((int(lo), int(hi)) for lo, hi in self.retain_ranges))
        if not any(lo <= BENGALI_BLOCK[0] and hi >= BENGALI_BLOCK[1] for lo, hi in ranges):
            raise ValueError("retain_ranges must cover U+0980-U+09FF")
        punct = frozenset(int(cp) for cp in self.keep_punctuation)
        for cp in punct:
            if any(lo <= cp <= hi for lo, hi in ranges):
                raise ValueError(f"keep_punctuation overlaps retain_ranges at U+{cp:04X}")
        if 0x20 in punct:
            raise ValueError("space is handled by whitespace collapse, not keep_punctuation")
        object.__setattr__(self, "retain_ranges", ranges)
        object.__setattr__(self, "keep_punctuation", punct)

    def to_dict(self) -> dict:
        return {
            "pipeline_version": PIPELINE_VERSION,
            "apply_nfkc": self.apply_nfkc,
            "retain_ranges": [list(r) for r in self.retain_ranges],
            "keep_punctuation": sorted(self.keep_punctuation),
            "strip_numerals": self.strip_numerals,
            "strip_web_artifacts": self.strip_web_artifacts,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NormalizationConfig":
        if d.get("pipeline_version", PIPELINE_VERSION) != PIPELINE_VERSION:
            raise ValueError(f"unsupported normalization pipeline version {d['pipeline_version']}")
        return cls(
            apply_nfkc=bool(d["apply_nfkc"]),
            retain_ranges=tuple(tuple(r) for r in d["retain_ranges"]),
            keep_punctuation=frozenset(d["keep_punctuation"]),
            strip_numerals=bool(d["strip_numerals"]),
            strip_web_artifacts=bool(d["strip_web_artifacts"]),
        )

    @property
    def fingerprint(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]

    def is_retained(self, cp: int) -> bool:
        if self.strip_numerals and BENGALI_DIGITS[0] <= cp <= BENGALI_DIGITS[1]:
            return False
        return any(lo <= cp <= hi for lo, hi in self.retain_ranges)


DEFAULT_CONFIG = NormalizationConfig()


@dataclass(frozen=True)
class NormalizedText:
    content: str
    source_length: int = 0
    fingerprint: str = field(default=DEFAULT_CONFIG.fingerprint, compare=False)

    def __str__(self):
        return self.content

    def __len__(self):
        return len(self.content)


def normalize_unicode(text: str) -> str:
    return unicodedata.normalize("NFKC", text)


def strip_web_artifacts(text: str) -> str:
    # Replace with spaces so that "a<br>b" does not glue two words together.
    text = _TAG_RE.sub(" ", text)
    text = _URL_RE.sub(" ", text)
    return _EMOJI_RE.sub(" ", text)


def _filter(text: str, config: NormalizationConfig) -> str:
    out = []
    for ch in text:
        cp = ord(ch)
        if ch.isspace():
            out.append(" ")
        elif cp == ZWNJ or cp == ZWJ:
            # joiners only matter right after a virama
            if out and ord(out[-1]) == VIRAMA:
                out.append(ch)
        elif cp in config.keep_punctuation or config.is_retained(cp):
            out.append(ch)
    return "".join(out)


def _collapse(text: str) -> str:
    return " ".join(part for part in text.split(" ") if part)


def clean(text: str, config: NormalizationConfig = DEFAULT_CONFIG) -> NormalizedText:
    """Run the full cleaning pipeline and return a :class:`NormalizedText`.

    Filtering can bring two marks together that NFKC would compose or
    reorder (``ে`` X ``া`` with X dropped), so NFKC and the filter are
    repeated until the string stops changing. This is what makes the
    pipeline idempotent.
    """
    source_length = len(text)
    if config.strip_web_artifacts:
        text = strip_web_artifacts(text)
    while True:
        nxt = normalize_unicode(text) if config.apply_nfkc else text
        nxt = _collapse(_filter(nxt, config))
        if nxt == text:
            break
        text = nxt
    return NormalizedText(text, source_length, config.fingerprint)


def as_normalized(text, config: NormalizationConfig = DEFAULT_CONFIG) -> NormalizedText:
    """Wrap ``text`` without re-cleaning it; for input known to be clean."""
    if isinstance(text, NormalizedText):
        return text
    return NormalizedText(text, len(text), config.fingerprint)
