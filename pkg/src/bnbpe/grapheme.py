"""Bengali grapheme clusters, the initial symbols of BPE training.

A cluster follows::

    IndependentVowel Modifier*
    Consonant Nukta? (Virama Joiner? Consonant Nukta?)* DependentVowelSign? Modifier*

Space and punctuation are singleton clusters. A combining mark that cannot
legally extend the open cluster is glued onto it anyway and the cluster is
flagged ``degenerate``; with nothing to glue onto (start of a word) it opens a
degenerate cluster of its own. That keeps segmentation total and lossless on
arbitrary input.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import IntEnum

from . import kernels
from .normalizer import DEFAULT_PUNCTUATION, NormalizedText


class CodepointClass(IntEnum):
    OTHER = 0
    INDEPENDENT_VOWEL = 1
    CONSONANT = 2
    DEPENDENT_VOWEL_SIGN = 3
    VIRAMA = 4
    NUKTA = 5
    MODIFIER = 6
    JOINER = 7
    PUNCTUATION = 8
    SPACE = 9


C = CodepointClass

# Classes that may never start a token surface.
COMBINING = frozenset({C.DEPENDENT_VOWEL_SIGN, C.VIRAMA, C.NUKTA, C.MODIFIER, C.JOINER})
MARK_START = frozenset({C.DEPENDENT_VOWEL_SIGN, C.VIRAMA, C.NUKTA, C.MODIFIER})

# Grammar revision; part of the model fingerprint.
GRAMMAR_VERSION = 1


def _bengali_class(cp: int) -> CodepointClass:
    if 0x0981 <= cp <= 0x0983:
        return C.MODIFIER
    if 0x0985 <= cp <= 0x0994 or cp in (0x098C, 0x09E0, 0x09E1):
        return C.INDEPENDENT_VOWEL
    if 0x0995 <= cp <= 0x09B9 or 0x09DC <= cp <= 0x09DF or cp in (0x09CE, 0x09F0, 0x09F1):
        return C.CONSONANT
    if cp == 0x09BC:
        return C.NUKTA
    if 0x09BE <= cp <= 0x09CC or cp in (0x09D7, 0x09E2, 0x09E3):
        return C.DEPENDENT_VOWEL_SIGN
    if cp == 0x09CD:
        return C.VIRAMA
    return C.OTHER


def _classify(cp: int) -> CodepointClass:
    ch = chr(cp)
    if 0x0980 <= cp <= 0x09FF:
        if unicodedata.category(ch) == "Cn":
            return C.OTHER
        return _bengali_class(cp)
    if cp in (0x200C, 0x200D):
        return C.JOINER
    if cp == 0x20 or ch.isspace():
        return C.SPACE
    if cp in DEFAULT_PUNCTUATION or unicodedata.category(ch).startswith("P"):
        return C.PUNCTUATION
    return C.OTHER


# Class of every BMP codepoint, one byte each; consumed by the kernels.
CLASS_TABLE = bytes(_classify(cp) for cp in range(0x10000))


def classify_codepoint(cp: int) -> CodepointClass:
    if cp < 0x10000:
        return C(CLASS_TABLE[cp])
    return _classify(cp)


def _classify_wide(cp: int) -> int:
    return int(_classify(cp))


@dataclass(frozen=True)
class GraphemeCluster:
    surface: str
    degenerate: bool = False

    @property
    def codepoints(self) -> tuple[int, ...]:
        return tuple(map(ord, self.surface))


def segment_bounds(text: str) -> list[int]:
    """Cluster end offsets into ``text``, each shifted left one bit with the
    low bit set for degenerate clusters."""
    return kernels.segment(text, CLASS_TABLE, _classify_wide)


def segment_graphemes(text) -> list[GraphemeCluster]:
    content = text.content if isinstance(text, NormalizedText) else text
    out = []
    start = 0
    for packed in segment_bounds(content):
        end = packed >> 1
        out.append(GraphemeCluster(content[start:end], bool(packed & 1)))
        start = end
    return out


def graphemes(text: str) -> list[str]:
    """Cluster surfaces only; the hot path used by training and encoding."""
    out = []
    start = 0
    for packed in segment_bounds(text):
        end = packed >> 1
        out.append(text[start:end])
        start = end
    return out


def starts_with_mark(surface: str) -> bool:
    return bool(surface) and classify_codepoint(ord(surface[0])) in MARK_START
