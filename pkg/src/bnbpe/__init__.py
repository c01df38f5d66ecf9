"""Grapheme-aware Byte Pair Encoding for Bengali, with a tokenization and
text-classification benchmark harness."""

__version__ = "0.1.0"

from .normalizer import NormalizationConfig, NormalizedText, clean, normalize_unicode  # noqa: E402
from .grapheme import CodepointClass, GraphemeCluster, classify_codepoint, segment_graphemes  # noqa: E402
from .bpe import (  # noqa: E402
    BpeModel,
    ConstraintProfile,
    MergeRule,
    TokenSequence,
    decode,
    encode,
    is_merge_allowed,
    pretokenize,
    train,
)
from .model_io import load_model, save_model  # noqa: E402
from .baselines import TokenizerHandle, tokenize, whitespace_tokenize  # noqa: E402

__all__ = [
    "BpeModel",
    "CodepointClass",
    "ConstraintProfile",
    "GraphemeCluster",
    "MergeRule",
    "NormalizationConfig",
    "NormalizedText",
    "TokenSequence",
    "TokenizerHandle",
    "classify_codepoint",
    "clean",
    "decode",
    "encode",
    "is_merge_allowed",
    "load_model",
    "normalize_unicode",
    "pretokenize",
    "save_model",
    "segment_graphemes",
    "tokenize",
    "train",
    "whitespace_tokenize",
]
