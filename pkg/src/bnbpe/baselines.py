"""Whitespace baseline and uniform dispatch over tokenizer kinds."""

from __future__ import annotations

from dataclasses import dataclass

from .bpe import BpeModel, TokenSequence
from .errors import MissingModel
from .normalizer import NormalizedText

KINDS = ("whitespace", "bengali", "generic")
# whitespace tokens have no vocabulary
NO_ID = -1


def whitespace_tokenize(text) -> TokenSequence:
    content = text.content if isinstance(text, NormalizedText) else text
    words = [w for w in content.split(" ") if w]
    return TokenSequence([(w, NO_ID) for w in words], list(range(len(words))))


@dataclass(frozen=True)
class TokenizerHandle:
    kind: str
    model: BpeModel | None = None
    name: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown tokenizer kind {self.kind!r}")
        if self.kind == "whitespace" and self.model is not None:
            raise ValueError("the whitespace tokenizer takes no model")
        if self.model is not None and self.model.mode != self.kind:
            raise ValueError(f"{self.kind} handle given a {self.model.mode}-mode model")

    @property
    def label(self) -> str:
        return self.name or self.kind

    def __call__(self, text) -> TokenSequence:
        return tokenize(self, text)


def tokenize(handle: TokenizerHandle, text) -> TokenSequence:
    if handle.kind == "whitespace":
        return whitespace_tokenize(text)
    if handle.model is None:
        raise MissingModel(f"{handle.kind} tokenizer needs a trained model")
    return handle.model.encode(text)
