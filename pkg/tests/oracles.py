"""Independent reference implementations used to check the fast code paths.

These are deliberately naive: they work on strings rather than ids, scan the
whole merge list on every step and compute metrics from a confusion matrix.
"""

from __future__ import annotations

import math
import unicodedata

import numpy as np

from bnbpe.bpe import is_merge_allowed

UNK_ID = 0


def nfkc(text: str) -> str:
    return unicodedata.normalize("NFKC", text)


def rank_scan_encode(symbols, merges, vocab, profile):
    """Brute-force BPE over one pre-tokenized unit.

    ``symbols`` are grapheme surfaces; ``merges`` is the ordered list of
    ``(left, right)`` surface pairs. Each step tries every rule in rank order
    against every position (left to right) and applies the first allowed hit.
    Returns ``[(surface, id), ...]``.
    """
    syms = [(s, s in vocab) for s in symbols]
    while len(syms) > 1:
        hit = None
        for left, right in merges:
            for i in range(len(syms) - 1):
                (ls, lk), (rs, rk) = syms[i], syms[i + 1]
                if not (lk and rk) or ls != left or rs != right:
                    continue
                if is_merge_allowed(ls, rs, word_final=i + 2 == len(syms), profile=profile):
                    hit = i
                    break
            if hit is not None:
                break
        if hit is None:
            break
        syms[hit : hit + 2] = [(syms[hit][0] + syms[hit + 1][0], True)]
    return [(s, vocab[s] if known else UNK_ID) for s, known in syms]


def confusion_macro_f1(y_true, y_pred) -> float:
    labels = sorted(set(y_true))
    index = {c: i for i, c in enumerate(sorted(set(y_true) | set(y_pred)))}
    m = np.zeros((len(index), len(index)), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        m[index[t], index[p]] += 1
    scores = []
    for c in labels:
        k = index[c]
        tp = m[k, k]
        precision = tp / m[:, k].sum() if m[:, k].sum() else 0.0
        recall = tp / m[k, :].sum() if m[k, :].sum() else 0.0
        scores.append(2 * precision * recall / (precision + recall) if precision + recall else 0.0)
    return float(np.mean(scores))


def numeric_gradient(f, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central finite differences of scalar ``f`` at ``x`` (any shape)."""
    g = np.zeros_like(x)
    flat = x.reshape(-1)
    gf = g.reshape(-1)
    for i in range(flat.size):
        old = flat[i]
        flat[i] = old + h
        up = f(x)
        flat[i] = old - h
        down = f(x)
        flat[i] = old
        gf[i] = (up - down) / (2 * h)
    return g


def reference_loss(W, b, X, y, C) -> float:
    """Regularized multinomial log-loss, one sample at a time."""
    X = np.asarray(X.todense() if hasattr(X, "todense") else X)
    total = 0.0
    for row, label in zip(X, y):
        z = W @ row + b
        m = max(z)
        total += m + math.log(sum(math.exp(v - m) for v in z)) - z[label]
    return total + float((W * W).sum()) / (2 * C)
