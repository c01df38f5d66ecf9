"""Downstream classification: TF-IDF over token streams, multinomial
logistic regression, accuracy and macro-F1."""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .errors import EmptyTrainingSet, LengthMismatch, NonFinite, SingleClass

DEFAULT_GRID = (0.25, 0.5, 1.0, 2.0, 4.0)
TFIDF_VARIANT = "raw tf * smoothed idf ln((1+N)/(1+df))+1, L2 row norm, token n-grams (1,2), min_df 2"


def ngrams(tokens: Sequence[str], ngram_range=(1, 2)) -> list[str]:
    lo, hi = ngram_range
    out = []
    for n in range(lo, hi + 1):
        out.extend(" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return out


@dataclass
class SparseVector:
    indices: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.indices)

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.weights, self.weights)))


@dataclass
class TfIdfVectorizer:
    vocabulary: dict[str, int]
    idf: np.ndarray
    n_docs: int
    ngram_range: tuple[int, int] = (1, 2)
    min_df: int = 2

    def __len__(self):
        return len(self.vocabulary)

    def to_bytes(self) -> bytes:
        terms = sorted(self.vocabulary, key=self.vocabulary.get)
        blob = {
            "ngram_range": list(self.ngram_range),
            "min_df": self.min_df,
            "n_docs": self.n_docs,
            "terms": terms,
            "idf": [float(x).hex() for x in self.idf],
        }
        return json.dumps(blob, ensure_ascii=False, sort_keys=True).encode("utf-8")

    def vectorize(self, doc: Sequence[str]) -> SparseVector:
        return vectorize(doc, self)

    def transform(self, docs: Sequence[Sequence[str]]) -> sp.csr_matrix:
        indptr = [0]
        indices = []
        data = []
        for doc in docs:
            v = vectorize(doc, self)
            indices.append(v.indices)
            data.append(v.weights)
            indptr.append(indptr[-1] + len(v))
        return sp.csr_matrix(
            (
                np.concatenate(data) if data else np.zeros(0),
                np.concatenate(indices) if indices else np.zeros(0, dtype=np.int64),
                np.asarray(indptr),
            ),
            shape=(len(docs), len(self.vocabulary)),
        )


def build_tfidf(token_docs: Sequence[Sequence[str]], ngram_range=(1, 2), min_df: int = 2) -> TfIdfVectorizer:
    if not token_docs:
        raise EmptyTrainingSet("no training documents")
    df: dict[str, int] = {}
    for doc in token_docs:
        for g in set(ngrams(doc, ngram_range)):
            df[g] = df.get(g, 0) + 1
    terms = sorted(g for g, c in df.items() if c >= min_df)
    n = len(token_docs)
    idf = np.array([math.log((1 + n) / (1 + df[g])) + 1.0 for g in terms], dtype=np.float64)
    return TfIdfVectorizer({g: i for i, g in enumerate(terms)}, idf, n, tuple(ngram_range), min_df)


def vectorize(doc: Sequence[str], v: TfIdfVectorizer) -> SparseVector:
    counts: dict[int, int] = {}
    vocab = v.vocabulary
    for g in ngrams(doc, v.ngram_range):
        j = vocab.get(g)
        if j is not None:
            counts[j] = counts.get(j, 0) + 1
    idx = np.array(sorted(counts), dtype=np.int64)
    w = np.array([counts[j] for j in idx], dtype=np.float64) * v.idf[idx] if len(idx) else np.zeros(0)
    norm = np.sqrt(np.dot(w, w))
    if norm > 0:
        w = w / norm
    return SparseVector(idx, w)


# -- logistic regression -------------------------------------------------------


@dataclass
class LogisticModel:
    weights: np.ndarray  # classes x features
    bias: np.ndarray
    C: float
    classes: np.ndarray
    n_iter: int = 0
    loss_history: list[float] = field(default_factory=list)

    def decision_function(self, X) -> np.ndarray:
        return np.asarray(X @ self.weights.T) + self.bias

    def predict_proba(self, X) -> np.ndarray:
        return _softmax(self.decision_function(X))

    def predict(self, X) -> np.ndarray:
        return self.classes[np.argmax(self.decision_function(X), axis=1)]


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def _logsumexp(z: np.ndarray) -> np.ndarray:
    m = z.max(axis=1, keepdims=True)
    return (m + np.log(np.exp(z - m).sum(axis=1, keepdims=True)))[:, 0]


def logreg_loss_grad(W, b, X, Y, C):
    """Summed cross-entropy plus ``||W||^2 / (2C)`` and its gradient.

    ``Y`` is the one-hot label matrix; the bias is not regularized.
    """
    Z = np.asarray(X @ W.T) + b
    lse = _logsumexp(Z)
    loss = float(np.sum(lse - np.sum(Z * Y, axis=1)) + np.sum(W * W) / (2.0 * C))
    R = _softmax(Z) - Y
    gW = np.asarray((X.T @ R).T) + W / C
    gb = R.sum(axis=0)
    return loss, gW, gb


def train_logreg(X, y, C: float = 1.0, max_iter: int = 500, tol: float = 1e-5) -> LogisticModel:
    """Full-batch gradient descent with Armijo backtracking from zero init."""
    y = np.asarray(y)
    classes = np.unique(y)
    if len(classes) < 2:
        raise SingleClass("need at least two classes to train")
    if sp.issparse(X):
        X = sp.csr_matrix(X, dtype=np.float64)
    else:
        X = np.asarray(X, dtype=np.float64)
    n, d = X.shape
    k = len(classes)
    Y = np.zeros((n, k))
    Y[np.arange(n), np.searchsorted(classes, y)] = 1.0

    W = np.zeros((k, d))
    b = np.zeros(k)
    loss, gW, gb = logreg_loss_grad(W, b, X, Y, C)
    history = [loss]
    step = 1.0
    it = 0
    for it in range(1, max_iter + 1):
        gnorm2 = float(np.sum(gW * gW) + np.sum(gb * gb))
        if math.sqrt(gnorm2) < tol:
            it -= 1
            break
        step *= 2.0
        while True:
            W_new = W - step * gW
            b_new = b - step * gb
            new_loss, new_gW, new_gb = logreg_loss_grad(W_new, b_new, X, Y, C)
            if not math.isfinite(new_loss):
                if step < 1e-300:
                    raise NonFinite("loss is not finite; check feature scaling")
                step *= 0.5
                continue
            if new_loss <= loss - 1e-4 * step * gnorm2 or step < 1e-20:
                break
            step *= 0.5
        if new_loss > loss:
            # line search bottomed out; no descent possible at this precision
            break
        W, b, loss, gW, gb = W_new, b_new, new_loss, new_gW, new_gb
        history.append(loss)
    if not math.isfinite(loss):
        raise NonFinite("loss is not finite")
    return LogisticModel(W, b, C, classes, it, history)


# -- metrics ----------------------------------------------------------------------


def per_class_f1(y_true, y_pred) -> dict:
    y_true = list(y_true)
    y_pred = list(y_pred)
    if len(y_true) != len(y_pred):
        raise LengthMismatch(f"{len(y_true)} true labels vs {len(y_pred)} predictions")
    out = {}
    for c in sorted(set(y_true)):
        tp = sum(1 for t, p in zip(y_true, y_pred) if t == c and p == c)
        fp = sum(1 for t, p in zip(y_true, y_pred) if t != c and p == c)
        fn = sum(1 for t, p in zip(y_true, y_pred) if t == c and p != c)
        denom = 2 * tp + fp + fn
        out[c] = 2 * tp / denom if denom else 0.0
    return out


def macro_f1(y_true, y_pred) -> float:
    scores = per_class_f1(y_true, y_pred)
    if not scores:
        return 0.0
    return sum(scores.values()) / len(scores)


def accuracy(y_true, y_pred) -> float:
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.shape != y_pred.shape:
        raise LengthMismatch("label arrays differ in length")
    return float(np.mean(y_true == y_pred)) if len(y_true) else 0.0


# -- end to end ---------------------------------------------------------------------


@dataclass
class EvalReport:
    tokenizer: str
    selected_C: float
    val_acc: float
    test_acc: float
    macro_f1: float
    per_class_f1: dict[str, float]
    feature_count: int
    val_acc_by_C: dict[str, float]
    tfidf_variant: str = TFIDF_VARIANT
    classifier: str = "multinomial logistic regression, gradient descent + backtracking"

    def to_dict(self) -> dict:
        return asdict(self)


def tune_and_evaluate(
    corpus,
    handle,
    grid: Sequence[float] = DEFAULT_GRID,
    max_iter: int = 500,
    tol: float = 1e-5,
    workers: int = 1,
) -> EvalReport:
    docs = {
        name: [handle(t).surfaces for t in corpus.texts(name)] for name in ("train", "val", "test")
    }
    labels = {name: np.asarray(corpus.labels(name)) for name in ("train", "val", "test")}
    vec = build_tfidf(docs["train"])
    X = {name: vec.transform(d) for name, d in docs.items()}

    grid = sorted(float(c) for c in grid)

    def fit(C):
        return train_logreg(X["train"], labels["train"], C, max_iter, tol)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            models = list(pool.map(fit, grid))
    else:
        models = [fit(C) for C in grid]

    val_acc = {}
    best = None
    for C, m in zip(grid, models):
        acc = accuracy(labels["val"], m.predict(X["val"])) if len(labels["val"]) else 0.0
        val_acc[repr(C)] = acc
        # strict '>' keeps the smaller C on ties
        if best is None or acc > best[0]:
            best = (acc, C, m)
    acc_val, C, model = best
    pred = model.predict(X["test"])
    f1s = per_class_f1(labels["test"], pred)
    return EvalReport(
        tokenizer=handle.label,
        selected_C=C,
        val_acc=acc_val,
        test_acc=accuracy(labels["test"], pred),
        macro_f1=macro_f1(labels["test"], pred),
        per_class_f1={corpus.label_names[int(c)]: v for c, v in f1s.items()},
        feature_count=len(vec),
        val_acc_by_C=val_acc,
    )
