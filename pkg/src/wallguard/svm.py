"""Linear SVM baseline.

One binary hinge-loss problem per class (+1 for the class, -1 for the
rest) on the same bag-of-words features as the probabilistic classifier,
trained with a Pegasos-style stochastic subgradient schedule: step
1/(lambda*t), L2 regularization on the weights, bias left unregularized.
Training is fully deterministic for a fixed (corpus, hyperparams).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

import numpy as np

from .corpus import TokenizedDoc
from .errors import CorruptModel, EmptyTrainingSet, NonPositiveLambda, VersionMismatch
from .labels import LABELS, ClassLabel

MODEL_FORMAT = "svm-model"
MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class SvmHyperparams:
    lam: float = 1e-4
    epochs: int = 20
    seed: int = 42


@dataclass(frozen=True)
class FeatureVector:
    """Sparse token-count vector over a fixed vocabulary index."""

    counts: dict[int, int]

    def __post_init__(self):
        assert all(c >= 1 for c in self.counts.values())


@dataclass(frozen=True, eq=False)
class SvmModel:
    """Per-class dense weight vectors over a shared vocabulary index."""

    vocab_index: dict[str, int]
    weights: dict[ClassLabel, np.ndarray]
    bias: dict[ClassLabel, float]
    hyperparams: SvmHyperparams

    def __eq__(self, other) -> bool:
        if not isinstance(other, SvmModel):
            return NotImplemented
        return (
            self.vocab_index == other.vocab_index
            and self.bias == other.bias
            and self.hyperparams == other.hyperparams
            and all(np.array_equal(self.weights[c], other.weights[c]) for c in LABELS)
        )


def featurize(doc: TokenizedDoc, vocab_index: dict[str, int]) -> FeatureVector:
    """Count in-vocabulary tokens; unknown tokens are dropped."""
    counts: dict[int, int] = {}
    for token in doc.tokens:
        index = vocab_index.get(token)
        if index is not None:
            counts[index] = counts.get(index, 0) + 1
    return FeatureVector(counts=counts)


def train_svm(
    train_set: list[TokenizedDoc], hyperparams: SvmHyperparams = SvmHyperparams()
) -> SvmModel:
    """Train one binary subproblem per class over the shared vocabulary."""
    if not train_set:
        raise EmptyTrainingSet("cannot train on an empty document list")
    if not (hyperparams.lam > 0):
        raise NonPositiveLambda(f"lambda must be > 0, got {hyperparams.lam}")
    if hyperparams.epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {hyperparams.epochs}")
    for doc in train_set:
        if doc.label is None:
            raise ValueError(f"unlabeled doc in training set: {doc.message_id!r}")

    # sorted vocabulary so index assignment is reproducible
    vocab_index = {token: i for i, token in enumerate(sorted({t for d in train_set for t in d.tokens}))}
    features = [featurize(d, vocab_index) for d in train_set]

    weights: dict[ClassLabel, np.ndarray] = {}
    bias: dict[ClassLabel, float] = {}
    lam = hyperparams.lam
    for c in LABELS:
        rng = random.Random(f"{hyperparams.seed}:{c.value}")
        y = [1.0 if d.label is c else -1.0 for d in train_set]
        w = np.zeros(len(vocab_index), dtype=np.float64)
        b = 0.0
        t = 0
        for _ in range(hyperparams.epochs):
            for i in rng.sample(range(len(train_set)), len(train_set)):
                t += 1
                eta = 1.0 / (lam * t)
                x = features[i]
                margin = y[i] * (
                    sum(w[idx] * count for idx, count in x.counts.items()) + b
                )
                w *= 1.0 - eta * lam
                if margin < 1.0:
                    for idx, count in x.counts.items():
                        w[idx] += eta * y[i] * count
                    b += eta * y[i]
        weights[c] = w
        bias[c] = b

    return SvmModel(
        vocab_index=vocab_index, weights=weights, bias=bias, hyperparams=hyperparams
    )


def predict_svm(
    model: SvmModel, doc: TokenizedDoc
) -> tuple[ClassLabel, dict[ClassLabel, float]]:
    """Margins w_c . x + b_c per class; argmax with declaration-order ties."""
    x = featurize(doc, model.vocab_index)
    margins = {
        c: sum(model.weights[c][idx] * count for idx, count in x.counts.items())
        + model.bias[c]
        for c in LABELS
    }
    best = LABELS[0]
    for c in LABELS[1:]:
        if margins[c] > margins[best]:
            best = c
    return best, margins


def save_svm_model(model: SvmModel) -> bytes:
    """Canonical versioned serialization, same convention as the NB model."""
    tokens = sorted(model.vocab_index, key=model.vocab_index.get)
    document = {
        "format": MODEL_FORMAT,
        "format_version": MODEL_FORMAT_VERSION,
        "labels": [c.value for c in LABELS],
        "vocabulary": tokens,
        "weights": {c.value: model.weights[c].tolist() for c in LABELS},
        "bias": {c.value: model.bias[c] for c in LABELS},
        "hyperparams": {
            "lambda": model.hyperparams.lam,
            "epochs": model.hyperparams.epochs,
            "seed": model.hyperparams.seed,
        },
    }
    return (json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode(
        "utf-8"
    )


def load_svm_model(data: bytes) -> SvmModel:
    try:
        document = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptModel(f"unreadable model file: {exc}") from exc
    if not isinstance(document, dict):
        raise CorruptModel("model file is not a JSON object")
    if document.get("format") != MODEL_FORMAT:
        raise CorruptModel(f"not a {MODEL_FORMAT} document")
    if document.get("format_version") != MODEL_FORMAT_VERSION:
        raise VersionMismatch(
            f"model format_version {document.get('format_version')!r} != "
            f"{MODEL_FORMAT_VERSION}"
        )
    try:
        if document["labels"] != [c.value for c in LABELS]:
            raise CorruptModel(f"unexpected label set: {document['labels']!r}")
        tokens = document["vocabulary"]
        vocab_index = {token: i for i, token in enumerate(tokens)}
        if len(vocab_index) != len(tokens):
            raise CorruptModel("vocabulary contains duplicate tokens")
        weights = {}
        bias = {}
        for c in LABELS:
            vector = np.asarray(document["weights"][c.value], dtype=np.float64)
            if vector.shape != (len(tokens),):
                raise CorruptModel(
                    f"weight vector for {c.value} has length {vector.shape[0]}, "
                    f"vocabulary has {len(tokens)}"
                )
            weights[c] = vector
            bias[c] = float(document["bias"][c.value])
        params = document["hyperparams"]
        hyperparams = SvmHyperparams(
            lam=float(params["lambda"]),
            epochs=int(params["epochs"]),
            seed=int(params["seed"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptModel(f"model file is missing or mistypes a field: {exc}") from exc
    return SvmModel(
        vocab_index=vocab_index, weights=weights, bias=bias, hyperparams=hyperparams
    )
