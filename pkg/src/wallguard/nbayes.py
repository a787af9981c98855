"""One-vs-rest Naive Bayes over the five content classes.

For each class c the model answers a binary question: given the tokens of
a comment, what is the probability the comment belongs to c rather than
to any of the other classes? The per-token update is

    P(c | token) = P(token | c) P(c) / (P(token | c) P(c) + P(token | not-c) P(not-c))

lifted to a whole comment by multiplying the per-token likelihoods on
each side (naive independence, with token multiplicity). Likelihoods are
Laplace-smoothed and the product is evaluated in log space, so long
comments cannot underflow and unseen tokens stay well-defined.

The five per-class posteriors are independent binary probabilities; they
do not sum to 1 across classes.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass

from .corpus import TokenizedDoc
from .errors import CorruptModel, EmptyTrainingSet, NonPositiveAlpha, VersionMismatch
from .labels import LABELS, ClassLabel

MODEL_FORMAT = "nb-model"
MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class NbModel:
    """Trained state: vocabulary, per-class counts, priors, smoothing."""

    vocabulary: frozenset[str]
    class_token_counts: dict[ClassLabel, dict[str, int]]
    class_token_totals: dict[ClassLabel, int]
    class_doc_counts: dict[ClassLabel, int]
    total_docs: int
    alpha: float

    def prior(self, c: ClassLabel) -> float:
        return self.class_doc_counts[c] / self.total_docs


@dataclass(frozen=True)
class ClassPosterior:
    """Per-class one-vs-rest posteriors plus the winning class.

    ``argmax`` attains the maximum probability; ties go to the earliest
    label in declaration order (neutral first).
    """

    probs: dict[ClassLabel, float]
    argmax: ClassLabel

    @classmethod
    def from_probs(cls, probs: dict[ClassLabel, float]) -> "ClassPosterior":
        best = LABELS[0]
        for label in LABELS[1:]:
            if probs[label] > probs[best]:
                best = label
        return cls(probs=dict(probs), argmax=best)


def train(train_set: list[TokenizedDoc], alpha: float = 1.0) -> NbModel:
    """Count token and document frequencies per class.

    The result is independent of document order. Classes absent from the
    training set get a zero prior (and therefore zero posteriors) rather
    than failing, so partial corpora still train.
    """
    if not train_set:
        raise EmptyTrainingSet("cannot train on an empty document list")
    if not (alpha > 0):
        raise NonPositiveAlpha(f"smoothing constant must be > 0, got {alpha}")

    token_counts: dict[ClassLabel, dict[str, int]] = {label: {} for label in LABELS}
    token_totals: dict[ClassLabel, int] = {label: 0 for label in LABELS}
    doc_counts: dict[ClassLabel, int] = {label: 0 for label in LABELS}
    vocabulary: set[str] = set()

    for doc in train_set:
        if doc.label is None:
            raise ValueError(f"unlabeled doc in training set: {doc.message_id!r}")
        doc_counts[doc.label] += 1
        counts = token_counts[doc.label]
        for token in doc.tokens:
            vocabulary.add(token)
            counts[token] = counts.get(token, 0) + 1
            token_totals[doc.label] += 1

    return NbModel(
        vocabulary=frozenset(vocabulary),
        class_token_counts=token_counts,
        class_token_totals=token_totals,
        class_doc_counts=doc_counts,
        total_docs=len(train_set),
        alpha=alpha,
    )


def token_likelihood(
    model: NbModel, token: str, c: ClassLabel, complement: bool = False
) -> float:
    """Laplace-smoothed probability of one token under class c (or its rest).

    (count + alpha) / (total + alpha * |V|), where count/total are either
    class c's own or, with ``complement``, summed over all other classes.
    Tokens outside the vocabulary use count 0.
    """
    if complement:
        count = sum(
            model.class_token_counts[other].get(token, 0)
            for other in LABELS
            if other is not c
        )
        total = sum(model.class_token_totals[other] for other in LABELS if other is not c)
    else:
        count = model.class_token_counts[c].get(token, 0)
        total = model.class_token_totals[c]
    vocab_size = len(model.vocabulary)
    if vocab_size == 0:
        # Degenerate model trained only on empty docs: no token evidence
        # exists, so both sides of the ratio are flat.
        return 0.5
    return (count + model.alpha) / (total + model.alpha * vocab_size)


def _log_odds(model: NbModel, doc: TokenizedDoc, c: ClassLabel) -> float:
    """log(L_c * P(c)) - log(L_notc * P(not-c)) accumulated per token.

    Contributions are folded per distinct token in sorted order, so the
    result depends only on the bag of words, never on token order.
    """
    prior = model.prior(c)
    score = math.log(prior) - math.log1p(-prior)
    for token, count in sorted(Counter(doc.tokens).items()):
        score += count * (
            math.log(token_likelihood(model, token, c, complement=False))
            - math.log(token_likelihood(model, token, c, complement=True))
        )
    return score


def _sigmoid(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def posterior(model: NbModel, doc: TokenizedDoc, c: ClassLabel) -> float:
    """One-vs-rest posterior probability that ``doc`` belongs to class c.

    Equals L_c P(c) / (L_c P(c) + L_notc P(not-c)) with L the per-token
    likelihood products, evaluated via the logistic form of the log-odds.
    An empty doc returns the prior; a zero-prior class returns 0.
    """
    prior = model.prior(c)
    if prior == 0.0:
        return 0.0
    if prior == 1.0:
        return 1.0
    if not doc.tokens:
        return prior
    return _sigmoid(_log_odds(model, doc, c))


def complement_posterior(model: NbModel, doc: TokenizedDoc, c: ClassLabel) -> float:
    """The same computation with the roles of c and not-c swapped.

    By construction posterior + complement_posterior = 1 (up to float
    rounding); exposed so the complementarity law is directly testable.
    """
    prior = model.prior(c)
    if prior == 0.0:
        return 1.0
    if prior == 1.0:
        return 0.0
    if not doc.tokens:
        return 1.0 - prior
    return _sigmoid(-_log_odds(model, doc, c))


def classify(model: NbModel, doc: TokenizedDoc) -> ClassPosterior:
    """All five one-vs-rest posteriors for a comment."""
    return ClassPosterior.from_probs(
        {c: posterior(model, doc, c) for c in LABELS}
    )


def save_model(model: NbModel) -> bytes:
    """Serialize to the canonical versioned model document.

    Keys are sorted lexicographically, so identical models serialize to
    identical bytes and model files diff cleanly.
    """
    token_table: dict[str, dict[str, int]] = {}
    for label in LABELS:
        for token, count in model.class_token_counts[label].items():
            token_table.setdefault(token, {})[label.value] = count
    document = {
        "format": MODEL_FORMAT,
        "format_version": MODEL_FORMAT_VERSION,
        "alpha": model.alpha,
        "labels": [label.value for label in LABELS],
        "total_docs": model.total_docs,
        "class_doc_counts": {label.value: model.class_doc_counts[label] for label in LABELS},
        "class_token_totals": {
            label.value: model.class_token_totals[label] for label in LABELS
        },
        "token_counts": token_table,
    }
    return (json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode(
        "utf-8"
    )


def load_model(data: bytes) -> NbModel:
    """Parse a model document; the inverse of save_model."""
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
    known = {label.value for label in LABELS}
    try:
        if document["labels"] != [label.value for label in LABELS]:
            raise CorruptModel(f"unexpected label set: {document['labels']!r}")
        for field in ("class_doc_counts", "class_token_totals"):
            extra = set(document[field]) - known
            if extra:
                raise CorruptModel(f"{field} has unknown classes: {sorted(extra)}")
        alpha = float(document["alpha"])
        total_docs = int(document["total_docs"])
        doc_counts = {
            label: int(document["class_doc_counts"][label.value]) for label in LABELS
        }
        token_totals = {
            label: int(document["class_token_totals"][label.value]) for label in LABELS
        }
        token_counts: dict[ClassLabel, dict[str, int]] = {label: {} for label in LABELS}
        for token, per_class in document["token_counts"].items():
            for value, count in per_class.items():
                token_counts[ClassLabel.from_string(value)][token] = int(count)
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptModel(f"model file is missing or mistypes a field: {exc}") from exc

    return NbModel(
        vocabulary=frozenset(document["token_counts"].keys()),
        class_token_counts=token_counts,
        class_token_totals=token_totals,
        class_doc_counts=doc_counts,
        total_docs=total_docs,
        alpha=alpha,
    )
