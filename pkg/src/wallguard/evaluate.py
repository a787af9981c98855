"""Evaluation harness: accuracy metrics, classifier comparison, ablation.

Timings use the monotonic clock and report the median of 5 runs in
milliseconds. Everything except the timing fields is deterministic for a
fixed (corpus, config) pair.
"""

from __future__ import annotations

import hashlib
import json
import statistics
import time
from dataclasses import dataclass, replace

from .corpus import Corpus, StopList, TokenizedDoc, preprocess, split, tokenize_whitespace
from .errors import EmptyTestSet, EmptyTrainingSet
from .labels import LABELS, ClassLabel
from .nbayes import NbModel, classify, train
from .svm import SvmHyperparams, SvmModel, predict_svm, train_svm

TIMING_RUNS = 5


@dataclass(frozen=True)
class EvalConfig:
    test_fraction: float = 0.25
    seed: int = 42
    alpha: float = 1.0
    svm: SvmHyperparams = SvmHyperparams()


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts[gold][predicted] over the five classes."""

    counts: dict[ClassLabel, dict[ClassLabel, int]]

    @classmethod
    def from_pairs(cls, pairs) -> "ConfusionMatrix":
        counts = {g: {p: 0 for p in LABELS} for g in LABELS}
        for gold, predicted in pairs:
            counts[gold][predicted] += 1
        return cls(counts=counts)

    @property
    def total(self) -> int:
        return sum(sum(row.values()) for row in self.counts.values())

    @property
    def trace(self) -> int:
        return sum(self.counts[c][c] for c in LABELS)

    def row_sum(self, gold: ClassLabel) -> int:
        return sum(self.counts[gold].values())

    def col_sum(self, predicted: ClassLabel) -> int:
        return sum(self.counts[g][predicted] for g in LABELS)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvalReport:
    classifier: str
    correct: int
    incorrect: int
    accuracy: float
    per_class: dict[ClassLabel, ClassMetrics]
    confusion: ConfusionMatrix
    train_time_ms: float
    predict_time_ms: float
    notes: tuple[str, ...]


@dataclass(frozen=True)
class ComparisonReport:
    nb: EvalReport
    svm: EvalReport
    corpus_fingerprint: str
    config_fingerprint: str
    majority_baseline: float
    test_size: int


@dataclass(frozen=True)
class AblationVariant:
    name: str
    vocab_size: int
    report: EvalReport


@dataclass(frozen=True)
class AblationReport:
    with_preprocessing: AblationVariant
    without_preprocessing: AblationVariant
    corpus_fingerprint: str


def _median_ms(fn) -> float:
    samples = []
    for _ in range(TIMING_RUNS):
        start = time.perf_counter_ns()
        fn()
        samples.append((time.perf_counter_ns() - start) / 1e6)
    return statistics.median(samples)


def _predictor(classifier):
    if isinstance(classifier, NbModel):
        return "nbayes", lambda doc: classify(classifier, doc).argmax
    if isinstance(classifier, SvmModel):
        return "svm", lambda doc: predict_svm(classifier, doc)[0]
    raise TypeError(f"cannot evaluate a {type(classifier).__name__}")


def evaluate(classifier, test: list[TokenizedDoc], train_time_ms: float = 0.0) -> EvalReport:
    """Score a trained classifier on labeled docs.

    train_time_ms is stamped into the report by the caller that actually
    trained the model; this function only times prediction.
    """
    if not test:
        raise EmptyTestSet("cannot evaluate on an empty test set")
    for doc in test:
        if doc.label is None:
            raise ValueError(f"unlabeled doc in test set: {doc.message_id!r}")

    name, predict = _predictor(classifier)
    predictions = [predict(doc) for doc in test]
    predict_time_ms = _median_ms(lambda: [predict(doc) for doc in test])

    confusion = ConfusionMatrix.from_pairs(zip((d.label for d in test), predictions))
    correct = confusion.trace
    total = confusion.total

    per_class: dict[ClassLabel, ClassMetrics] = {}
    notes: list[str] = []
    for c in LABELS:
        diag = confusion.counts[c][c]
        predicted = confusion.col_sum(c)
        gold = confusion.row_sum(c)
        if predicted == 0:
            precision = 0.0
            notes.append(f"precision({c.value}): never predicted, 0/0 defined as 0")
        else:
            precision = diag / predicted
        if gold == 0:
            recall = 0.0
            notes.append(f"recall({c.value}): absent from test set, 0/0 defined as 0")
        else:
            recall = diag / gold
        if precision + recall == 0.0:
            f1 = 0.0
            if predicted > 0 and gold > 0:
                notes.append(f"f1({c.value}): precision and recall both 0, defined as 0")
        else:
            f1 = 2 * precision * recall / (precision + recall)
        per_class[c] = ClassMetrics(precision=precision, recall=recall, f1=f1, support=gold)

    return EvalReport(
        classifier=name,
        correct=correct,
        incorrect=total - correct,
        accuracy=correct / total,
        per_class=per_class,
        confusion=confusion,
        train_time_ms=train_time_ms,
        predict_time_ms=predict_time_ms,
        notes=tuple(notes),
    )


def corpus_fingerprint(corpus: Corpus) -> str:
    from .corpus import corpus_to_xml

    return hashlib.sha256(corpus_to_xml(corpus)).hexdigest()


def config_fingerprint(cfg: EvalConfig, stops: StopList) -> str:
    payload = {
        "test_fraction": cfg.test_fraction,
        "seed": cfg.seed,
        "alpha": cfg.alpha,
        "svm": {"lambda": cfg.svm.lam, "epochs": cfg.svm.epochs, "seed": cfg.svm.seed},
        "stops": hashlib.sha256(
            "\n".join(sorted(stops.entries)).encode("utf-8")
        ).hexdigest(),
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8")).hexdigest()


def benchmark_compare(corpus: Corpus, cfg: EvalConfig, stops: StopList) -> ComparisonReport:
    """Train and evaluate both classifiers on one identical split."""
    if not corpus.labeled_docs:
        raise EmptyTrainingSet("corpus has no labeled messages")
    train_c, test_c = split(corpus, cfg.test_fraction, cfg.seed)
    train_docs = [preprocess(d, stops) for d in train_c.labeled_docs]
    test_docs = [preprocess(d, stops) for d in test_c.labeled_docs]

    nb_train_ms = _median_ms(lambda: train(train_docs, alpha=cfg.alpha))
    nb_model = train(train_docs, alpha=cfg.alpha)
    nb_report = evaluate(nb_model, test_docs, train_time_ms=nb_train_ms)

    svm_train_ms = _median_ms(lambda: train_svm(train_docs, cfg.svm))
    svm_model = train_svm(train_docs, cfg.svm)
    svm_report = evaluate(svm_model, test_docs, train_time_ms=svm_train_ms)

    majority = max(train_c.label_histogram, key=train_c.label_histogram.get)
    baseline = sum(1 for d in test_docs if d.label is majority) / len(test_docs)

    return ComparisonReport(
        nb=nb_report,
        svm=svm_report,
        corpus_fingerprint=corpus_fingerprint(corpus),
        config_fingerprint=config_fingerprint(cfg, stops),
        majority_baseline=baseline,
        test_size=len(test_docs),
    )


def timing_preprocessing_ablation(
    corpus: Corpus, cfg: EvalConfig, stops: StopList
) -> AblationReport:
    """The classifier pipeline with full preprocessing vs whitespace splitting.

    The whitespace variant keeps case and punctuation and disables the
    stop list, which is the closest runnable reading of skipping
    preprocessing altogether.
    """
    if not corpus.labeled_docs:
        raise EmptyTrainingSet("corpus has no labeled messages")
    train_c, test_c = split(corpus, cfg.test_fraction, cfg.seed)

    variants: dict[str, AblationVariant] = {}
    for name, tokenizer in (
        ("with_preprocessing", lambda d: preprocess(d, stops)),
        ("without_preprocessing", tokenize_whitespace),
    ):
        train_docs = [tokenizer(d) for d in train_c.labeled_docs]
        test_docs = [tokenizer(d) for d in test_c.labeled_docs]
        train_ms = _median_ms(lambda: train(train_docs, alpha=cfg.alpha))
        model = train(train_docs, alpha=cfg.alpha)
        report = evaluate(model, test_docs, train_time_ms=train_ms)
        variants[name] = AblationVariant(
            name=name, vocab_size=len(model.vocabulary), report=report
        )

    return AblationReport(
        with_preprocessing=variants["with_preprocessing"],
        without_preprocessing=variants["without_preprocessing"],
        corpus_fingerprint=corpus_fingerprint(corpus),
    )


def strip_timings(report):
    """Zero every timing field, for determinism comparisons."""
    if isinstance(report, EvalReport):
        return replace(report, train_time_ms=0.0, predict_time_ms=0.0)
    if isinstance(report, ComparisonReport):
        return replace(report, nb=strip_timings(report.nb), svm=strip_timings(report.svm))
    if isinstance(report, AblationReport):
        return replace(
            report,
            with_preprocessing=replace(
                report.with_preprocessing,
                report=strip_timings(report.with_preprocessing.report),
            ),
            without_preprocessing=replace(
                report.without_preprocessing,
                report=strip_timings(report.without_preprocessing.report),
            ),
        )
    raise TypeError(f"cannot strip timings from {type(report).__name__}")
