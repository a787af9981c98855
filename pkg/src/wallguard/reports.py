"""Report serialization and rendering.

Reports persist as canonical JSON (sorted keys, two-space indent,
trailing newline) under versioned format tags, and render as aligned
plain-text tables in the correct / incorrect / time shape, plus CSV for
spreadsheet import.
"""

from __future__ import annotations

import csv
import io
import json

from .errors import CorruptModel, VersionMismatch
from .evaluate import (
    AblationReport,
    AblationVariant,
    ClassMetrics,
    ComparisonReport,
    ConfusionMatrix,
    EvalReport,
)
from .labels import LABELS, ClassLabel

REPORT_FORMAT_VERSION = 1

_FORMATS = {
    "eval-report": EvalReport,
    "comparison-report": ComparisonReport,
    "ablation-report": AblationReport,
}


def _canonical(document: dict) -> bytes:
    return (json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode(
        "utf-8"
    )


def _eval_body(report: EvalReport) -> dict:
    return {
        "classifier": report.classifier,
        "correct": report.correct,
        "incorrect": report.incorrect,
        "accuracy": report.accuracy,
        "per_class": {
            c.value: {
                "precision": m.precision,
                "recall": m.recall,
                "f1": m.f1,
                "support": m.support,
            }
            for c, m in report.per_class.items()
        },
        "confusion": {
            gold.value: {pred.value: n for pred, n in row.items()}
            for gold, row in report.confusion.counts.items()
        },
        "train_time_ms": report.train_time_ms,
        "predict_time_ms": report.predict_time_ms,
        "notes": list(report.notes),
    }


def _eval_from_body(body: dict) -> EvalReport:
    per_class = {
        ClassLabel.from_string(value): ClassMetrics(
            precision=float(m["precision"]),
            recall=float(m["recall"]),
            f1=float(m["f1"]),
            support=int(m["support"]),
        )
        for value, m in body["per_class"].items()
    }
    confusion = ConfusionMatrix(
        counts={
            ClassLabel.from_string(gold): {
                ClassLabel.from_string(pred): int(n) for pred, n in row.items()
            }
            for gold, row in body["confusion"].items()
        }
    )
    return EvalReport(
        classifier=body["classifier"],
        correct=int(body["correct"]),
        incorrect=int(body["incorrect"]),
        accuracy=float(body["accuracy"]),
        per_class=per_class,
        confusion=confusion,
        train_time_ms=float(body["train_time_ms"]),
        predict_time_ms=float(body["predict_time_ms"]),
        notes=tuple(body["notes"]),
    )


def report_to_json(report) -> bytes:
    if isinstance(report, EvalReport):
        document = {"format": "eval-report", **_eval_body(report)}
    elif isinstance(report, ComparisonReport):
        document = {
            "format": "comparison-report",
            "nb": _eval_body(report.nb),
            "svm": _eval_body(report.svm),
            "corpus_fingerprint": report.corpus_fingerprint,
            "config_fingerprint": report.config_fingerprint,
            "majority_baseline": report.majority_baseline,
            "test_size": report.test_size,
        }
    elif isinstance(report, AblationReport):
        document = {
            "format": "ablation-report",
            "variants": {
                variant.name: {
                    "vocab_size": variant.vocab_size,
                    "report": _eval_body(variant.report),
                }
                for variant in (report.with_preprocessing, report.without_preprocessing)
            },
            "corpus_fingerprint": report.corpus_fingerprint,
        }
    else:
        raise TypeError(f"cannot serialize a {type(report).__name__}")
    document["format_version"] = REPORT_FORMAT_VERSION
    return _canonical(document)


def report_from_json(data: bytes):
    try:
        document = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptModel(f"unreadable report file: {exc}") from exc
    if not isinstance(document, dict) or document.get("format") not in _FORMATS:
        raise CorruptModel("not a report document")
    if document.get("format_version") != REPORT_FORMAT_VERSION:
        raise VersionMismatch(
            f"report format_version {document.get('format_version')!r} != "
            f"{REPORT_FORMAT_VERSION}"
        )
    kind = document["format"]
    try:
        if kind == "eval-report":
            return _eval_from_body(document)
        if kind == "comparison-report":
            return ComparisonReport(
                nb=_eval_from_body(document["nb"]),
                svm=_eval_from_body(document["svm"]),
                corpus_fingerprint=document["corpus_fingerprint"],
                config_fingerprint=document["config_fingerprint"],
                majority_baseline=float(document["majority_baseline"]),
                test_size=int(document["test_size"]),
            )
        variants = document["variants"]
        return AblationReport(
            with_preprocessing=AblationVariant(
                name="with_preprocessing",
                vocab_size=int(variants["with_preprocessing"]["vocab_size"]),
                report=_eval_from_body(variants["with_preprocessing"]["report"]),
            ),
            without_preprocessing=AblationVariant(
                name="without_preprocessing",
                vocab_size=int(variants["without_preprocessing"]["vocab_size"]),
                report=_eval_from_body(variants["without_preprocessing"]["report"]),
            ),
            corpus_fingerprint=document["corpus_fingerprint"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptModel(f"report file is missing or mistypes a field: {exc}") from exc


def _rows_to_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [
        max(len(str(headers[i])), *(len(str(row[i])) for row in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]
    lines = [
        "  ".join(str(headers[i]).ljust(widths[i]) for i in range(len(headers))).rstrip()
    ]
    lines.append("  ".join("-" * widths[i] for i in range(len(headers))))
    for row in rows:
        lines.append(
            "  ".join(str(row[i]).ljust(widths[i]) for i in range(len(row))).rstrip()
        )
    return "\n".join(lines)


def _summary_row(report: EvalReport) -> list[str]:
    return [
        report.classifier,
        str(report.correct),
        str(report.incorrect),
        f"{report.accuracy:.4f}",
        f"{report.train_time_ms:.2f}",
        f"{report.predict_time_ms:.2f}",
    ]


_SUMMARY_HEADERS = ["classifier", "correct", "incorrect", "accuracy", "train_ms", "predict_ms"]


def render_eval_table(report: EvalReport) -> str:
    parts = [_rows_to_table(_SUMMARY_HEADERS, [_summary_row(report)])]
    class_rows = [
        [
            c.value,
            f"{report.per_class[c].precision:.4f}",
            f"{report.per_class[c].recall:.4f}",
            f"{report.per_class[c].f1:.4f}",
            str(report.per_class[c].support),
        ]
        for c in LABELS
    ]
    parts.append(
        _rows_to_table(["class", "precision", "recall", "f1", "support"], class_rows)
    )
    if report.notes:
        parts.append("\n".join(f"note: {note}" for note in report.notes))
    return "\n\n".join(parts)


def render_comparison_table(report: ComparisonReport) -> str:
    summary = _rows_to_table(
        _SUMMARY_HEADERS, [_summary_row(report.nb), _summary_row(report.svm)]
    )
    footer = (
        f"majority baseline {report.majority_baseline:.4f} over {report.test_size} test docs\n"
        f"corpus sha256 {report.corpus_fingerprint}\n"
        f"config sha256 {report.config_fingerprint}"
    )
    sections = [summary]
    for sub in (report.nb, report.svm):
        sections.append(f"[{sub.classifier}]\n{render_eval_table(sub)}")
    sections.append(footer)
    return "\n\n".join(sections)


def render_ablation_table(report: AblationReport) -> str:
    rows = []
    for variant in (report.with_preprocessing, report.without_preprocessing):
        rows.append(
            [
                variant.name,
                str(variant.vocab_size),
                f"{variant.report.accuracy:.4f}",
                f"{variant.report.train_time_ms:.2f}",
                f"{variant.report.predict_time_ms:.2f}",
            ]
        )
    table = _rows_to_table(
        ["variant", "vocab_size", "accuracy", "train_ms", "predict_ms"], rows
    )
    return f"{table}\ncorpus sha256 {report.corpus_fingerprint}"


_CSV_HEADERS = [
    "classifier",
    "scope",
    "correct",
    "incorrect",
    "accuracy",
    "precision",
    "recall",
    "f1",
    "support",
    "train_time_ms",
    "predict_time_ms",
]


def _csv_rows(report: EvalReport, name: str | None = None) -> list[list]:
    name = name or report.classifier
    rows = [
        [
            name,
            "overall",
            report.correct,
            report.incorrect,
            report.accuracy,
            "",
            "",
            "",
            report.correct + report.incorrect,
            report.train_time_ms,
            report.predict_time_ms,
        ]
    ]
    for c in LABELS:
        m = report.per_class[c]
        rows.append(
            [name, c.value, "", "", "", m.precision, m.recall, m.f1, m.support, "", ""]
        )
    return rows


def render_csv(report) -> str:
    if isinstance(report, EvalReport):
        sections = [(report, None)]
    elif isinstance(report, ComparisonReport):
        sections = [(report.nb, None), (report.svm, None)]
    elif isinstance(report, AblationReport):
        sections = [
            (report.with_preprocessing.report, report.with_preprocessing.name),
            (report.without_preprocessing.report, report.without_preprocessing.name),
        ]
    else:
        raise TypeError(f"cannot render a {type(report).__name__} as CSV")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_CSV_HEADERS)
    for section, name in sections:
        writer.writerows(_csv_rows(section, name))
    return buffer.getvalue()
