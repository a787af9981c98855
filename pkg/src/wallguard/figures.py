"""Matplotlib renderings of evaluation reports, written as PNG files.

Import cost is deferred and the Agg backend is forced: these run from
the CLI on headless machines.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

import numpy as np  # noqa: E402

from .evaluate import AblationReport, ComparisonReport, EvalReport  # noqa: E402
from .labels import LABELS  # noqa: E402


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def _confusion_heatmap(report: EvalReport, path: Path) -> Path:
    matrix = np.array(
        [[report.confusion.counts[g][p] for p in LABELS] for g in LABELS], dtype=float
    )
    fig, ax = plt.subplots(figsize=(6, 5))
    image = ax.imshow(matrix, cmap="Blues")
    names = [label.value for label in LABELS]
    ax.set_xticks(range(len(names)), names, rotation=45, ha="right")
    ax.set_yticks(range(len(names)), names)
    ax.set_xlabel("predicted")
    ax.set_ylabel("gold")
    ax.set_title(f"confusion: {report.classifier}")
    threshold = matrix.max() / 2 if matrix.max() else 0.5
    for i in range(len(names)):
        for j in range(len(names)):
            color = "white" if matrix[i, j] > threshold else "black"
            ax.text(j, i, int(matrix[i, j]), ha="center", va="center", color=color)
    fig.colorbar(image, ax=ax, shrink=0.8)
    return _save(fig, path)


def save_comparison_figures(report: ComparisonReport, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    written: list[Path] = []

    fig, ax = plt.subplots(figsize=(5, 4))
    names = ["nbayes", "svm"]
    ax.bar(names, [report.nb.accuracy, report.svm.accuracy], color=["#4878d0", "#ee854a"])
    ax.axhline(report.majority_baseline, linestyle="--", color="gray", label="majority baseline")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("accuracy")
    ax.set_title(f"held-out accuracy ({report.test_size} docs)")
    ax.legend()
    written.append(_save(fig, out / "accuracy.png"))

    fig, ax = plt.subplots(figsize=(7, 4))
    x = np.arange(len(LABELS))
    width = 0.38
    ax.bar(x - width / 2, [report.nb.per_class[c].f1 for c in LABELS], width, label="nbayes")
    ax.bar(x + width / 2, [report.svm.per_class[c].f1 for c in LABELS], width, label="svm")
    ax.set_xticks(x, [c.value for c in LABELS], rotation=30, ha="right")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("F1")
    ax.set_title("per-class F1")
    ax.legend()
    written.append(_save(fig, out / "per_class_f1.png"))

    fig, ax = plt.subplots(figsize=(6, 4))
    x = np.arange(2)
    width = 0.38
    ax.bar(x - width / 2, [report.nb.train_time_ms, report.nb.predict_time_ms], width, label="nbayes")
    ax.bar(x + width / 2, [report.svm.train_time_ms, report.svm.predict_time_ms], width, label="svm")
    ax.set_xticks(x, ["train", "predict"])
    ax.set_ylabel("milliseconds (median of 5)")
    ax.set_title("timing")
    ax.legend()
    written.append(_save(fig, out / "timing.png"))

    written.append(_confusion_heatmap(report.nb, out / "confusion_nbayes.png"))
    written.append(_confusion_heatmap(report.svm, out / "confusion_svm.png"))
    return written


def save_ablation_figures(report: AblationReport, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    written: list[Path] = []
    variants = [report.with_preprocessing, report.without_preprocessing]
    names = [v.name for v in variants]

    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    axes[0].bar(names, [v.vocab_size for v in variants], color=["#4878d0", "#ee854a"])
    axes[0].set_title("vocabulary size")
    axes[1].bar(names, [v.report.accuracy for v in variants], color=["#4878d0", "#ee854a"])
    axes[1].set_ylim(0, 1.05)
    axes[1].set_title("accuracy")
    axes[2].bar(names, [v.report.train_time_ms for v in variants], color=["#4878d0", "#ee854a"])
    axes[2].set_title("train ms (median of 5)")
    for ax in axes:
        ax.tick_params(axis="x", rotation=20)
    fig.suptitle("preprocessing ablation")
    written.append(_save(fig, out / "ablation.png"))
    return written
