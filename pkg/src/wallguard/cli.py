"""Command-line entry point: train, classify, eval, bench, serve.

Exit codes: 0 success, 1 usage error (bad flags, bad serve config),
2 data error (unreadable corpus, corrupt model, empty training set).
Primary output goes to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from .corpus import RawMessage, StopList, load_corpus, preprocess, split
from .errors import WallguardError
from .evaluate import (
    EvalConfig,
    benchmark_compare,
    evaluate,
    timing_preprocessing_ablation,
)
from .labels import LABELS
from .nbayes import classify, load_model, save_model, train
from .policy import PolicyConfig, decide
from .reports import (
    render_ablation_table,
    render_comparison_table,
    render_csv,
    render_eval_table,
    report_to_json,
)

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; the contract says usage errors are 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _default_stops() -> StopList:
    from . import default_stoplist_path

    return StopList.from_path(default_stoplist_path())


def _usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE_ERROR


def _dumps(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ------------------------------------------------------------------ commands


def _cmd_train(args) -> int:
    if not math.isfinite(args.alpha) or args.alpha <= 0:
        return _usage(f"--alpha must be a positive finite number, got {args.alpha}")
    corpus = load_corpus(args.corpus)
    stops = _default_stops()
    docs = [preprocess(doc, stops) for doc in corpus.labeled_docs]
    model = train(docs, alpha=args.alpha)
    out = Path(args.out)
    out.write_bytes(save_model(model))
    print(f"trained on {len(docs)} documents")
    print(f"vocabulary size: {len(model.vocabulary)}")
    print("class histogram:")
    for label in LABELS:
        print(f"  {label.value:<14} {corpus.label_histogram.get(label, 0)}")
    print(f"model written to {out}")
    return 0


def _cmd_classify(args) -> int:
    model = load_model(Path(args.model).read_bytes())
    text = sys.stdin.read() if args.stdin else args.text
    doc = preprocess(RawMessage(id="cli", author_id="cli", text=text), _default_stops())
    result = classify(model, doc)
    decision = decide(result, PolicyConfig())
    flagged = sorted(c.value for c in decision.flagged_classes)

    if args.format == "json":
        sys.stdout.write(
            _dumps(
                {
                    "posteriors": {c.value: result.probs[c] for c in LABELS},
                    "argmax": result.argmax.value,
                    "decision": decision.kind.value,
                    "flagged_classes": flagged,
                }
            )
        )
        return 0

    for label in LABELS:
        print(f"{label.value:<14} {result.probs[label]:.6f}")
    print(f"argmax: {result.argmax.value}")
    suffix = f" ({', '.join(flagged)})" if flagged else ""
    print(f"decision: {decision.kind.value}{suffix}")
    return 0


def _cmd_eval(args) -> int:
    if not 0.0 < args.split < 1.0:
        return _usage(f"--split must be in (0, 1), got {args.split}")
    corpus = load_corpus(args.corpus)
    stops = _default_stops()
    train_part, test_part = split(corpus, args.split, args.seed)
    train_docs = [preprocess(doc, stops) for doc in train_part.labeled_docs]
    test_docs = [preprocess(doc, stops) for doc in test_part.labeled_docs]
    start = time.perf_counter_ns()
    model = train(train_docs, alpha=1.0)
    train_ms = (time.perf_counter_ns() - start) / 1e6
    report = evaluate(model, test_docs, train_time_ms=train_ms)

    if args.format == "json":
        sys.stdout.buffer.write(report_to_json(report))
    else:
        print(render_eval_table(report))
    return 0


def _cmd_bench(args) -> int:
    corpus = load_corpus(args.corpus)
    stops = _default_stops()
    cfg = EvalConfig(seed=args.seed)
    comparison = benchmark_compare(corpus, cfg, stops)
    ablation = timing_preprocessing_ablation(corpus, cfg, stops)

    if args.report_dir is not None:
        out = Path(args.report_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_bytes(report_to_json(comparison))
        (out / "report.csv").write_text(render_csv(comparison), encoding="utf-8")
        (out / "report.txt").write_text(
            render_comparison_table(comparison) + "\n", encoding="utf-8"
        )
        (out / "ablation.json").write_bytes(report_to_json(ablation))
        (out / "ablation.csv").write_text(render_csv(ablation), encoding="utf-8")
        (out / "ablation.txt").write_text(
            render_ablation_table(ablation) + "\n", encoding="utf-8"
        )
        from .figures import save_ablation_figures, save_comparison_figures

        written = save_comparison_figures(comparison, out)
        written += save_ablation_figures(ablation, out)
        print(f"report written to {out}/ ({len(written)} figures)", file=sys.stderr)

    if args.format == "json":
        sys.stdout.buffer.write(report_to_json(comparison))
    else:
        print(render_comparison_table(comparison))
        print()
        print(render_ablation_table(ablation))
    return 0


def _cmd_serve(args) -> int:
    from .service import ModerationService, load_config
    from .service.app import create_app

    try:
        config = load_config(args.config)
    except (ValueError, OSError) as exc:
        return _usage(f"cannot load config: {exc}")

    service = ModerationService(config)
    app = create_app(service, ui_dir=config.ui_dir)
    import uvicorn

    print(f"serving on http://{config.host}:{config.port}", file=sys.stderr)
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    finally:
        service.close()
    return 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wallguard", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="COMMAND")

    p_train = sub.add_parser("train", help="train a model and write it to a file")
    p_train.add_argument("--corpus", required=True, help="labeled corpus XML file")
    p_train.add_argument("--alpha", type=float, default=1.0, help="smoothing constant")
    p_train.add_argument("--out", required=True, help="where to write the model JSON")
    p_train.set_defaults(func=_cmd_train)

    p_classify = sub.add_parser("classify", help="score a message with a trained model")
    p_classify.add_argument("--model", required=True, help="model JSON file")
    source = p_classify.add_mutually_exclusive_group(required=True)
    source.add_argument("--text", help="message text to classify")
    source.add_argument("--stdin", action="store_true", help="read the text from stdin")
    p_classify.add_argument("--format", choices=("text", "json"), default="text")
    p_classify.set_defaults(func=_cmd_classify)

    p_eval = sub.add_parser("eval", help="hold out a test split and score the model")
    p_eval.add_argument("--corpus", required=True)
    p_eval.add_argument("--split", type=float, default=0.25, help="test fraction")
    p_eval.add_argument("--seed", type=int, default=42)
    p_eval.add_argument("--format", choices=("text", "json"), default="text")
    p_eval.set_defaults(func=_cmd_eval)

    p_bench = sub.add_parser("bench", help="compare against the reference classifier")
    p_bench.add_argument("--corpus", required=True)
    p_bench.add_argument("--seed", type=int, default=42)
    p_bench.add_argument("--format", choices=("text", "json"), default="text")
    p_bench.add_argument(
        "--report-dir", help="also write report files and figures to this directory"
    )
    p_bench.set_defaults(func=_cmd_bench)

    p_serve = sub.add_parser("serve", help="run the moderation HTTP service")
    p_serve.add_argument("--config", help="service config JSON file")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except WallguardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
