"""Command-line interface: synth, extract, run, report.

Exit codes are a stable contract for scripting: 0 success, 1 fatal,
2 partial success (extract finished but some images failed). Diagnostics go
to stderr; stdout carries only data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .config import ExperimentConfig, load_config
from .errors import ConfigError, LogoFuseError
from .evaluation import format_percent
from .harness import (
    extract_corpus_features,
    make_manifest,
    run_experiment,
    scan_corpus,
    write_feature_cache,
    write_results_csv,
    write_results_json,
)
from .synthetic import generate_synthetic_corpus

__all__ = ["main", "build_parser", "render_report"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 means "partial" here, so
    # route usage problems through the fatal path instead.
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="logofuse",
                     description="Classify logo images into BOTH / TEXT / SYMBOL "
                                 "from fused color, texture and shape features.")
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="generate a deterministic synthetic corpus")
    synth.add_argument("--out", required=True, help="corpus root to create")
    synth.add_argument("--per-class", type=int, default=10, help="images per class")
    synth.add_argument("--seed", type=int, default=0)

    extract = sub.add_parser("extract", help="extract features to a CSV cache")
    extract.add_argument("--corpus", help="corpus root (overrides config)")
    extract.add_argument("--config", help="key=value config file")
    extract.add_argument("--out", default=".", help="output directory")
    extract.add_argument("--workers", type=int, default=None)

    run = sub.add_parser("run", help="run the full experiment grid")
    run.add_argument("--corpus", help="corpus root (overrides config)")
    run.add_argument("--config", help="key=value config file")
    run.add_argument("--cache", help="feature cache CSV to reuse or create")
    run.add_argument("--out", default=".", help="output directory")
    run.add_argument("--train-pcts", help="comma list of training percentages")
    run.add_argument("--combos", help="comma list of feature combinations")
    run.add_argument("--seed", type=int, help="split seed")
    run.add_argument("--workers", type=int, default=None)

    report = sub.add_parser("report", help="render result tables from results.json")
    report.add_argument("results", help="path to results.json")

    return parser


def _resolve_workers(workers) -> int:
    if workers is None:
        return os.cpu_count() or 1
    return max(1, workers)


def _build_config(args) -> ExperimentConfig:
    overrides: dict[str, str] = {}
    if getattr(args, "corpus", None):
        overrides["corpus"] = args.corpus
    if getattr(args, "train_pcts", None):
        overrides["train_pcts"] = args.train_pcts
    if getattr(args, "combos", None):
        overrides["combos"] = args.combos
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = str(args.seed)
    return load_config(getattr(args, "config", None), overrides)


def _cmd_synth(args) -> int:
    try:
        manifest = generate_synthetic_corpus(args.out, args.per_class, args.seed)
    except ValueError as exc:
        print(f"error: synth: {exc}", file=sys.stderr)
        return 1
    for label, count in sorted(manifest.counts().items()):
        print(f"{label}\t{count}")
    print(f"TOTAL\t{len(manifest)}")
    return 0


def _cmd_extract(args) -> int:
    config = _build_config(args)
    if config.corpus_root is None:
        raise ConfigError("corpus_root", "no corpus given (use --corpus or the config file)")
    manifest = scan_corpus(config.corpus_root)
    features, ok_indices, failures = extract_corpus_features(
        manifest, config, workers=_resolve_workers(args.workers), strict=False)
    ok_manifest = make_manifest(manifest.entries[i] for i in ok_indices)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    cache_path = out_dir / "features.csv"
    write_feature_cache(cache_path, ok_manifest, features)

    for label, count in sorted(ok_manifest.counts().items()):
        print(f"extracted {label}: {count}", file=sys.stderr)
    print(f"wrote {cache_path} ({len(ok_manifest)} rows)", file=sys.stderr)
    if failures:
        for path, message in failures:
            print(f"failed: {path}: {message}", file=sys.stderr)
        return 2
    return 0


def _cmd_run(args) -> int:
    config = _build_config(args)
    result = run_experiment(config, cache_path=args.cache,
                            workers=_resolve_workers(args.workers))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "results.csv"
    json_path = out_dir / "results.json"
    write_results_csv(csv_path, result)
    write_results_json(json_path, result)
    print(f"wrote {csv_path} and {json_path}", file=sys.stderr)
    return 0


def _cmd_report(args) -> int:
    try:
        with open(args.results, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        text = render_report(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"error: report: cannot read {args.results}: {exc}", file=sys.stderr)
        return 1
    print(text, end="")
    return 0


_METRICS = ("accuracy", "precision", "recall", "f_measure")


def render_report(data: dict) -> str:
    """Per-combination tables plus a best-per-split summary with annotations."""
    combos = list(data["combinations"])
    pcts = list(data["train_percentages"])
    cells = {(c["combo"], c["train_pct"]): c for c in data["cells"]}

    lines = []
    for combo in combos:
        lines.append(f"== {combo} ==")
        lines.extend(_table(
            [[f"{pct:g}"] + [format_percent(cells[(combo, pct)][m]) for m in _METRICS]
             for pct in pcts]))
        lines.append("")

    lines.append("== best per split ==")
    rows = []
    for pct in pcts:
        row = [f"{pct:g}"]
        for metric in _METRICS:
            best_combo = max(combos, key=lambda c: cells[(c, pct)][metric])
            row.append(f"{format_percent(cells[(best_combo, pct)][metric])} ({best_combo})")
        rows.append(row)
    lines.extend(_table(rows))
    lines.append("")
    return "\n".join(lines)


def _table(rows: list[list[str]]) -> list[str]:
    header = ["train%", "accuracy", "precision", "recall", "f_measure"]
    table = [header] + rows
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    return ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
            for row in table]


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 1

    handler = {
        "synth": _cmd_synth,
        "extract": _cmd_extract,
        "run": _cmd_run,
        "report": _cmd_report,
    }[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LogoFuseError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
