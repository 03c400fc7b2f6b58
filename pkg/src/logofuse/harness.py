"""Corpus scanning, deterministic splits, and the experiment grid.

Corpus layout: ``<root>/<CLASS>/<subclass>/<image>.png|.jpg`` with CLASS one
of BOTH, TEXT, SYMBOL. Manifests are sorted by path so every downstream
ordering (feature rows, classifier references, tie-breaks) is reproducible.

Features are extracted once per image into a 60-column matrix (48 color,
8 texture, 4 shape) that can be cached as CSV. Each (combination, train
percentage) cell then draws its own stratified split, fits the column-max
normalizer on that cell's training rows, classifies the test rows with 1-NN
and computes the metric suite. Repeated trials per cell (``repeats`` in the
config) reuse consecutive seeds and are reported as means.
"""

from __future__ import annotations

import csv
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import imaging
from .classifier import LabeledSample, TrainedModel, classify_batch
from .color_features import extract_color
from .config import ExperimentConfig, validate_config
from .errors import (
    CorpusLayoutError,
    EmptyDatasetError,
    LabelError,
    LogoFuseError,
    ShapeMismatchError,
    SplitError,
)
from .evaluation import (
    ConfusionMatrix,
    MetricsReport,
    build_confusion,
    format_percent,
    metrics_report,
)
from .fusion import COMBO_PARTS, fit_normalizer, apply_normalizer, fuse_matrix
from .shape_features import ShapeConfig, extract_shape
from .texture_features import extract_texture

__all__ = [
    "CLASSES",
    "FEATURE_DIM",
    "FEATURE_COLUMNS",
    "CorpusEntry",
    "CorpusManifest",
    "SplitAssignment",
    "RepeatResult",
    "CellResult",
    "ExperimentResult",
    "make_manifest",
    "scan_corpus",
    "stratified_split",
    "extract_image_features",
    "extract_corpus_features",
    "write_feature_cache",
    "read_feature_cache",
    "run_experiment",
    "results_to_dict",
    "write_results_csv",
    "write_results_json",
]

CLASSES = ("BOTH", "TEXT", "SYMBOL")
IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg")
FEATURE_DIM = 60

_CHANNELS = ("r", "g", "b")
FEATURE_COLUMNS = (
    [f"color_mean_p{p + 1}_{ch}" for p in range(8) for ch in _CHANNELS]
    + [f"color_pct_p{p + 1}_{ch}" for p in range(8) for ch in _CHANNELS]
    + [f"texture_{stat}_{angle}" for angle in ("0", "45", "m45", "90") for stat in ("mean", "std")]
    + ["shape_amp_h", "shape_phase_h", "shape_amp_v", "shape_phase_v"]
)

_BLOCK_SLICES = {"c": slice(0, 48), "t": slice(48, 56), "s": slice(56, 60)}


@dataclass(frozen=True)
class CorpusEntry:
    path: str
    label: str
    subclass: str


@dataclass(frozen=True)
class CorpusManifest:
    entries: tuple[CorpusEntry, ...]

    def counts(self) -> dict[str, int]:
        totals = {name: 0 for name in CLASSES}
        for entry in self.entries:
            totals[entry.label] += 1
        return totals

    def class_indices(self, label: str) -> list[int]:
        return [i for i, entry in enumerate(self.entries) if entry.label == label]

    def __len__(self) -> int:
        return len(self.entries)


def make_manifest(entries) -> CorpusManifest:
    """Normalize entries: validate labels, drop duplicate paths, sort by path."""
    unique: dict[str, CorpusEntry] = {}
    for entry in entries:
        if entry.label not in CLASSES:
            raise LabelError(f"unknown class '{entry.label}' for {entry.path}")
        unique.setdefault(entry.path, entry)
    ordered = tuple(unique[p] for p in sorted(unique))
    return CorpusManifest(ordered)


def scan_corpus(root) -> CorpusManifest:
    """Walk <root>/<CLASS>/<subclass>/ collecting PNG and JPEG files."""
    root = Path(root)
    if not root.is_dir():
        raise CorpusLayoutError(f"corpus root {root} is not a directory")
    entries = []
    for class_dir in sorted(root.iterdir()):
        if not class_dir.is_dir():
            continue
        if class_dir.name not in CLASSES:
            raise CorpusLayoutError(
                f"unexpected class directory '{class_dir.name}' "
                f"(expected one of {', '.join(CLASSES)})")
        for sub_dir in sorted(class_dir.iterdir()):
            if not sub_dir.is_dir():
                continue
            for file in sorted(sub_dir.iterdir()):
                if file.is_file() and file.suffix.lower() in IMAGE_SUFFIXES:
                    entries.append(CorpusEntry(file.as_posix(), class_dir.name, sub_dir.name))
    if not entries:
        raise EmptyDatasetError(f"no images found under {root}")
    return make_manifest(entries)


@dataclass(frozen=True)
class SplitAssignment:
    train_ids: tuple[int, ...]
    test_ids: tuple[int, ...]
    seed: int
    train_pct: float


def stratified_split(manifest: CorpusManifest, train_pct: float, seed: int) -> SplitAssignment:
    """Per-class seeded shuffle: floor(pct * count / 100) train rows, min 1.

    Identical (manifest, pct, seed) always produce the identical assignment;
    the shuffle sequence does not depend on pct, only the cut point does.
    """
    if not 0 < train_pct < 100:
        raise SplitError(f"train percentage must be inside (0, 100), got {train_pct}")
    rng = random.Random(seed)
    train: list[int] = []
    test: list[int] = []
    for label in CLASSES:
        indices = manifest.class_indices(label)
        if not indices:
            continue  # a class absent from the corpus is vacuously satisfied
        count = len(indices)
        if count < 2:
            raise SplitError(
                f"class {label} has {count} sample(s); need at least 2 to split")
        shuffled = indices[:]
        rng.shuffle(shuffled)
        n_train = max(1, math.floor(train_pct * count / 100.0))
        train.extend(shuffled[:n_train])
        test.extend(shuffled[n_train:])
    # Sorted ids restore corpus scan order within each side; the classifier's
    # tie-break contract relies on that ordering.
    return SplitAssignment(tuple(sorted(train)), tuple(sorted(test)), seed, train_pct)


def extract_image_features(path, config: ExperimentConfig) -> np.ndarray:
    """Full 60-value feature row for one image file."""
    raster = imaging.load_image(path)
    raster = imaging.resize(raster, config.canonical_size, config.canonical_size)
    color = extract_color(raster, config.partition_rows, config.partition_cols)
    gray = imaging.to_grayscale(raster)
    texture = extract_texture(gray, config.texture_sigma, config.texture_radius)
    shape = extract_shape(gray, ShapeConfig(config.shape_n, config.shape_m))
    return np.concatenate([color, texture, shape])


def _extract_task(args):
    index, path, config = args
    try:
        return index, extract_image_features(path, config), None
    except Exception as exc:  # workers must not raise across the pool boundary
        return index, None, f"{type(exc).__name__}: {exc}"


def extract_corpus_features(manifest: CorpusManifest, config: ExperimentConfig,
                            workers: int = 1, strict: bool = True):
    """Extract features for every manifest entry, optionally in parallel.

    Returns (features, ok_indices, failures): features rows align with
    ok_indices into the manifest; failures is a list of (path, message).
    With strict=True the first failure re-raises with the path attached.
    """
    tasks = [(i, entry.path, config) for i, entry in enumerate(manifest.entries)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            outcomes = list(pool.map(_extract_task, tasks, chunksize=4))
    else:
        outcomes = [_extract_task(t) for t in tasks]

    rows = []
    ok_indices = []
    failures = []
    for index, vector, message in outcomes:
        path = manifest.entries[index].path
        if message is not None:
            if strict:
                # Re-run serially so the original exception type survives.
                try:
                    extract_image_features(path, config)
                except LogoFuseError as exc:
                    raise type(exc)(f"{path}: {exc}") from exc
                raise LogoFuseError(f"{path}: {message}")
            failures.append((path, message))
            continue
        rows.append(vector)
        ok_indices.append(index)
    features = np.stack(rows) if rows else np.empty((0, FEATURE_DIM))
    return features, ok_indices, failures


def write_feature_cache(path, manifest: CorpusManifest, features: np.ndarray) -> None:
    """CSV cache: source_path, class, subclass, then the 60 feature columns."""
    if len(manifest) != features.shape[0]:
        raise ShapeMismatchError(
            f"{len(manifest)} manifest entries vs {features.shape[0]} feature rows")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["source_path", "class", "subclass"] + FEATURE_COLUMNS)
        for entry, row in zip(manifest.entries, features):
            writer.writerow([entry.path, entry.label, entry.subclass]
                            + [repr(float(v)) for v in row])


def read_feature_cache(path) -> tuple[CorpusManifest, np.ndarray]:
    """Load a feature cache; rows are re-sorted by path alongside the manifest."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) != 3 + FEATURE_DIM:
            raise CorpusLayoutError(f"{path}: not a feature cache file")
        pairs = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 3 + FEATURE_DIM:
                raise CorpusLayoutError(f"{path}:{lineno}: expected {3 + FEATURE_DIM} fields")
            entry = CorpusEntry(row[0], row[1], row[2])
            if entry.label not in CLASSES:
                raise LabelError(f"{path}:{lineno}: unknown class '{entry.label}'")
            pairs.append((entry, [float(v) for v in row[3:]]))
    if not pairs:
        raise EmptyDatasetError(f"{path}: cache holds no rows")
    pairs.sort(key=lambda pair: pair[0].path)
    manifest = CorpusManifest(tuple(entry for entry, _ in pairs))
    features = np.array([values for _, values in pairs], dtype=np.float64)
    return manifest, features


@dataclass(frozen=True)
class RepeatResult:
    seed: int
    report: MetricsReport
    confusion: ConfusionMatrix


@dataclass(frozen=True)
class CellResult:
    combo: str
    train_pct: float
    train_count: int
    test_count: int
    repeats: tuple[RepeatResult, ...]

    def _values(self, name: str) -> np.ndarray:
        return np.array([getattr(r.report, name) for r in self.repeats])

    def mean(self, name: str) -> float:
        return float(self._values(name).mean())

    def std(self, name: str) -> float:
        return float(self._values(name).std())


@dataclass(frozen=True)
class ExperimentResult:
    classes: tuple[str, ...]
    combinations: tuple[str, ...]
    train_percentages: tuple[float, ...]
    split_seed: int
    repeats: int
    cells: tuple[CellResult, ...]

    def cell(self, combo: str, train_pct: float) -> CellResult:
        for c in self.cells:
            if c.combo == combo and c.train_pct == train_pct:
                return c
        raise KeyError((combo, train_pct))


def _fused_matrix(features: np.ndarray, combo: str) -> np.ndarray:
    kwargs = {}
    for part in COMBO_PARTS[combo]:
        name = {"c": "color", "t": "texture", "s": "shape"}[part]
        kwargs[name] = features[:, _BLOCK_SLICES[part]]
    return fuse_matrix(combo=combo, **kwargs)


def run_experiment(config: ExperimentConfig, *, cache_path=None,
                   workers: int = 1) -> ExperimentResult:
    """Evaluate every (combination, train percentage) cell of the config.

    Features come from ``cache_path`` when that file exists; otherwise they
    are extracted from ``config.corpus_root`` (and written back to
    ``cache_path`` when one was given). Results are identical either way.
    """
    validate_config(config)
    if cache_path is not None and Path(cache_path).exists():
        manifest, features = read_feature_cache(cache_path)
    else:
        if config.corpus_root is None:
            raise EmptyDatasetError("no corpus_root configured and no feature cache found")
        manifest = scan_corpus(config.corpus_root)
        features, _, _ = extract_corpus_features(manifest, config, workers=workers, strict=True)
        if cache_path is not None:
            write_feature_cache(cache_path, manifest, features)

    labels = [entry.label for entry in manifest.entries]
    ids = [entry.path for entry in manifest.entries]
    cells = []
    for combo in config.combinations:
        fused = _fused_matrix(features, combo)
        for pct in config.train_percentages:
            repeats = []
            train_count = test_count = 0
            for rep in range(config.repeats):
                seed = config.split_seed + rep
                split = stratified_split(manifest, pct, seed)
                train_rows = fused[list(split.train_ids)]
                test_rows = fused[list(split.test_ids)]
                params = fit_normalizer(train_rows)
                train_norm = apply_normalizer(train_rows, params)
                test_norm = apply_normalizer(test_rows, params)
                references = [LabeledSample(row, labels[i], ids[i])
                              for row, i in zip(train_norm, split.train_ids)]
                model = TrainedModel(references)
                predictions = classify_batch(model, test_norm)
                truth = [labels[i] for i in split.test_ids]
                cm = build_confusion(truth, [p.label for p in predictions], CLASSES)
                repeats.append(RepeatResult(seed, metrics_report(cm), cm))
                train_count, test_count = len(split.train_ids), len(split.test_ids)
            cells.append(CellResult(combo, pct, train_count, test_count, tuple(repeats)))
    return ExperimentResult(CLASSES, tuple(config.combinations),
                            tuple(config.train_percentages),
                            config.split_seed, config.repeats, tuple(cells))


def results_to_dict(result: ExperimentResult) -> dict:
    """Full-precision dict form of a result, ready for JSON."""
    cells = []
    for cell in result.cells:
        runs = []
        for rep in cell.repeats:
            report = rep.report
            runs.append({
                "seed": rep.seed,
                "accuracy": report.accuracy,
                "precision": report.precision,
                "recall": report.recall,
                "f_measure": report.f_measure,
                "class_precision": dict(zip(report.classes, report.class_precision)),
                "class_recall": dict(zip(report.classes, report.class_recall)),
                "flags": list(report.flags),
                "confusion": [[int(v) for v in row] for row in rep.confusion.counts],
            })
        cells.append({
            "combo": cell.combo,
            "train_pct": cell.train_pct,
            "train_count": cell.train_count,
            "test_count": cell.test_count,
            "accuracy": cell.mean("accuracy"),
            "precision": cell.mean("precision"),
            "recall": cell.mean("recall"),
            "f_measure": cell.mean("f_measure"),
            "accuracy_std": cell.std("accuracy"),
            "precision_std": cell.std("precision"),
            "recall_std": cell.std("recall"),
            "f_measure_std": cell.std("f_measure"),
            "runs": runs,
        })
    return {
        "classes": list(result.classes),
        "combinations": list(result.combinations),
        "train_percentages": list(result.train_percentages),
        "split_seed": result.split_seed,
        "repeats": result.repeats,
        "cells": cells,
    }


def write_results_csv(path, result: ExperimentResult) -> None:
    """Two-decimal summary table: combo, train_pct, accuracy, P, R, F."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["combo", "train_pct", "accuracy", "precision", "recall", "f_measure"])
        for cell in result.cells:
            writer.writerow([
                cell.combo,
                f"{cell.train_pct:g}",
                format_percent(cell.mean("accuracy")),
                format_percent(cell.mean("precision")),
                format_percent(cell.mean("recall")),
                format_percent(cell.mean("f_measure")),
            ])


def write_results_json(path, result: ExperimentResult) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(results_to_dict(result), fh, indent=2)
        fh.write("\n")
