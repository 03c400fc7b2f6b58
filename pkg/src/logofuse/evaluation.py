"""Confusion matrices and the percentage metric suite.

Rows of the confusion matrix are true classes, columns are predicted classes.
Class precision divides the diagonal entry by its column sum, class recall by
its row sum; macro precision and recall are their unweighted means, and the
F-measure is the harmonic mean of the two macro values. Computing F from the
macro values (rather than averaging per-class F) is what makes the F column
of a results table recomputable from its P and R columns alone.

Zero denominators (a class never predicted, or absent from the truth) yield
0 for that class and a diagnostic flag in the report instead of an error.
All values are carried as full-precision percentages; rounding to two
decimals happens only in format_percent at serialization time.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from .errors import EmptyDatasetError, LabelError, ShapeMismatchError

__all__ = [
    "ConfusionMatrix",
    "MetricsReport",
    "build_confusion",
    "accuracy",
    "class_precision_recall",
    "macro_metrics",
    "f_measure",
    "metrics_report",
    "format_percent",
]


@dataclass(frozen=True)
class ConfusionMatrix:
    classes: tuple[str, ...]
    counts: np.ndarray  # counts[i, j] = samples of true class i predicted as j

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def build_confusion(truth, predicted, classes) -> ConfusionMatrix:
    classes = tuple(classes)
    truth = list(truth)
    predicted = list(predicted)
    if len(truth) != len(predicted):
        raise ShapeMismatchError(
            f"{len(truth)} true labels vs {len(predicted)} predictions")
    index = {name: i for i, name in enumerate(classes)}
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for t, p in zip(truth, predicted):
        if t not in index:
            raise LabelError(f"unknown true label '{t}'")
        if p not in index:
            raise LabelError(f"unknown predicted label '{p}'")
        counts[index[t], index[p]] += 1
    return ConfusionMatrix(classes, counts)


def accuracy(cm: ConfusionMatrix) -> float:
    """Percent of samples on the diagonal."""
    total = cm.total
    if total == 0:
        raise EmptyDatasetError("confusion matrix has no samples")
    return 100.0 * float(np.trace(cm.counts)) / total


def class_precision_recall(cm: ConfusionMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Per-class precision (column sums) and recall (row sums), percent."""
    diag = np.diagonal(cm.counts).astype(np.float64)
    col = cm.counts.sum(axis=0).astype(np.float64)
    row = cm.counts.sum(axis=1).astype(np.float64)
    precision = np.where(col > 0, 100.0 * diag / np.where(col > 0, col, 1.0), 0.0)
    recall = np.where(row > 0, 100.0 * diag / np.where(row > 0, row, 1.0), 0.0)
    return precision, recall


def macro_metrics(class_precision, class_recall) -> tuple[float, float]:
    """Unweighted means of the class-wise values."""
    return float(np.mean(class_precision)), float(np.mean(class_recall))


def f_measure(precision: float, recall: float) -> float:
    """Harmonic mean of (macro) precision and recall; 0 when both are 0."""
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class MetricsReport:
    classes: tuple[str, ...]
    accuracy: float
    class_precision: tuple[float, ...]
    class_recall: tuple[float, ...]
    precision: float
    recall: float
    f_measure: float
    flags: tuple[str, ...] = ()


def metrics_report(cm: ConfusionMatrix) -> MetricsReport:
    """Full metric suite for one confusion matrix, with degeneracy flags."""
    acc = accuracy(cm)
    p_i, r_i = class_precision_recall(cm)
    macro_p, macro_r = macro_metrics(p_i, r_i)
    flags = []
    col = cm.counts.sum(axis=0)
    row = cm.counts.sum(axis=1)
    for i, name in enumerate(cm.classes):
        if col[i] == 0:
            flags.append(f"no-predictions:{name}")
        if row[i] == 0:
            flags.append(f"no-true-samples:{name}")
    return MetricsReport(
        classes=cm.classes,
        accuracy=acc,
        class_precision=tuple(float(v) for v in p_i),
        class_recall=tuple(float(v) for v in r_i),
        precision=macro_p,
        recall=macro_r,
        f_measure=f_measure(macro_p, macro_r),
        flags=tuple(flags),
    )


def format_percent(value: float) -> str:
    """Two-decimal string, rounding half-up on the shortest decimal repr."""
    return str(Decimal(repr(float(value))).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))
