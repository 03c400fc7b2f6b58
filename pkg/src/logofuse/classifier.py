"""Nearest-neighbor classification under Euclidean distance.

The model is just the training set. Classification scans every reference
exhaustively (no spatial index; exactness matters more than speed at this
scale) and returns the label at minimum distance, ties broken by the lowest
reference index. Callers wanting reproducible tie-breaks must pass the
references in a deterministic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyDatasetError, ShapeMismatchError

__all__ = [
    "LabeledSample",
    "Prediction",
    "TrainedModel",
    "euclidean_distance",
    "classify",
    "classify_batch",
]


@dataclass(frozen=True)
class LabeledSample:
    features: np.ndarray
    label: str
    source_id: str


@dataclass(frozen=True)
class Prediction:
    label: str
    source_id: str
    distance: float


class TrainedModel:
    """Immutable reference set; k is carried for a future k > 1 extension."""

    def __init__(self, samples: Sequence[LabeledSample], k: int = 1):
        samples = list(samples)
        if not samples:
            raise EmptyDatasetError("training set is empty")
        rows = [np.asarray(s.features, dtype=np.float64) for s in samples]
        dims = {r.shape for r in rows}
        if len(dims) != 1 or rows[0].ndim != 1:
            raise ShapeMismatchError(f"inconsistent reference shapes: {sorted(dims)}")
        self.features = np.stack(rows)
        self.labels = tuple(s.label for s in samples)
        self.source_ids = tuple(s.source_id for s in samples)
        self.k = k

    def __len__(self) -> int:
        return len(self.labels)


def euclidean_distance(a, b) -> float:
    va = np.asarray(a, dtype=np.float64)
    vb = np.asarray(b, dtype=np.float64)
    if va.ndim != 1 or va.shape != vb.shape:
        raise ShapeMismatchError(f"cannot compare shapes {va.shape} and {vb.shape}")
    diff = va - vb
    return float(np.sqrt((diff * diff).sum()))


def classify(model: TrainedModel, query) -> Prediction:
    """Label of the nearest reference; first index wins on exact ties."""
    q = np.asarray(query, dtype=np.float64)
    if q.ndim != 1 or q.shape[0] != model.features.shape[1]:
        raise ShapeMismatchError(
            f"query of shape {q.shape} does not match reference dimension "
            f"{model.features.shape[1]}")
    deltas = model.features - q
    distances = np.sqrt((deltas * deltas).sum(axis=1))
    best = int(np.argmin(distances))
    return Prediction(model.labels[best], model.source_ids[best], float(distances[best]))


def classify_batch(model: TrainedModel, queries) -> list[Prediction]:
    """Elementwise classify, order-preserving."""
    return [classify(model, q) for q in queries]
