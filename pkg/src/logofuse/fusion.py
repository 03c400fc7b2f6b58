"""Column-max normalization and feature-block concatenation.

Fused rows always follow the block order color || texture || shape, so the
seven supported combinations have fixed dimensions (see COMBO_PARTS and
combo_dim). Normalization divides each column by its maximum over the
training rows only: training values land in [0, 1], test values may
legitimately exceed 1, and a zero-maximum column maps to all zeros since a
constant-zero feature carries no information.
"""

from __future__ import annotations

import numpy as np

from .errors import ComboMismatchError, EmptyDatasetError, ShapeMismatchError

__all__ = [
    "BLOCK_DIMS",
    "COMBO_PARTS",
    "COMBO_NAMES",
    "combo_dim",
    "fit_normalizer",
    "apply_normalizer",
    "fuse",
    "fuse_matrix",
]

BLOCK_DIMS = {"c": 48, "t": 8, "s": 4}
COMBO_PARTS = {
    "c": ("c",),
    "t": ("t",),
    "s": ("s",),
    "c+t": ("c", "t"),
    "c+s": ("c", "s"),
    "t+s": ("t", "s"),
    "c+t+s": ("c", "t", "s"),
}
COMBO_NAMES = tuple(COMBO_PARTS)


def _parts(combo: str) -> tuple[str, ...]:
    try:
        return COMBO_PARTS[combo]
    except KeyError:
        raise ComboMismatchError(f"unknown feature combination '{combo}'") from None


def combo_dim(combo: str) -> int:
    return sum(BLOCK_DIMS[p] for p in _parts(combo))


def fit_normalizer(train) -> np.ndarray:
    """Columnwise maxima over training rows."""
    matrix = np.asarray(train, dtype=np.float64)
    if matrix.ndim != 2:
        raise ShapeMismatchError("expected a 2-D feature matrix")
    if matrix.shape[0] == 0:
        raise EmptyDatasetError("cannot fit a normalizer on zero rows")
    return matrix.max(axis=0)


def apply_normalizer(matrix, column_maxima) -> np.ndarray:
    data = np.asarray(matrix, dtype=np.float64)
    maxima = np.asarray(column_maxima, dtype=np.float64)
    if data.ndim != 2 or maxima.ndim != 1 or data.shape[1] != maxima.shape[0]:
        raise ShapeMismatchError(
            f"matrix of shape {data.shape} does not match {maxima.shape[0]} column maxima")
    out = data / np.where(maxima > 0.0, maxima, 1.0)
    out[:, maxima == 0.0] = 0.0
    return out


def _gather_blocks(color, texture, shape, combo, expected_ndim):
    parts = _parts(combo)
    supplied = {"c": color, "t": texture, "s": shape}
    missing = [name for name in parts if supplied[name] is None]
    extras = [name for name in supplied if supplied[name] is not None and name not in parts]
    if missing or extras:
        raise ComboMismatchError(
            f"combination '{combo}' takes exactly blocks {list(parts)}: "
            f"missing {missing or 'none'}, unexpected {extras or 'none'}")
    blocks = []
    for name in parts:
        block = np.asarray(supplied[name], dtype=np.float64)
        if block.ndim != expected_ndim or block.shape[-1] != BLOCK_DIMS[name]:
            raise ShapeMismatchError(
                f"block '{name}' must have {BLOCK_DIMS[name]} columns, got shape {block.shape}")
        blocks.append(block)
    return blocks


def fuse(color=None, texture=None, shape=None, combo: str = "c+t+s") -> np.ndarray:
    """Concatenate exactly the feature blocks named by combo into one row."""
    return np.concatenate(_gather_blocks(color, texture, shape, combo, expected_ndim=1))


def fuse_matrix(color=None, texture=None, shape=None, combo: str = "c+t+s") -> np.ndarray:
    """Row-aligned fuse for whole feature matrices; same block rules as fuse."""
    blocks = _gather_blocks(color, texture, shape, combo, expected_ndim=2)
    rows = {b.shape[0] for b in blocks}
    if len(rows) != 1:
        raise ShapeMismatchError(f"blocks disagree on row count: {sorted(rows)}")
    return np.hstack(blocks)
