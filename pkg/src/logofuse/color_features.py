"""48-dimensional color descriptor.

Each RGB channel is split into 8 rectangular partitions on a fixed 2-row by
4-column grid. The descriptor holds the mean intensity of every partition of
every channel (24 values) followed by the percentage each channel mean
contributes to the summed means of its partition (24 values).

Serialization is partition-major, channel-minor: mean[p1,R], mean[p1,G],
mean[p1,B], mean[p2,R], ... then the percentages in the same index order.
"""

from __future__ import annotations

import numpy as np

from .errors import PartitionError

__all__ = [
    "COLOR_DIM",
    "GRID_ROWS",
    "GRID_COLS",
    "partition_channel",
    "block_mean",
    "channel_percentages",
    "extract_color",
]

COLOR_DIM = 48
GRID_ROWS = 2
GRID_COLS = 4


def partition_channel(channel, rows: int = GRID_ROWS, cols: int = GRID_COLS) -> list[np.ndarray]:
    """Split a single-channel raster into rows*cols blocks, row-major."""
    arr = np.asarray(channel)
    if arr.ndim != 2:
        raise ValueError("expected a single-channel raster of shape (height, width)")
    height, width = arr.shape
    if height % rows != 0 or width % cols != 0:
        raise PartitionError(
            f"{width}x{height} channel does not divide into a {rows}x{cols} grid")
    bh, bw = height // rows, width // cols
    return [arr[r * bh:(r + 1) * bh, c * bw:(c + 1) * bw]
            for r in range(rows) for c in range(cols)]


def block_mean(block) -> float:
    """Arithmetic mean of a block; integer blocks are summed exactly."""
    arr = np.asarray(block)
    if np.issubdtype(arr.dtype, np.integer):
        return int(arr.sum(dtype=np.int64)) / arr.size
    return float(arr.sum(dtype=np.float64)) / arr.size


def channel_percentages(mean_r: float, mean_g: float, mean_b: float) -> tuple[float, float, float]:
    """Percentage each channel mean contributes to the partition's color.

    An all-zero partition is treated as chromatically neutral, like gray, and
    maps to 100/3 per channel so the three values always close to 100.
    """
    total = mean_r + mean_g + mean_b
    if total <= 0.0:
        third = 100.0 / 3.0
        return (third, third, third)
    return (100.0 * mean_r / total, 100.0 * mean_g / total, 100.0 * mean_b / total)


def extract_color(raster, rows: int = GRID_ROWS, cols: int = GRID_COLS) -> np.ndarray:
    """48 values: 24 partition means then 24 partition percentages."""
    arr = np.asarray(raster)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError("expected an RGB raster of shape (height, width, 3)")
    blocks = [partition_channel(arr[:, :, k], rows, cols) for k in range(3)]
    n_parts = rows * cols
    means = np.empty((n_parts, 3))
    for k in range(3):
        for p in range(n_parts):
            means[p, k] = block_mean(blocks[k][p])
    pcts = np.empty((n_parts, 3))
    for p in range(n_parts):
        pcts[p] = channel_percentages(means[p, 0], means[p, 1], means[p, 2])
    return np.concatenate([means.ravel(), pcts.ravel()])
