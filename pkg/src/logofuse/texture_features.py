"""8-dimensional texture descriptor from a steerable derivative-of-Gaussian pair.

The basis kernels Gx and Gy sample the first partial derivatives of an
isotropic Gaussian on an integer offset grid. The response at angle theta is

    cos(theta) * (image conv Gx) + sin(theta) * (image conv Gy)

with true convolution and replicate padding; that closed form under rotation
is the defining property of a first-order steerable filter. The descriptor is
the mean and population standard deviation of the response magnitude at
0, 45, -45 and 90 degrees, in that order. Signed responses average out to
nearly zero on any image, so the statistics are taken over magnitudes.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import ndimage

from .errors import KernelError

__all__ = [
    "ORIENTATIONS",
    "TEXTURE_DIM",
    "DEFAULT_SIGMA",
    "DEFAULT_RADIUS",
    "gaussian_derivative_kernels",
    "steer_response",
    "extract_texture",
]

# Feature-vector orientation order (degrees).
ORIENTATIONS = (0.0, 45.0, -45.0, 90.0)
TEXTURE_DIM = 8
DEFAULT_SIGMA = 1.0
DEFAULT_RADIUS = 3


def gaussian_derivative_kernels(sigma: float = DEFAULT_SIGMA,
                                radius: int = DEFAULT_RADIUS) -> tuple[np.ndarray, np.ndarray]:
    """Sampled first-derivative-of-Gaussian kernels (Gx, Gy).

    Gx[y, x] = -x / (2 pi sigma^4) * exp(-(x^2 + y^2) / (2 sigma^2)) over
    offsets in [-radius, radius]^2; Gy is the transpose. Gx is antisymmetric
    in x and symmetric in y, so its entries sum to zero.
    """
    if sigma <= 0:
        raise KernelError(f"sigma must be positive, got {sigma}")
    if radius < 1:
        raise KernelError(f"radius must be at least 1, got {radius}")
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    xx, yy = np.meshgrid(offsets, offsets)
    envelope = np.exp(-(xx ** 2 + yy ** 2) / (2.0 * sigma ** 2))
    scale = -1.0 / (2.0 * math.pi * sigma ** 4)
    return scale * xx * envelope, scale * yy * envelope


def _basis_responses(gray, sigma: float, radius: int) -> tuple[np.ndarray, np.ndarray]:
    img = np.asarray(gray, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError("expected a grayscale raster of shape (height, width)")
    gx, gy = gaussian_derivative_kernels(sigma, radius)
    rx = ndimage.convolve(img, gx, mode="nearest")
    ry = ndimage.convolve(img, gy, mode="nearest")
    return rx, ry


def steer_response(gray, theta_degrees: float, sigma: float = DEFAULT_SIGMA,
                   radius: int = DEFAULT_RADIUS) -> np.ndarray:
    """Filter response at one orientation; same shape as the input raster."""
    rx, ry = _basis_responses(gray, sigma, radius)
    t = math.radians(theta_degrees)
    return math.cos(t) * rx + math.sin(t) * ry


def extract_texture(gray, sigma: float = DEFAULT_SIGMA,
                    radius: int = DEFAULT_RADIUS) -> np.ndarray:
    """Mean and standard deviation of |response| per orientation, 8 values."""
    rx, ry = _basis_responses(gray, sigma, radius)
    features = np.empty(TEXTURE_DIM)
    for slot, theta in enumerate(ORIENTATIONS):
        t = math.radians(theta)
        magnitude = np.abs(math.cos(t) * rx + math.sin(t) * ry)
        features[2 * slot] = magnitude.mean()
        features[2 * slot + 1] = magnitude.std()
    return features
