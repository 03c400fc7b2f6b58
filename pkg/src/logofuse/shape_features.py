"""4-dimensional shape descriptor from one pseudo-Zernike moment.

The raster is mapped onto the unit disk: center ((w-1)/2, (h-1)/2), radius
(min(w, h) - 1)/2 measured between pixel centers, the y axis pointing up.
Pixel centers with rho > 1 are ignored, intensities are rescaled to [0, 1],
and the moment of order (n, m) is

    Z = (n + 1) / pi * sum f * R_nm(rho) * exp(-i m phi) * dA

with dA the per-pixel area in disk units and R_nm the pseudo-Zernike radial
polynomial

    R_nm(rho) = sum_s (-1)^s (2n+1-s)! / (s! (n+|m|+1-s)! (n-|m|-s)!) rho^(n-s).

The descriptor is (|Z|, arg Z, |Z'|, arg Z') where Z' is the moment of the
raster rotated 90 degrees counterclockwise. |Z| is invariant under that
rotation in the continuum, so the two amplitudes agree up to discretization;
the pair is kept because the phases differ. Phases are reduced to [0, 2 pi)
with arg 0 defined as 0, keeping every component non-negative for the
max-normalization stage. No centroid or scale normalization is applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MomentError

__all__ = [
    "SHAPE_DIM",
    "ShapeConfig",
    "radial_coefficients",
    "radial_polynomial",
    "pseudo_zernike_moment",
    "rotate90",
    "extract_shape",
]

SHAPE_DIM = 4
_TWO_PI = 2.0 * math.pi
# Amplitudes below this are indistinguishable from the float cancellation
# residue of a moment that is exactly zero (intensities are scaled to [0, 1],
# so real moments sit many orders of magnitude higher); they are snapped to
# zero so the arg(0) := 0 convention applies to them.
_ZERO_AMPLITUDE = 1e-12


@dataclass(frozen=True)
class ShapeConfig:
    """Moment order n and angular repetition m; admissible when n >= |m| >= 0."""

    order_n: int = 4
    repetition_m: int = 2

    def __post_init__(self):
        if self.order_n < 0 or abs(self.repetition_m) > self.order_n:
            raise MomentError(
                f"inadmissible order ({self.order_n}, {self.repetition_m}): "
                "need n >= |m| >= 0")


def radial_coefficients(n: int, m: int) -> np.ndarray:
    """Descending-power coefficients of R_nm, length n + 1.

    The coefficient of rho^(n-s) is a signed multinomial coefficient, so it
    is computed exactly in integers before converting to float.
    """
    if n < 0 or abs(m) > n:
        raise MomentError(f"inadmissible order ({n}, {m}): need n >= |m| >= 0")
    m = abs(m)
    coeffs = [0] * (n + 1)
    for s in range(n - m + 1):
        value = math.factorial(2 * n + 1 - s) // (
            math.factorial(s)
            * math.factorial(n + m + 1 - s)
            * math.factorial(n - m - s))
        coeffs[s] = -value if s % 2 else value
    return np.array(coeffs, dtype=np.float64)


def radial_polynomial(n: int, m: int, rho):
    """Evaluate R_nm at rho (scalar or array)."""
    return np.polyval(radial_coefficients(n, m), rho)


def pseudo_zernike_moment(gray, config: ShapeConfig) -> complex:
    """Complex moment of the raster over the inscribed unit disk."""
    arr = np.asarray(gray, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError("expected a grayscale raster of shape (height, width)")
    height, width = arr.shape
    if min(height, width) < 2:
        raise MomentError("raster must be at least 2x2 to map onto the unit disk")
    n, m = config.order_n, config.repetition_m

    cx = (width - 1) / 2.0
    cy = (height - 1) / 2.0
    radius = (min(width, height) - 1) / 2.0
    x = (np.arange(width, dtype=np.float64)[None, :] - cx) / radius
    y = (cy - np.arange(height, dtype=np.float64)[:, None]) / radius
    rho = np.hypot(x, y)
    inside = rho <= 1.0
    phi = np.arctan2(np.broadcast_to(y, rho.shape)[inside],
                     np.broadcast_to(x, rho.shape)[inside])
    radial = np.polyval(radial_coefficients(n, m), rho[inside])
    f = arr[inside] / 255.0
    area = (1.0 / radius) ** 2
    total = np.sum(f * radial * np.exp(-1j * m * phi))
    return complex((n + 1) / math.pi * area * total)


def rotate90(gray) -> np.ndarray:
    """Lossless 90-degree counterclockwise pixel rotation."""
    return np.ascontiguousarray(np.rot90(np.asarray(gray)))


def _amplitude_phase(z: complex) -> tuple[float, float]:
    amplitude = abs(z)
    if amplitude <= _ZERO_AMPLITUDE:
        return 0.0, 0.0
    phase = math.atan2(z.imag, z.real) % _TWO_PI
    if phase >= _TWO_PI:  # guard: tiny negative angles can wrap to exactly 2 pi
        phase = 0.0
    return amplitude, phase


def extract_shape(gray, config: ShapeConfig = ShapeConfig()) -> np.ndarray:
    """4 values: amplitude and phase of Z on the raster and on its rotation."""
    z_h = pseudo_zernike_moment(gray, config)
    z_v = pseudo_zernike_moment(rotate90(gray), config)
    amp_h, phase_h = _amplitude_phase(z_h)
    amp_v, phase_v = _amplitude_phase(z_v)
    return np.array([amp_h, phase_h, amp_v, phase_v])
