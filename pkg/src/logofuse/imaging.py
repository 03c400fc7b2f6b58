"""Image loading and canonicalization.

Rasters are plain numpy arrays: RGB rasters have shape (height, width, 3),
grayscale rasters shape (height, width), dtype uint8 with intensities in
[0, 255]. Rasters are treated as immutable once created; nothing in this
package writes into one.
"""

from __future__ import annotations

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import EmptyImageError, ImageDecodeError

__all__ = ["load_image", "resize", "to_grayscale"]

# ITU-R BT.601 luma weights; they sum to 1 so gray inputs map to themselves.
_LUMA_WEIGHTS = np.array([0.299, 0.587, 0.114])


def _check_rgb(raster) -> np.ndarray:
    arr = np.asarray(raster)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError("expected an RGB raster of shape (height, width, 3)")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise EmptyImageError("raster has a zero dimension")
    return arr


def load_image(path) -> np.ndarray:
    """Decode a PNG or JPEG file into an RGB raster at its native size.

    Images carrying transparency are composited over a white background
    first, which is how logos are meant to be seen on a page.
    """
    try:
        with Image.open(path) as img:
            img.load()
            if img.width < 1 or img.height < 1:
                raise EmptyImageError(f"{path}: zero-dimension image")
            rgb = _flatten_to_rgb(img)
            return np.asarray(rgb, dtype=np.uint8)
    except EmptyImageError:
        raise
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise ImageDecodeError(f"{path}: {exc}") from exc


def _flatten_to_rgb(img: Image.Image) -> Image.Image:
    if img.mode == "RGB":
        return img
    if img.mode in ("RGBA", "LA", "PA") or "transparency" in img.info:
        rgba = img.convert("RGBA")
        background = Image.new("RGBA", rgba.size, (255, 255, 255, 255))
        return Image.alpha_composite(background, rgba).convert("RGB")
    return img.convert("RGB")


def resize(raster, target_width: int, target_height: int) -> np.ndarray:
    """Bilinear resize with pixel-center alignment.

    Output pixel (i, j) samples the input at

        sx = (j + 0.5) * width / target_width - 0.5
        sy = (i + 0.5) * height / target_height - 0.5

    interpolating between floor(s) and floor(s) + 1 with both neighbor
    indices clamped into range (replicate borders). Interpolated values are
    rounded half-up back to integers. An input already at the target size
    is returned unchanged, which makes the operation idempotent and keeps
    constant images exact fixed points.
    """
    arr = _check_rgb(raster)
    if target_width < 1 or target_height < 1:
        raise EmptyImageError(
            f"target size {target_width}x{target_height} has a zero dimension")
    height, width = arr.shape[:2]
    if (width, height) == (target_width, target_height):
        return arr

    # evaluated exactly as documented: multiply before dividing, so scalar
    # reimplementations of the formula reproduce these values bit for bit
    src_x = (np.arange(target_width) + 0.5) * width / target_width - 0.5
    src_y = (np.arange(target_height) + 0.5) * height / target_height - 0.5
    x0 = np.floor(src_x)
    y0 = np.floor(src_y)
    fx = (src_x - x0)[None, :, None]
    fy = (src_y - y0)[:, None, None]
    xi0 = np.clip(x0.astype(int), 0, width - 1)
    xi1 = np.clip(x0.astype(int) + 1, 0, width - 1)
    yi0 = np.clip(y0.astype(int), 0, height - 1)
    yi1 = np.clip(y0.astype(int) + 1, 0, height - 1)

    img = arr.astype(np.float64)
    top = img[yi0][:, xi0] * (1.0 - fx) + img[yi0][:, xi1] * fx
    bottom = img[yi1][:, xi0] * (1.0 - fx) + img[yi1][:, xi1] * fx
    out = top * (1.0 - fy) + bottom * fy
    return np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8)


def to_grayscale(raster) -> np.ndarray:
    """BT.601 luma: round(0.299 R + 0.587 G + 0.114 B), half-up."""
    arr = _check_rgb(raster)
    luma = arr.astype(np.float64) @ _LUMA_WEIGHTS
    return np.clip(np.floor(luma + 0.5), 0, 255).astype(np.uint8)
