"""Deterministic synthetic logo corpus for desk-scale experiments.

Stands in for a real logo collection with three visually distinct styles:

* TEXT    rows of dark glyph-like strokes on a light ground
* SYMBOL  one large filled primitive (disk, ring or polygon) in a saturated color
* BOTH    a smaller primitive stacked above a couple of stroke rows

The styles are separable by the color/texture/shape pipeline by construction,
which is what makes them usable as an end-to-end regression corpus. All
randomness flows from one seeded generator, so the same arguments always
produce byte-identical files.
"""

from __future__ import annotations

import colorsys
import random
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw

from .errors import IoError
from .harness import CLASSES, CorpusManifest, scan_corpus

__all__ = ["SUBCLASSES", "generate_synthetic_corpus"]

SUBCLASSES = {
    "BOTH": ("emblem", "crest"),
    "TEXT": ("wordmark", "masthead"),
    "SYMBOL": ("badge", "icon"),
}


def generate_synthetic_corpus(out_root, per_class: int, seed: int) -> CorpusManifest:
    """Write 3 * per_class PNG images in corpus layout and return the manifest."""
    if per_class < 2:
        raise ValueError(f"per_class must be at least 2, got {per_class}")
    root = Path(out_root)
    rng = random.Random(seed)
    try:
        for label in CLASSES:  # fixed order keeps the RNG stream reproducible
            for sub in SUBCLASSES[label]:
                (root / label / sub).mkdir(parents=True, exist_ok=True)
            for i in range(per_class):
                image = _render(label, rng)
                sub = SUBCLASSES[label][i % len(SUBCLASSES[label])]
                name = f"{label.lower()}_{i:04d}.png"
                image.save(root / label / sub / name, format="PNG")
    except OSError as exc:
        raise IoError(f"cannot write corpus under {root}: {exc}") from exc
    return scan_corpus(root)


def _render(label: str, rng: random.Random) -> Image.Image:
    size = rng.randrange(160, 241, 16)
    if label == "TEXT":
        image = _render_text(rng, size)
    elif label == "SYMBOL":
        image = _render_symbol(rng, size)
    else:
        image = _render_both(rng, size)
    return _with_noise(image, rng)


def _light_background(rng) -> tuple[int, int, int]:
    return tuple(rng.randint(230, 252) for _ in range(3))


def _ink(rng) -> tuple[int, int, int]:
    base = rng.randint(10, 55)
    return tuple(min(255, base + rng.randint(0, 12)) for _ in range(3))


def _saturated_color(rng) -> tuple[int, int, int]:
    hue = rng.random()
    r, g, b = colorsys.hsv_to_rgb(hue, rng.uniform(0.85, 1.0), rng.uniform(0.75, 0.95))
    return int(r * 255), int(g * 255), int(b * 255)


def _draw_stroke_rows(draw: ImageDraw.ImageDraw, rng, size: int,
                      top: float, bottom: float) -> None:
    row_height = size * rng.uniform(0.045, 0.07)
    y = top
    while y + row_height <= bottom:
        ink = _ink(rng)
        x = size * rng.uniform(0.06, 0.12)
        right_limit = size * rng.uniform(0.82, 0.94)
        while x < right_limit:
            width = size * rng.uniform(0.04, 0.13)
            draw.rectangle([x, y, min(x + width, right_limit), y + row_height], fill=ink)
            x += width + size * rng.uniform(0.02, 0.05)
        y += row_height * rng.uniform(1.7, 2.3)


def _draw_primitive(draw: ImageDraw.ImageDraw, rng, size: int,
                    cx: float, cy: float, radius: float) -> None:
    color = _saturated_color(rng)
    kind = rng.choice(("disk", "ring", "polygon"))
    if kind == "disk":
        draw.ellipse([cx - radius, cy - radius, cx + radius, cy + radius], fill=color)
    elif kind == "ring":
        draw.ellipse([cx - radius, cy - radius, cx + radius, cy + radius], fill=color)
        hole = radius * rng.uniform(0.35, 0.55)
        draw.ellipse([cx - hole, cy - hole, cx + hole, cy + hole],
                     fill=_light_background(rng))
    else:
        sides = rng.randint(3, 6)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        points = [(cx + radius * np.cos(phase + 2.0 * np.pi * k / sides),
                   cy + radius * np.sin(phase + 2.0 * np.pi * k / sides))
                  for k in range(sides)]
        draw.polygon(points, fill=color)


def _render_text(rng, size: int) -> Image.Image:
    image = Image.new("RGB", (size, size), _light_background(rng))
    _draw_stroke_rows(ImageDraw.Draw(image), rng, size,
                      top=size * 0.14, bottom=size * 0.92)
    return image


def _render_symbol(rng, size: int) -> Image.Image:
    image = Image.new("RGB", (size, size), _light_background(rng))
    cx = size * rng.uniform(0.45, 0.55)
    cy = size * rng.uniform(0.45, 0.55)
    radius = size * rng.uniform(0.28, 0.38)
    _draw_primitive(ImageDraw.Draw(image), rng, size, cx, cy, radius)
    return image


def _render_both(rng, size: int) -> Image.Image:
    image = Image.new("RGB", (size, size), _light_background(rng))
    draw = ImageDraw.Draw(image)
    cx = size * rng.uniform(0.45, 0.55)
    cy = size * rng.uniform(0.28, 0.36)
    radius = size * rng.uniform(0.16, 0.22)
    _draw_primitive(draw, rng, size, cx, cy, radius)
    _draw_stroke_rows(draw, rng, size, top=size * 0.60, bottom=size * 0.92)
    return image


def _with_noise(image: Image.Image, rng, sigma: float = 2.0) -> Image.Image:
    # mild sensor-style noise keeps texture statistics away from degenerate zeros
    noise_rng = np.random.default_rng(rng.getrandbits(64))
    arr = np.asarray(image, dtype=np.float64)
    arr = arr + noise_rng.normal(0.0, sigma, arr.shape)
    return Image.fromarray(np.clip(np.round(arr), 0, 255).astype(np.uint8), mode="RGB")
