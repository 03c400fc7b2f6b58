import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from logofuse.synthetic import generate_synthetic_corpus  # noqa: E402


@pytest.fixture(scope="session")
def synthetic_corpus(tmp_path_factory):
    """Shared 20-per-class corpus; generating it is the slow part of the suite."""
    root = tmp_path_factory.mktemp("synth") / "corpus"
    manifest = generate_synthetic_corpus(root, per_class=20, seed=7)
    return root, manifest


def random_rgb(rng: np.random.Generator, height: int, width: int) -> np.ndarray:
    return rng.integers(0, 256, size=(height, width, 3), dtype=np.uint8)


def random_gray(rng: np.random.Generator, height: int, width: int) -> np.ndarray:
    return rng.integers(0, 256, size=(height, width), dtype=np.uint8)
