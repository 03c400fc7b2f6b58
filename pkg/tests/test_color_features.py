import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logofuse.color_features import (
    COLOR_DIM,
    block_mean,
    channel_percentages,
    extract_color,
    partition_channel,
)
from logofuse.errors import PartitionError
from oracles import color_features_reference

THIRD = 100.0 / 3.0


class TestPartition:
    def test_200x200_block_geometry(self):
        channel = np.arange(200 * 200, dtype=np.int64).reshape(200, 200)
        blocks = partition_channel(channel)
        assert len(blocks) == 8
        assert all(b.shape == (100, 50) for b in blocks)
        assert np.array_equal(blocks[0], channel[0:100, 0:50])
        assert np.array_equal(blocks[4], channel[100:200, 0:50])
        assert np.array_equal(blocks[7], channel[100:200, 150:200])

    def test_smallest_legal_grid(self):
        channel = np.arange(1, 9).reshape(2, 4)
        blocks = partition_channel(channel)
        assert [int(b[0, 0]) for b in blocks] == [1, 2, 3, 4, 5, 6, 7, 8]

    def test_indivisible_width_rejected(self):
        with pytest.raises(PartitionError):
            partition_channel(np.zeros((200, 201)))

    def test_indivisible_height_rejected(self):
        with pytest.raises(PartitionError):
            partition_channel(np.zeros((201, 200)))


class TestBlockMean:
    def test_constant_block(self):
        assert block_mean(np.full((10, 10), 128, dtype=np.uint8)) == 128.0

    def test_two_values(self):
        assert block_mean(np.array([[0, 255]], dtype=np.uint8)) == 127.5

    def test_exact_integer_summation(self):
        rng = np.random.default_rng(42)
        block = rng.integers(0, 256, (100, 50), dtype=np.uint8)
        exact = sum(int(v) for v in block.ravel()) / block.size
        assert block_mean(block) == exact  # same single division of an exact sum


class TestPercentages:
    def test_single_channel(self):
        assert channel_percentages(255.0, 0.0, 0.0) == (100.0, 0.0, 0.0)

    def test_symmetric(self):
        p = channel_percentages(50.0, 50.0, 50.0)
        assert p == pytest.approx((THIRD, THIRD, THIRD), abs=1e-12)

    def test_all_black_defined(self):
        assert channel_percentages(0.0, 0.0, 0.0) == (THIRD, THIRD, THIRD)


class TestExtractColor:
    def test_uniform_gray(self):
        raster = np.full((8, 8, 3), 128, dtype=np.uint8)
        vector = extract_color(raster)
        assert vector.shape == (COLOR_DIM,)
        assert np.all(vector[:24] == 128.0)
        assert vector[24:] == pytest.approx(np.full(24, THIRD), abs=1e-12)

    def test_left_red_right_blue(self):
        raster = np.zeros((200, 200, 3), dtype=np.uint8)
        raster[:, :100, 0] = 255
        raster[:, 100:, 2] = 255
        vector = extract_color(raster)
        means = vector[:24].reshape(8, 3)
        pcts = vector[24:].reshape(8, 3)
        for p in range(8):
            left = p % 4 < 2  # block columns 0-1 cover pixel columns 0-99
            assert means[p].tolist() == ([255.0, 0.0, 0.0] if left else [0.0, 0.0, 255.0])
            assert pcts[p].tolist() == ([100.0, 0.0, 0.0] if left else [0.0, 0.0, 100.0])

    def test_matches_per_pixel_reference(self):
        rng = np.random.default_rng(7)
        raster = rng.integers(0, 256, (8, 8, 3), dtype=np.uint8)
        expected = color_features_reference(raster.tolist())
        np.testing.assert_allclose(extract_color(raster), expected, rtol=0, atol=1e-9)

    def test_channel_permutation_equivariance(self):
        rng = np.random.default_rng(13)
        raster = rng.integers(0, 256, (4, 8, 3), dtype=np.uint8)
        base = extract_color(raster)
        perm = [2, 0, 1]  # channel k of the permuted raster is channel perm[k] of the base
        permuted = extract_color(raster[:, :, perm])
        base_means = base[:24].reshape(8, 3)
        base_pcts = base[24:].reshape(8, 3)
        got_means = permuted[:24].reshape(8, 3)
        got_pcts = permuted[24:].reshape(8, 3)
        assert np.array_equal(got_means, base_means[:, perm])
        np.testing.assert_allclose(got_pcts, base_pcts[:, perm], atol=1e-12)

    def test_mean_scale_monotonicity_on_real_channels(self):
        rng = np.random.default_rng(21)
        raster = rng.uniform(0.0, 255.0, (4, 8, 3))
        for c in (0.25, 0.6, 1.0):
            scaled = raster.copy()
            scaled[:, :, 1] *= c
            means = extract_color(scaled)[:24].reshape(8, 3)
            base = extract_color(raster)[:24].reshape(8, 3)
            np.testing.assert_allclose(means[:, 1], c * base[:, 1], rtol=1e-12)
            assert np.array_equal(means[:, 0], base[:, 0])

    def test_partition_error_propagates(self):
        with pytest.raises(PartitionError):
            extract_color(np.zeros((2, 5, 3), dtype=np.uint8))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_percentage_closure(seed, force_black):
    rng = np.random.default_rng(seed)
    h = int(rng.integers(1, 5)) * 2
    w = int(rng.integers(1, 5)) * 4
    if force_black:
        raster = np.zeros((h, w, 3), dtype=np.uint8)
    else:
        raster = rng.integers(0, 256, (h, w, 3), dtype=np.uint8)
    pcts = extract_color(raster)[24:].reshape(8, 3)
    sums = pcts.sum(axis=1)
    assert np.all(np.abs(sums - 100.0) <= 1e-9)
