import math

import numpy as np
import pytest

from _helpers import nearest_pixel_value
from eit_fbp import (
    RasterImage,
    SizeMismatch,
    TargetQuantity,
    compare,
    inscribed_mask,
    normalize_image,
    rasterize_target,
)


class TestRasterizeTarget:
    def test_homogeneous_disk(self, homogeneous):
        img = rasterize_target(homogeneous, 80)
        mask = inscribed_mask(80, 40)
        assert np.all(img.pixels[mask] == 2000.0)
        assert np.all(img.pixels[~mask] == 0.0)
        assert img.masked and img.extent == 40.0

    def test_perturbation_and_background_values(self, one_perturbation):
        img = rasterize_target(one_perturbation, 160)
        assert nearest_pixel_value(img, 10.0, 10.0) == pytest.approx(5000.0)
        assert nearest_pixel_value(img, -10.0, -10.0) == pytest.approx(2000.0)

    def test_corner_outside_circle(self, one_perturbation):
        img = rasterize_target(one_perturbation, 160)
        assert nearest_pixel_value(img, 39.9, 39.9) == 0.0

    def test_resistivity_target_is_reciprocal(self, one_perturbation):
        cond = rasterize_target(one_perturbation, 80, TargetQuantity.CONDUCTIVITY)
        resi = rasterize_target(one_perturbation, 80, TargetQuantity.RESISTIVITY)
        mask = inscribed_mask(80, 40)
        np.testing.assert_allclose(cond.pixels[mask] * resi.pixels[mask], 1.0, rtol=1e-12)

    def test_grid_size_too_small(self, homogeneous):
        with pytest.raises(ValueError):
            rasterize_target(homogeneous, 1)

    def test_resolution_consistency(self, one_perturbation):
        fine = rasterize_target(one_perturbation, 160).pixels
        coarse = rasterize_target(one_perturbation, 80).pixels
        blocks = fine.reshape(80, 2, 80, 2)
        downsampled = blocks.mean(axis=(1, 3))
        mixed_block = blocks.max(axis=(1, 3)) != blocks.min(axis=(1, 3))
        disagree = downsampled != coarse
        # disagreements may only happen where a material boundary crosses the block
        assert not np.any(disagree & ~mixed_block)


class TestNormalizeImage:
    def test_endpoints_map_to_unit_range(self, one_perturbation):
        img = normalize_image(rasterize_target(one_perturbation, 80))
        mask = inscribed_mask(80, 40)
        assert img.pixels[mask].min() == 0.0
        assert img.pixels[mask].max() == 1.0
        assert np.all(img.pixels[~mask] == 0.0)

    def test_constant_masked_region_maps_to_half(self, homogeneous):
        img = normalize_image(rasterize_target(homogeneous, 64))
        mask = inscribed_mask(64, 40)
        assert np.all(img.pixels[mask] == 0.5)
        assert np.all(img.pixels[~mask] == 0.0)

    def test_idempotent(self, one_perturbation):
        once = normalize_image(rasterize_target(one_perturbation, 80))
        twice = normalize_image(once)
        np.testing.assert_allclose(twice.pixels, once.pixels, atol=1e-12)

    def test_unmasked_image_normalizes_over_all_pixels(self):
        pixels = np.linspace(5.0, 9.0, 36).reshape(6, 6)
        img = RasterImage(6, pixels, 3.0, masked=False)
        out = normalize_image(img)
        assert out.pixels.min() == 0.0
        assert out.pixels.max() == 1.0


class TestCompare:
    def make_pair(self, one_perturbation):
        a = normalize_image(rasterize_target(one_perturbation, 80))
        mask = inscribed_mask(80, 40)
        flipped = np.where(mask, 1.0 - a.pixels, 0.0)
        b = RasterImage(80, flipped, 40.0, masked=True)
        return a, b

    def test_self_comparison(self, one_perturbation):
        a = normalize_image(rasterize_target(one_perturbation, 80))
        m = compare(a, a)
        assert m.rmse == 0.0
        assert m.pearson == pytest.approx(1.0, abs=1e-12)
        assert math.isinf(m.psnr)

    def test_anticorrelation(self, one_perturbation):
        a, b = self.make_pair(one_perturbation)
        assert compare(a, b).pearson == pytest.approx(-1.0, abs=1e-12)

    def test_symmetry(self, one_perturbation, two_perturbation):
        a = normalize_image(rasterize_target(one_perturbation, 80))
        b = normalize_image(rasterize_target(two_perturbation, 80))
        ab, ba = compare(a, b), compare(b, a)
        assert ab.rmse == ba.rmse
        assert ab.pearson == pytest.approx(ba.pearson, abs=1e-15)

    def test_constant_image_pearson_is_zero(self, homogeneous, one_perturbation):
        const = normalize_image(rasterize_target(homogeneous, 80))
        other = normalize_image(rasterize_target(one_perturbation, 80))
        assert compare(const, other).pearson == 0.0

    def test_size_mismatch(self, one_perturbation):
        a = rasterize_target(one_perturbation, 80)
        b = rasterize_target(one_perturbation, 64)
        with pytest.raises(SizeMismatch):
            compare(a, b)

    def test_psnr_formula(self):
        base = np.zeros((4, 4))
        a = RasterImage(4, base, 2.0, masked=False)
        b = RasterImage(4, base + 0.1, 2.0, masked=False)
        m = compare(a, b)
        assert m.rmse == pytest.approx(0.1, rel=1e-12)
        assert m.psnr == pytest.approx(20.0, rel=1e-12)
