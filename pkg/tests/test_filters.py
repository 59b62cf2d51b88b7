import numpy as np
import pytest

from hybridlens import (
    BlendSpec,
    BoundaryPolicy,
    Image,
    InvalidParameterError,
    PyramidSpec,
    SignedImage,
    gaussian_2d,
    highpass,
    hybrid,
    lowpass,
    match_dimensions,
    pyramid_layout,
    scale_pyramid,
    visualize_signed,
)


def highfreq_energy(img, probe_sigma=2.0):
    """Energy above the probe scale: mse between an image and its lowpass."""
    residual = img.planes - lowpass(img, probe_sigma).planes
    return float((residual**2).mean())


class TestLowpass:
    def test_constant_image_unchanged(self):
        img = Image(np.full((8, 8, 3), 0.6))
        out = lowpass(img, 4.0)
        assert np.abs(out.planes - img.planes).max() < 1e-12

    def test_blur_strength_orders_highfreq_energy(self, rng):
        # stronger blur leaves strictly less high-frequency energy behind
        img = Image(rng.random((64, 64, 1)))
        e2 = highfreq_energy(lowpass(img, 2.0))
        e4 = highfreq_energy(lowpass(img, 4.0))
        e7 = highfreq_energy(lowpass(img, 7.0))
        assert e2 > e4 > e7

    def test_impulse_response_is_gaussian_kernel(self):
        planes = np.zeros((33, 33, 1))
        planes[16, 16, 0] = 1.0
        out = lowpass(Image(planes), 2.0).planes[:, :, 0]
        taps = gaussian_2d(2.0).taps
        assert np.abs(out[12:21, 12:21] - taps).max() <= 1e-10
        mask = np.ones((33, 33), dtype=bool)
        mask[12:21, 12:21] = False
        assert np.abs(out[mask]).max() == 0.0


class TestHighpass:
    def test_constant_subtract_is_zero(self):
        img = Image(np.full((10, 10, 3), 0.3))
        out = highpass(img, 4.0, "subtract")
        assert np.abs(out.planes).max() < 1e-12

    def test_constant_log_is_zero(self):
        img = Image(np.full((12, 12, 1), 0.8))
        out = highpass(img, 2.0, "log")
        assert np.abs(out.planes).max() < 1e-9

    def test_subtract_decomposition_reconstructs(self, rng):
        img = Image(rng.random((20, 19, 3)))
        low = lowpass(img, 3.0).planes
        high = highpass(img, 3.0, "subtract").planes
        assert np.abs((low + high) - img.planes).max() < 1e-12

    def test_unknown_mode_rejected(self, rng):
        with pytest.raises(InvalidParameterError):
            highpass(Image(rng.random((8, 8, 1))), 2.0, "fourier")


class TestVisualizeSigned:
    def test_zero_maps_to_midgray(self):
        s = SignedImage(np.zeros((4, 4, 1)))
        assert np.array_equal(visualize_signed(s).planes, np.full((4, 4, 1), 0.5))

    def test_clamp_floor_and_ceiling(self):
        s = SignedImage(np.array([[[-0.7, 0.6, 0.0]]]))
        out = visualize_signed(s).planes
        assert out[0, 0, 0] == 0.0
        assert out[0, 0, 1] == 1.0
        assert out[0, 0, 2] == 0.5


class TestHybrid:
    def test_weight_one_equals_lowpass_bitwise(self, rng):
        a = Image(rng.random((24, 24, 3)))
        b = Image(rng.random((24, 24, 3)))
        spec = BlendSpec(sigma_low=3.0, sigma_high=2.0, weight=1.0)
        out = hybrid(a, b, spec)
        assert out.planes.tobytes() == lowpass(a, 3.0).planes.tobytes()

    def test_weight_zero_equals_visualized_highpass_bitwise(self, rng):
        a = Image(rng.random((24, 24, 3)))
        b = Image(rng.random((24, 24, 3)))
        spec = BlendSpec(sigma_low=3.0, sigma_high=2.0, weight=0.0)
        out = hybrid(a, b, spec)
        want = visualize_signed(highpass(b, 2.0, "subtract"))
        assert out.planes.tobytes() == want.planes.tobytes()

    def test_constant_sources_blend_formula(self):
        c = 0.4
        img = Image(np.full((16, 16, 1), c))
        out = hybrid(img, img, BlendSpec(sigma_low=7.0, sigma_high=7.0, weight=0.5))
        assert np.abs(out.planes - (0.5 * c + 0.25)).max() < 1e-12

    def test_monotone_in_weight_where_unsaturated(self, rng):
        a = Image(rng.random((16, 16, 1)))
        b = Image(rng.random((16, 16, 1)))
        low = lowpass(a, 3.0).planes

        def blend(w):
            return hybrid(a, b, BlendSpec(sigma_low=3.0, sigma_high=3.0, weight=w)).planes

        w1, w2 = 0.3, 0.7
        out1, out2 = blend(w1), blend(w2)
        unsaturated = (out1 > 0) & (out1 < 1) & (out2 > 0) & (out2 < 1)
        assert unsaturated.any()
        assert (np.abs(out2 - low)[unsaturated] <= np.abs(out1 - low)[unsaturated] + 1e-12).all()

    def test_output_in_unit_range(self, rng):
        a = Image(rng.random((12, 12, 3)))
        b = Image(rng.random((12, 12, 3)))
        out = hybrid(a, b, BlendSpec(weight=0.65, sigma_low=2.0, sigma_high=2.0))
        assert out.planes.min() >= 0.0
        assert out.planes.max() <= 1.0

    def test_log_mode_supported(self, rng):
        a = Image(rng.random((16, 16, 1)))
        b = Image(rng.random((16, 16, 1)))
        out = hybrid(a, b, BlendSpec(sigma_low=2.0, sigma_high=2.0, highpass_mode="log"))
        assert out.planes.shape == (16, 16, 1)

    def test_dimension_mismatch_rejected(self, rng):
        a = Image(rng.random((8, 8, 1)))
        b = Image(rng.random((9, 8, 1)))
        with pytest.raises(Exception, match="match_dimensions"):
            hybrid(a, b, BlendSpec())

    def test_deterministic(self, rng):
        a = Image(rng.random((10, 10, 3)))
        b = Image(rng.random((10, 10, 3)))
        spec = BlendSpec(weight=0.65, sigma_low=4.0, sigma_high=2.0)
        assert hybrid(a, b, spec).planes.tobytes() == hybrid(a, b, spec).planes.tobytes()

    def test_spec_validation(self):
        with pytest.raises(InvalidParameterError):
            BlendSpec(weight=1.5)
        with pytest.raises(InvalidParameterError):
            BlendSpec(sigma_low=0.0)
        with pytest.raises(InvalidParameterError):
            BlendSpec(highpass_mode="nope")


class TestMatchDimensions:
    def test_paper_dimension_pair(self):
        a = Image(np.zeros((894, 1577, 3)))
        b = Image(np.zeros((721, 991, 3)))
        ra, rb = match_dimensions(a, b)
        assert (ra.width, ra.height) == (991, 721)
        assert (rb.width, rb.height) == (991, 721)

    def test_min_rule_per_axis(self):
        a = Image(np.zeros((50, 100, 1)))  # 100 wide, 50 high
        b = Image(np.zeros((100, 50, 1)))  # 50 wide, 100 high
        ra, rb = match_dimensions(a, b)
        assert (ra.width, ra.height) == (50, 50)
        assert (rb.width, rb.height) == (50, 50)

    def test_identical_sizes_returned_unchanged(self, rng):
        a = Image(rng.random((12, 15, 3)))
        b = Image(rng.random((12, 15, 3)))
        ra, rb = match_dimensions(a, b)
        assert ra is a
        assert rb is b

    def test_never_increases_pixel_count(self, rng):
        a = Image(rng.random((13, 9, 1)))
        b = Image(rng.random((7, 21, 1)))
        ra, rb = match_dimensions(a, b)
        assert ra.width * ra.height <= a.width * a.height
        assert rb.width * rb.height <= b.width * b.height

    def test_channel_mismatch_rejected(self, rng):
        a = Image(rng.random((8, 8, 1)))
        b = Image(rng.random((8, 8, 3)))
        with pytest.raises(InvalidParameterError, match="channel"):
            match_dimensions(a, b)


class TestScalePyramid:
    def test_single_level_is_original(self, rng):
        img = Image(rng.random((9, 11, 3)))
        strip = scale_pyramid(img, PyramidSpec(levels=1, scale_factor=0.5, gap_px=4))
        assert np.array_equal(strip.planes, img.planes)

    def test_geometric_level_sizes(self, rng):
        img = Image(rng.random((64, 64, 1)))
        spec = PyramidSpec(levels=3, scale_factor=0.5, gap_px=8)
        assert pyramid_layout(64, 64, spec) == [(64, 64), (32, 32), (16, 16)]
        strip = scale_pyramid(img, spec)
        assert strip.height == 64
        assert strip.width == 64 + 8 + 32 + 8 + 16
        # levels are bottom-aligned: area above the smallest copy is white
        assert np.array_equal(strip.planes[: 64 - 16, 64 + 8 + 32 + 8 :, :], np.ones((48, 16, 1)))
        # first level is the untouched original
        assert np.array_equal(strip.planes[:, :64, :], img.planes)

    def test_stops_before_degenerate_level(self):
        spec = PyramidSpec(levels=5, scale_factor=0.1, gap_px=0)
        assert pyramid_layout(4, 4, spec) == [(4, 4)]

    def test_strip_width_arithmetic(self, rng):
        img = Image(rng.random((20, 30, 1)))
        spec = PyramidSpec(levels=4, scale_factor=0.6, gap_px=3)
        dims = pyramid_layout(30, 20, spec)
        strip = scale_pyramid(img, spec)
        assert strip.width == sum(w for w, _ in dims) + 3 * (len(dims) - 1)

    def test_spec_validation(self):
        with pytest.raises(InvalidParameterError):
            PyramidSpec(levels=0)
        with pytest.raises(InvalidParameterError):
            PyramidSpec(scale_factor=1.5)
        with pytest.raises(InvalidParameterError):
            PyramidSpec(gap_px=-1)


def test_boundary_policy_parse():
    assert BoundaryPolicy.parse("REFLECT") is BoundaryPolicy.REFLECT
    with pytest.raises(InvalidParameterError):
        BoundaryPolicy.parse("wrap")
