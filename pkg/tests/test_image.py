import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from PIL import Image

from isle.image import (
    intensity_median,
    load_edge_map,
    load_image,
    save_image,
    scale_brightness,
    to_luma,
)


def test_load_white_png(tmp_path):
    p = tmp_path / "white.png"
    Image.fromarray(np.full((2, 2, 3), 255, dtype=np.uint8)).save(p)
    img = load_image(p)
    assert img.shape == (2, 2, 3)
    assert np.all(img == 1.0)


def test_load_black_pixel(tmp_path):
    p = tmp_path / "black.png"
    Image.fromarray(np.zeros((1, 1, 3), dtype=np.uint8)).save(p)
    assert np.all(load_image(p) == 0.0)


def test_load_midgray_value(tmp_path):
    p = tmp_path / "gray.png"
    Image.fromarray(np.full((1, 1), 128, dtype=np.uint8), mode="L").save(p)
    img = load_image(p)
    assert img.shape == (1, 1, 3)
    assert img[0, 0, 0] == pytest.approx(128 / 255)


def test_load_gray_replicates_channels(tmp_path):
    p = tmp_path / "g.png"
    Image.fromarray((np.arange(12, dtype=np.uint8) * 20).reshape(3, 4), mode="L").save(p)
    img = load_image(p)
    assert np.array_equal(img[:, :, 0], img[:, :, 1])
    assert np.array_equal(img[:, :, 0], img[:, :, 2])


def test_load_ppm_and_pgm(tmp_path):
    rgb = np.arange(27, dtype=np.uint8).reshape(3, 3, 3) * 9
    p = tmp_path / "img.ppm"
    Image.fromarray(rgb).save(p, format="PPM")
    assert np.allclose(load_image(p), rgb / 255.0)
    g = tmp_path / "img.pgm"
    Image.fromarray(rgb[:, :, 0], mode="L").save(g)
    assert np.allclose(load_image(g)[:, :, 0], rgb[:, :, 0] / 255.0)


def test_load_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError, match="nope.png"):
        load_image(tmp_path / "nope.png")


def test_load_garbage_raises_oserror(tmp_path):
    p = tmp_path / "junk.png"
    p.write_bytes(b"this is not an image")
    with pytest.raises(OSError, match="junk.png"):
        load_image(p)


def test_save_rejects_16bit(tmp_path):
    p = tmp_path / "deep.png"
    Image.fromarray(np.full((2, 2), 40000, dtype=np.uint16)).save(p)
    with pytest.raises(OSError):
        load_image(p)


def test_save_edge_map_single_255(tmp_path):
    edges = np.zeros((4, 5), dtype=bool)
    edges[2, 3] = True
    p = tmp_path / "e.png"
    save_image(edges, p)
    raw = np.asarray(Image.open(p))
    assert raw.shape == (4, 5)
    assert (raw == 255).sum() == 1
    assert raw[2, 3] == 255
    assert np.array_equal(load_edge_map(p), edges)


def test_save_half_rounds_away_from_zero(tmp_path):
    p = tmp_path / "h.png"
    save_image(np.full((1, 1), 0.5), p)
    assert np.asarray(Image.open(p))[0, 0] == 128


def test_roundtrip_within_quantization(tmp_path):
    rng = np.random.default_rng(1)
    for i in range(100):
        img = rng.uniform(0.0, 1.0, (7, 9, 3))
        p = tmp_path / f"r{i}.png"
        save_image(img, p)
        back = load_image(p)
        assert np.abs(back - img).max() <= 1.0 / 255.0 + 1e-12


def test_luma_white_and_primaries():
    white = np.ones((1, 1, 3))
    assert to_luma(white)[0, 0] == pytest.approx(1.0)
    red = np.zeros((1, 1, 3))
    red[0, 0, 0] = 1.0
    assert to_luma(red)[0, 0] == pytest.approx(0.299)


def test_luma_weighted_mix():
    px = np.array([[[0.2, 0.4, 0.6]]])
    assert to_luma(px)[0, 0] == pytest.approx(0.299 * 0.2 + 0.587 * 0.4 + 0.114 * 0.6)
    assert to_luma(px)[0, 0] == pytest.approx(0.3630, abs=1e-4)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_luma_range_and_pointwise(seed):
    rng = np.random.default_rng(seed)
    img = rng.uniform(0.0, 1.0, (6, 5, 3))
    y = to_luma(img)
    assert y.min() >= 0.0 and y.max() <= 1.0
    perm = rng.permutation(30)
    flat = img.reshape(30, 3)[perm].reshape(6, 5, 3)
    y_perm = to_luma(flat)
    inv = np.argsort(perm)
    assert np.array_equal(y_perm.reshape(30)[inv], y.reshape(30))


def test_median_uniform_constant():
    img = np.full((3, 3), 128 / 255)
    assert intensity_median(img) == 128


def test_median_lower_of_even_count():
    img = np.array([[10, 20], [30, 40]]) / 255.0
    assert intensity_median(img) == 20


def test_median_random_image_near_127():
    for seed in range(10):
        rng = np.random.default_rng(seed)
        img = rng.uniform(0.0, 1.0, (512, 512))
        assert abs(intensity_median(img) - 127) <= 2


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_median_permutation_invariant(seed):
    rng = np.random.default_rng(seed)
    img = rng.uniform(0.0, 1.0, (5, 7))
    med = intensity_median(img)
    shuffled = rng.permutation(img.ravel()).reshape(5, 7)
    assert intensity_median(shuffled) == med


def test_brightness_identity_and_clamp():
    rng = np.random.default_rng(2)
    img = rng.uniform(0.0, 1.0, (4, 4, 3))
    assert np.array_equal(scale_brightness(img, 1.0), img)
    hot = np.full((1, 1, 3), 0.9)
    assert np.all(scale_brightness(hot, 1.5) == 1.0)


def test_brightness_factor_values():
    px = np.full((1, 1, 3), 0.5)
    assert scale_brightness(px, 1.3)[0, 0, 0] == pytest.approx(0.65)
    assert scale_brightness(px, 1.5)[0, 0, 0] == pytest.approx(0.75)


@given(
    st.integers(0, 2**32 - 1),
    st.floats(1.0, 2.0),
    st.floats(1.0, 2.0),
)
@settings(max_examples=25, deadline=None)
def test_brightness_monotone_in_factor(seed, fa, fb):
    rng = np.random.default_rng(seed)
    img = rng.uniform(0.0, 1.0, (3, 4, 3))
    lo, hi = sorted([fa, fb])
    assert np.all(scale_brightness(img, lo) <= scale_brightness(img, hi) + 1e-15)


def test_brightness_rejects_nonpositive():
    with pytest.raises(ValueError):
        scale_brightness(np.zeros((1, 1, 3)), 0.0)
