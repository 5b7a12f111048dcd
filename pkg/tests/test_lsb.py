import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hybridmark.bitcodec import int_to_bits, text_to_stream
from hybridmark.errors import CapacityError, MalformedHeaderError
from hybridmark.lsb import lsb_embed, lsb_extract, lsb_extract_n
from hybridmark.metrics import mse, psnr
from hybridmark.raster import GrayImage

from conftest import random_image


def test_bit_arithmetic():
    img = GrayImage.from_list(2, 1, [100, 101])
    assert lsb_embed(img, [1, 1]).pixels.tolist() == [[101, 101]]
    assert lsb_embed(img, [0, 0]).pixels.tolist() == [[100, 100]]


def test_only_first_pixels_touched(hosts, document_bits):
    img = hosts["texture"]
    out = lsb_embed(img, document_bits)
    diff = np.abs(out.pixels.astype(int) - img.pixels.astype(int)).ravel()
    assert diff.max() <= 1
    assert not diff[80:].any()
    assert np.array_equal(out.pixels.ravel()[80:], img.pixels.ravel()[80:])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=64), st.integers(0, 2 ** 32 - 1))
def test_roundtrip_fixed_length(bits, seed):
    rng = np.random.default_rng(seed)
    img = random_image(rng, 8, 8)
    out = lsb_embed(img, bits)
    assert lsb_extract_n(out, len(bits)).tolist() == bits
    changed = np.count_nonzero(out.pixels != img.pixels)
    assert changed <= len(bits)


@settings(max_examples=30, deadline=None)
@given(st.text(alphabet=st.characters(max_codepoint=127), max_size=30), st.integers(0, 2 ** 32 - 1))
def test_roundtrip_headered(text, seed):
    img = random_image(np.random.default_rng(seed), 32, 32)
    s = text_to_stream(text)
    assert np.array_equal(lsb_extract(lsb_embed(img, s)), s)


def test_extraction_ignores_high_bits(rng, document_bits):
    img = lsb_embed(random_image(rng, 16, 16), document_bits)
    noisy = (rng.integers(0, 128, size=img.shape) << 1) | (img.pixels & 1)
    assert np.array_equal(lsb_extract(GrayImage(noisy)), lsb_extract(img))


def test_all_zero_image():
    s = lsb_extract(GrayImage(np.zeros((8, 8))))
    assert s.size == 16 and not s.any()


def test_header_overflow_rejected():
    # header announces 65535 payload bits; the 64x64 raster holds 4096
    img = lsb_embed(GrayImage(np.zeros((64, 64))), int_to_bits(65535, 16))
    with pytest.raises(MalformedHeaderError):
        lsb_extract(img)


def test_header_not_byte_multiple_is_returned():
    img = lsb_embed(GrayImage(np.zeros((8, 8))), list(int_to_bits(3, 16)) + [1, 0, 1])
    assert lsb_extract(img).size == 19


def test_fixed_length_cases():
    img = GrayImage(np.full((8, 8), 255))
    assert lsb_extract_n(img, 0).size == 0
    assert lsb_extract_n(img, 16).tolist() == [1] * 16
    with pytest.raises(CapacityError):
        lsb_extract_n(img, 65)


def test_capacity():
    img = GrayImage(np.zeros((2, 2)))
    with pytest.raises(CapacityError):
        lsb_embed(img, [1] * 5)
    with pytest.raises(CapacityError):
        lsb_extract(GrayImage(np.zeros((3, 5))))


def test_psnr_bound(hosts, document_bits):
    bound = 10 * math.log10(255 ** 2 * 512 * 512 / 80)
    assert bound == pytest.approx(83.285, abs=0.001)
    for img in hosts.values():
        out = lsb_embed(img, document_bits)
        assert mse(img, out) <= 80 / (512 * 512)
        assert psnr(img, out) >= bound - 1e-9
