import numpy as np
import pytest

from hybridmark.dft import dft_embed, dft_extract, plan_coords
from hybridmark.errors import PlanMismatchError
from hybridmark.hybrid import (
    HybridOrder, hybrid_embed, hybrid_extract, hybrid_extract_blind_check, validate_header,
)
from hybridmark.lsb import lsb_embed, lsb_extract_n
from hybridmark.metrics import nc, psnr
from hybridmark.raster import GrayImage
from hybridmark.spectral import fft2, from_double, ifft2, to_double


@pytest.fixture(scope="module")
def plans(hosts):
    return {name: plan_coords(img, 42, 80) for name, img in hosts.items()}


def test_lsb_first_order_is_literal_composition(hosts, plans, document_bits):
    img, plan = hosts["texture"], plans["texture"]
    out = hybrid_embed(img, document_bits, 0.1, plan, HybridOrder.LSB_THEN_DFT)
    assert out == dft_embed(lsb_embed(img, document_bits), document_bits, 0.1, plan)


def test_default_order_keeps_lsb_layer(hosts, plans, document_bits):
    for name, img in hosts.items():
        out = hybrid_embed(img, document_bits, 0.1, plans[name])
        assert np.array_equal(lsb_extract_n(out, 80), document_bits)
        assert out == lsb_embed(dft_embed(img, document_bits, 0.1, plans[name]), document_bits)


def test_no_attack_extraction(hosts, plans, document_bits):
    for name, img in hosts.items():
        out = hybrid_embed(img, document_bits, 0.1, plans[name], "dft_then_lsb")
        rep = hybrid_extract(out, img, plans[name], document_bits)
        assert rep.path == "dft"
        assert rep.nc_dft >= 0.95
        assert nc(document_bits, rep.stream) >= 0.95
        assert nc(document_bits, lsb_extract_n(out, 80)) == 1.0


def test_double_embedding_costs_quality(hosts, plans, document_bits):
    for name, img in hosts.items():
        h = psnr(img, hybrid_embed(img, document_bits, 0.1, plans[name]))
        d = psnr(img, dft_embed(img, document_bits, 0.1, plans[name]))
        assert h <= d + 0.5


def _corrupt_midband(img, plan, bits, count):
    """Shrink the planned bins of ``count`` one-bits to 0.8x their value."""
    spec = fft2(to_double(img))
    ones = np.flatnonzero(bits == 1)[:count]
    r, c = plan.rows[ones], plan.cols[ones]
    h, w = img.shape
    for scale_r, scale_c in ((r, c), ((-r) % h, (-c) % w)):
        spec[scale_r, scale_c] *= 0.8 / 1.1
    return from_double(ifft2(spec))


@pytest.mark.parametrize("count,expected_path", [(4, "dft"), (34, "lsb_fallback")])
def test_midband_corruption_flips_path(hosts, plans, document_bits, count, expected_path):
    img, plan = hosts["checker"], plans["checker"]
    marked = hybrid_embed(img, document_bits, 0.1, plan)
    bad = _corrupt_midband(marked, plan, document_bits, count)
    rep = hybrid_extract(bad, img, plan, document_bits)
    assert rep.path == expected_path
    assert (rep.nc_dft >= 0.75) == (expected_path == "dft")
    if expected_path == "lsb_fallback":
        assert np.array_equal(rep.stream, lsb_extract_n(bad, 80))
    else:
        assert np.array_equal(rep.stream, dft_extract(bad, img, plan))


@pytest.mark.parametrize("flips", range(0, 41, 4))
def test_path_is_function_of_nc_and_threshold(hosts, plans, document_bits, flips):
    img, plan = hosts["texture"], plans["texture"]
    marked = hybrid_embed(img, document_bits, 0.1, plan)
    ref = document_bits.copy()
    ref[:flips] ^= 1
    rep = hybrid_extract(marked, img, plan, ref)
    expected_nc = nc(ref, dft_extract(marked, img, plan))
    assert rep.nc_dft == expected_nc
    assert rep.path == ("dft" if expected_nc >= 0.75 else "lsb_fallback")
    for threshold in (0.0, 1.0):
        rep = hybrid_extract(marked, img, plan, ref, threshold=threshold)
        assert rep.path == ("dft" if expected_nc >= threshold else "lsb_fallback")


def test_reference_length_checked(hosts, plans, document_bits):
    img = hosts["texture"]
    with pytest.raises(PlanMismatchError):
        hybrid_extract(img, img, plans["texture"], document_bits[:40])
    with pytest.raises(PlanMismatchError):
        hybrid_embed(img, document_bits[:40], 0.1, plans["texture"])


def test_blind_check(hosts, plans, document_bits):
    img, plan = hosts["gradient"], plans["gradient"]
    marked = hybrid_embed(img, document_bits, 0.1, plan)
    assert hybrid_extract_blind_check(marked, img, plan).path == "dft"
    flat = GrayImage(img.pixels)
    rep = hybrid_extract_blind_check(flat, img, plan)
    assert rep.path == "lsb_fallback"
    assert validate_header(document_bits)
