import math

import numpy as np
import pytest

from hybridmark.attacks import (
    BASE_LUMA, AttackSpec, gaussian_attack, jpeg_attack, normals, parse_attack, quality_table,
    saltpepper_attack, uniforms,
)
from hybridmark.errors import ParamError
from hybridmark.metrics import psnr
from hybridmark.raster import GrayImage
from hybridmark._pykernels import dct_matrix

from conftest import random_image


def test_quality_table_examples():
    assert np.array_equal(quality_table(50), BASE_LUMA)
    assert quality_table(90)[0, 0] == (16 * 20 + 50) // 100 == 3
    assert (quality_table(100) == 1).all()


def _table_oracle(qf):
    s = 5000 // qf if qf < 50 else 200 - 2 * qf
    return [[min(max((b * s + 50) // 100, 1), 255) for b in row] for row in BASE_LUMA.tolist()]


@pytest.mark.parametrize("qf", [1, 10, 20, 25, 30, 49, 50, 51, 70, 90, 99, 100])
def test_quality_table_formula(qf):
    assert quality_table(qf).tolist() == _table_oracle(qf)


@pytest.mark.parametrize("qf", [0, 101, 50.5])
def test_quality_out_of_range(qf):
    with pytest.raises(ParamError):
        quality_table(qf)


def _rha(x):
    return math.copysign(math.floor(abs(x) + 0.5 + 1e-9), x)


_n = np.arange(8)
_C = np.where(_n[:, None] == 0, math.sqrt(1 / 8), math.sqrt(2 / 8))
_COS = np.cos(np.pi * (2 * _n[None, :] + 1) * _n[:, None] / 16)  # [k, x]
_BASIS = (_C * _COS)[:, None, :, None] * (_C * _COS)[None, :, None, :]  # [k, l, x, y]


def jpeg_block_oracle(block, table):
    """Direct O(N^4) DCT sums, scalar rounding."""
    shifted = block.astype(np.float64) - 128.0
    coef = np.einsum("klxy,xy->kl", _BASIS, shifted)
    deq = np.vectorize(_rha)(coef / table) * table
    rec = np.einsum("klxy,kl->xy", _BASIS, deq) + 128.0
    return np.clip(np.vectorize(_rha)(rec), 0, 255).astype(np.uint8)


def test_block_pipeline_matches_direct_sums(backend, rng):
    from hybridmark.attacks import kernels as _  # noqa: F401
    blocks = rng.integers(0, 256, size=(200, 8, 8)).astype(np.uint8)
    for i, qf in enumerate(rng.choice([10, 20, 30, 50, 70, 90, 100], size=200)):
        table = quality_table(int(qf)).astype(np.float64)
        got = backend.jpeg_blocks(blocks[i], table)
        assert np.array_equal(got, jpeg_block_oracle(blocks[i], table))


def test_dct_orthonormal():
    c = dct_matrix()
    assert np.abs(c @ c.T - np.eye(8)).max() < 1e-12
    block = np.random.default_rng(0).random((8, 8))
    assert np.abs(c.T @ (c @ block @ c.T) @ c - block).max() < 1e-9


def test_constant_image_stays_flat():
    # only the DC coefficient survives; it is reproduced exactly once its
    # quantization step (at most 8 for qf >= 74) keeps the error under half a level
    for value in (0, 77, 128, 200, 255):
        img = GrayImage(np.full((32, 32), value))
        for qf in (1, 5, 20, 50, 73, 74, 90, 100):
            out = jpeg_attack(img, qf).pixels
            q = int(quality_table(qf)[0, 0])
            expect = _rha(_rha(8.0 * (value - 128) / q) * q / 8.0 + 128)
            assert (out == min(max(expect, 0), 255)).all()
            if qf >= 74:
                assert (out == value).all()


def test_qf100_near_lossless(hosts, rng):
    for img in list(hosts.values()) + [random_image(rng, 64, 64)]:
        assert psnr(img, jpeg_attack(img, 100)) >= 45.0


def test_padding_for_odd_geometry(rng):
    img = random_image(rng, 13, 21)
    out = jpeg_attack(img, 50)
    assert out.shape == (13, 21)
    padded = GrayImage(np.pad(img.pixels, ((0, 3), (0, 3)), mode="edge"))
    assert np.array_equal(out.pixels, jpeg_attack(padded, 50).pixels[:13, :21])


def test_second_pass_changes_fewer_pixels(hosts):
    for img in hosts.values():
        once = jpeg_attack(img, 50)
        twice = jpeg_attack(once, 50)
        assert np.count_nonzero(twice.pixels != once.pixels) < np.count_nonzero(once.pixels != img.pixels)


def test_gaussian_identity_and_determinism(hosts):
    img = hosts["texture"]
    assert gaussian_attack(img, 0.0, 1) == img
    assert gaussian_attack(img, 0.01, 9) == gaussian_attack(img, 0.01, 9)
    assert gaussian_attack(img, 0.01, 9) != gaussian_attack(img, 0.01, 10)


def test_gaussian_std_on_mid_gray():
    img = GrayImage(np.full((512, 512), 128))
    d = gaussian_attack(img, 0.01, 42).pixels.astype(float) - 128
    assert abs(d.std() - 25.5) <= 0.05 * 25.5
    assert abs(d.mean()) < 0.5


def test_normals_statistics():
    z = normals(123, 200001)
    assert z.size == 200001
    assert abs(z.mean()) < 0.01
    assert abs(z.std() - 1) < 0.01
    u = uniforms(123, 1000)
    assert (u >= 0).all() and (u < 1).all()


def test_saltpepper_counts():
    img = GrayImage(np.full((512, 512), 128))
    out = saltpepper_attack(img, 0.10, 42).pixels
    changed = np.count_nonzero(out != 128)
    assert abs(changed - 26214) <= 500
    zeros, whites = np.count_nonzero(out == 0), np.count_nonzero(out == 255)
    assert abs(zeros - whites) < 4 * math.sqrt(262144 * 0.05)


def test_saltpepper_identity_determinism(hosts):
    img = hosts["checker"]
    assert saltpepper_attack(img, 0.0, 3) == img
    assert saltpepper_attack(img, 0.05, 3) == saltpepper_attack(img, 0.05, 3)
    with pytest.raises(ParamError):
        saltpepper_attack(img, 1.5, 3)


def test_attack_spec_labels():
    assert AttackSpec("jpeg", 50).label == "jpeg:50"
    assert AttackSpec("gaussian", 0.01).label == "gauss:0.010000"
    assert parse_attack("sp:0.10", seed=4) == AttackSpec("sp", 0.1, 4)
    with pytest.raises(ParamError):
        AttackSpec("blur", 1)
    with pytest.raises(ParamError):
        parse_attack("jpeg")
    with pytest.raises(ParamError):
        AttackSpec("gauss", -1)
    with pytest.raises(ParamError):
        AttackSpec("jpeg", 0)


def test_attacks_valid_output(hosts):
    img = hosts["gradient"]
    for spec in (AttackSpec("jpeg", 20), AttackSpec("gauss", 0.5, 1), AttackSpec("sp", 1.0, 1)):
        out = spec.apply(img)
        assert out.shape == img.shape and out.pixels.dtype == np.uint8
