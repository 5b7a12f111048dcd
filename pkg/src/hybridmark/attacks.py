"""Seeded, deterministic attack channels: JPEG quantization, Gaussian and impulse noise."""
from dataclasses import dataclass

import numpy as np

from hybridmark._backend import kernels
from hybridmark._pykernels import round_half_away
from hybridmark.errors import ParamError
from hybridmark.raster import GrayImage

# Standard luminance table (JPEG Annex K.1).
BASE_LUMA = np.array([
    [16, 11, 10, 16, 24, 40, 51, 61],
    [12, 12, 14, 19, 26, 58, 60, 55],
    [14, 13, 16, 24, 40, 57, 69, 56],
    [14, 17, 22, 29, 51, 87, 80, 62],
    [18, 22, 37, 56, 68, 109, 103, 77],
    [24, 35, 55, 64, 81, 104, 113, 92],
    [49, 64, 78, 87, 103, 121, 120, 101],
    [72, 92, 95, 98, 112, 100, 103, 99],
], dtype=np.int64)

KIND_ALIASES = {
    "jpeg": "jpeg",
    "gauss": "gauss", "gaussian": "gauss",
    "sp": "sp", "saltpepper": "sp", "salt-pepper": "sp",
}


@dataclass(frozen=True)
class AttackSpec:
    kind: str
    param: float
    seed: int = 0

    def __post_init__(self):
        kind = KIND_ALIASES.get(self.kind)
        if kind is None:
            raise ParamError(f"unknown attack kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        _check_param(kind, self.param)

    @property
    def label(self):
        return f"{self.kind}:{format_param(self.kind, self.param)}"

    def apply(self, img):
        if self.kind == "jpeg":
            return jpeg_attack(img, int(self.param))
        if self.kind == "gauss":
            return gaussian_attack(img, self.param, self.seed)
        return saltpepper_attack(img, self.param, self.seed)


def format_param(kind, param):
    if kind == "jpeg":
        return str(int(param))
    return f"{float(param):.6f}"


def parse_attack(label, seed=0):
    """``"jpeg:50"`` / ``"gauss:0.01"`` / ``"sp:0.10"`` -> AttackSpec."""
    kind, sep, value = label.partition(":")
    if not sep:
        raise ParamError(f"attack label {label!r} is not kind:parameter")
    try:
        param = float(value)
    except ValueError:
        raise ParamError(f"bad attack parameter in {label!r}") from None
    return AttackSpec(kind.strip().lower(), param, seed)


def _check_param(kind, param):
    if kind == "jpeg":
        if param != int(param) or not 1 <= param <= 100:
            raise ParamError(f"JPEG quality must be an integer in 1..100, got {param}")
    elif kind == "gauss":
        if not param >= 0:
            raise ParamError(f"noise variance must be >= 0, got {param}")
    elif not 0 <= param <= 1:
        raise ParamError(f"impulse density must lie in [0, 1], got {param}")


def quality_table(qf):
    """IJG quality scaling of the base luminance table."""
    if qf != int(qf) or not 1 <= qf <= 100:
        raise ParamError(f"JPEG quality must be an integer in 1..100, got {qf}")
    qf = int(qf)
    # IJG integer arithmetic: 5000 / qf truncates.
    scale = 5000 // qf if qf < 50 else 200 - 2 * qf
    return np.clip((BASE_LUMA * scale + 50) // 100, 1, 255)


def jpeg_attack(img, qf):
    table = quality_table(qf)
    h, w = img.shape
    ph, pw = -h % 8, -w % 8
    pixels = img.pixels
    if ph or pw:
        pixels = np.pad(pixels, ((0, ph), (0, pw)), mode="edge")
    out = kernels.jpeg_blocks(np.ascontiguousarray(pixels), table.astype(np.float64))
    return GrayImage(out[:h, :w])


def uniforms(seed, n):
    """``n`` doubles in [0, 1) from the top 53 bits of SplitMix64 draws."""
    draws = kernels.splitmix64_fill(seed, n)
    return (draws >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def normals(seed, n):
    """Box-Muller standard normals; draw pair j yields normals 2j (cos) and 2j+1 (sin)."""
    pairs = (n + 1) // 2
    u = uniforms(seed, 2 * pairs)
    u1 = 1.0 - u[0::2]
    u2 = u[1::2]
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * pairs)
    z[0::2] = r * np.cos(2.0 * np.pi * u2)
    z[1::2] = r * np.sin(2.0 * np.pi * u2)
    return z[:n]


def gaussian_attack(img, variance, seed):
    """Additive zero-mean noise; ``variance`` is on the [0, 1] intensity scale."""
    _check_param("gauss", variance)
    if variance == 0:
        return img
    n = normals(seed, img.pixels.size).reshape(img.shape) * np.sqrt(variance)
    out = round_half_away(img.pixels.astype(np.float64) + 255.0 * n)
    return GrayImage(np.clip(out, 0, 255).astype(np.uint8))


def saltpepper_attack(img, density, seed):
    _check_param("sp", density)
    u = uniforms(seed, img.pixels.size).reshape(img.shape)
    out = img.pixels.copy()
    out[u < density / 2] = 0
    out[(u >= density / 2) & (u < density)] = 255
    return GrayImage(out)
