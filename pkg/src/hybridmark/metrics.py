"""Imperceptibility (MSE/PSNR) and robustness (NC/BER) metrics."""
import math

import numpy as np

from hybridmark.bitcodec import as_bits
from hybridmark.errors import GeometryError, LengthError


def mse(a, b):
    if a.shape != b.shape:
        raise GeometryError(f"shape mismatch {a.shape} vs {b.shape}")
    d = a.pixels.astype(np.float64) - b.pixels.astype(np.float64)
    return float(np.mean(d * d))


def psnr(a, b):
    """PSNR in dB with peak 255; identical images give ``math.inf``."""
    m = mse(a, b)
    if m == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0 ** 2 / m)


def _errors(reference, extracted):
    ref = as_bits(reference)
    ext = as_bits(extracted)
    if ref.size != ext.size:
        raise LengthError(f"stream lengths differ: {ref.size} vs {ext.size}")
    if ref.size == 0:
        raise LengthError("streams must be non-empty")
    return int(np.count_nonzero(ref ^ ext)), ref.size


def nc(reference, extracted):
    """Normalized correlation as used here: 1 - (mismatched bits / L)."""
    err, n = _errors(reference, extracted)
    return 1.0 - err / n


def ber(reference, extracted):
    return 1.0 - nc(reference, extracted)
