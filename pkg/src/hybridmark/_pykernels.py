"""Pure-Python (numpy) implementations of the hot kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same results (bit-exact for the integer kernels, within 1e-12 for
the FFT).
"""
import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1

# Values this close below a .5 boundary are treated as ties, so that two
# numerically different but mathematically equal evaluation orders round
# the same way.
TIE_EPS = 1e-9


def round_half_away(x):
    x = np.asarray(x, dtype=np.float64)
    return np.copysign(np.floor(np.abs(x) + (0.5 + TIE_EPS)), x)


def splitmix64_fill(seed, n):
    """First ``n`` outputs of a SplitMix64 stream started at ``seed``."""
    if n <= 0:
        return np.zeros(0, dtype=np.uint64)
    k = np.arange(1, n + 1, dtype=np.uint64)
    z = np.uint64(seed & MASK64) + k * np.uint64(GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def shuffle_prefix(n, k, seed):
    """First ``k`` entries of a forward Fisher-Yates shuffle of ``range(n)``.

    Step ``i`` swaps position ``i`` with ``i + bounded(n - i)`` where
    ``bounded(m) = (draw * m) >> 64``. Positions below ``i`` are final, so
    stopping after ``k`` steps gives the prefix of the full shuffle.
    """
    steps = min(k, n - 1)
    draws = splitmix64_fill(seed, max(steps, 0))
    perm = list(range(n))
    for i in range(steps):
        j = i + ((int(draws[i]) * (n - i)) >> 64)
        perm[i], perm[j] = perm[j], perm[i]
    return np.array(perm[:k], dtype=np.int64)


def _bitrev(n):
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def fft_rows(x):
    """Unnormalized forward DFT along the last axis; length must be 2**k."""
    x = np.asarray(x, dtype=np.complex128)
    m, n = x.shape
    out = x[:, _bitrev(n)]
    if n == 1:
        return out
    tw = np.exp(-2j * np.pi * np.arange(n // 2) / n)
    size = 2
    while size <= n:
        half = size // 2
        w = tw[:: n // size]
        blk = out.reshape(m, n // size, size)
        even = blk[:, :, :half]
        odd = blk[:, :, half:] * w
        out = np.concatenate((even + odd, even - odd), axis=2).reshape(m, n)
        size *= 2
    return out


def dct_matrix():
    k = np.arange(8)[:, None]
    n = np.arange(8)[None, :]
    c = np.cos(np.pi * (2 * n + 1) * k / 16.0) * 0.5
    c[0, :] = np.sqrt(0.125)
    return c


_DCT = dct_matrix()


def jpeg_blocks(pixels, qtable):
    """Quantize/dequantize every 8x8 block of a uint8 raster.

    ``pixels`` must have both dimensions divisible by 8.
    """
    h, w = pixels.shape
    q = np.asarray(qtable, dtype=np.float64)
    blocks = pixels.astype(np.float64).reshape(h // 8, 8, w // 8, 8)
    blocks = blocks.transpose(0, 2, 1, 3) - 128.0
    coef = _DCT @ blocks @ _DCT.T
    coef = round_half_away(coef / q) * q
    rec = _DCT.T @ coef @ _DCT + 128.0
    rec = np.clip(round_half_away(rec), 0, 255).astype(np.uint8)
    return np.ascontiguousarray(rec.transpose(0, 2, 1, 3).reshape(h, w))
