"""Least-significant-bit substitution.

Bits are written to bit 0 of the pixels in row-major order, one bit per
pixel, starting at the top-left corner. That order is part of the format.
"""
import numpy as np

from hybridmark.bitcodec import HEADER_BITS, as_bits, bits_to_int
from hybridmark.errors import CapacityError, MalformedHeaderError
from hybridmark.raster import GrayImage


def lsb_embed(img, stream):
    bits = as_bits(stream)
    flat = img.pixels.ravel()
    if bits.size > flat.size:
        raise CapacityError(f"{bits.size} bits do not fit in {flat.size} pixels")
    out = flat.copy()
    out[:bits.size] = (out[:bits.size] & 0xFE) | bits
    return GrayImage(out.reshape(img.shape))


def lsb_extract_n(img, n):
    flat = img.pixels.ravel()
    if n < 0 or n > flat.size:
        raise CapacityError(f"cannot read {n} bits from {flat.size} pixels")
    return (flat[:n] & 1).astype(np.uint8)


def lsb_extract(img):
    """Read the 16-bit length header, then that many payload bits.

    A header that is not a multiple of 8 is returned as-is; only a length
    running past the last pixel is rejected.
    """
    flat = img.pixels.ravel()
    if flat.size < HEADER_BITS:
        raise CapacityError(f"raster has {flat.size} pixels, header needs {HEADER_BITS}")
    total = HEADER_BITS + bits_to_int(flat[:HEADER_BITS] & 1)
    if total > flat.size:
        raise MalformedHeaderError(f"header announces {total} bits, raster holds {flat.size}")
    return lsb_extract_n(img, total)
