"""2-D radix-2 FFT and the double/uint8 conversions around it.

Conventions follow MATLAB's fft2/ifft2: the forward transform is
unnormalized, the inverse carries the 1/(H*W) factor. Geometry is limited
to power-of-two sides.
"""
import numpy as np

from hybridmark._backend import kernels
from hybridmark._pykernels import round_half_away
from hybridmark.errors import GeometryError
from hybridmark.raster import GrayImage


def _is_pow2(n):
    return n >= 1 and n & (n - 1) == 0


def check_geometry(shape):
    h, w = shape
    if not (_is_pow2(h) and _is_pow2(w)):
        raise GeometryError(f"FFT needs power-of-two sides, got {w}x{h}")


def to_double(img):
    return img.pixels.astype(np.float64) / 255.0


def from_double(plane):
    scaled = 255.0 * np.clip(np.asarray(plane, dtype=np.float64), 0.0, 1.0)
    return GrayImage(round_half_away(scaled).astype(np.uint8))


def fft2(plane, backend=None):
    k = backend or kernels
    plane = np.asarray(plane)
    check_geometry(plane.shape)
    rows = k.fft_rows(plane.astype(np.complex128))
    return np.ascontiguousarray(k.fft_rows(np.ascontiguousarray(rows.T)).T)


def ifft2_complex(spec, backend=None):
    k = backend or kernels
    spec = np.asarray(spec, dtype=np.complex128)
    check_geometry(spec.shape)
    h, w = spec.shape
    return np.conj(fft2(np.conj(spec), backend=k)) / (h * w)


def ifft2(spec, backend=None):
    """Inverse transform, real part only."""
    return ifft2_complex(spec, backend=backend).real


def magnitude(spec):
    return np.abs(spec)


def phase(spec):
    return np.angle(spec)


def mirror(u, v, shape):
    """Index of the conjugate partner of bin ``(u, v)``."""
    h, w = shape
    return (-u) % h, (-v) % w
