"""Non-blind watermarking by multiplicative DFT-magnitude modulation.

Each bit scales one mid-band coefficient (and its conjugate partner) by
``1 + alpha`` for a 1 or ``1 - alpha`` for a 0. Extraction compares the
magnitudes of the watermarked and original spectra at the same bins.

Coordinates are drawn from the upper half-plane ``u < H/2`` (on row 0 only
``0 < v < W/2``) so that every chosen bin has a distinct partner and
self-conjugate bins are skipped. The band radius is measured on the
center-shifted spectrum, i.e. on the signed frequencies.
"""
from dataclasses import dataclass

import numpy as np

from hybridmark._backend import kernels
from hybridmark.bitcodec import as_bits
from hybridmark.errors import CapacityError, GeometryError, ParamError, PlanMismatchError
from hybridmark.spectral import fft2, from_double, ifft2, ifft2_complex, to_double

DEFAULT_SEED = 42
DEFAULT_ALPHA = 0.1
DEFAULT_BAND = (0.10, 0.30)
# Bins weaker than this cannot carry a +-10% change through uint8 rounding
# and moderate attacks on 512x512 rasters (spectrum of the [0, 1] plane).
DEFAULT_MAG_FLOOR = 500.0


@dataclass(frozen=True)
class CoordinatePlan:
    seed: int
    length: int
    coords: tuple
    band: tuple
    mag_floor: float
    shape: tuple
    eligible: int = 0

    @property
    def rows(self):
        return np.array([c[0] for c in self.coords], dtype=np.int64)

    @property
    def cols(self):
        return np.array([c[1] for c in self.coords], dtype=np.int64)

    def mirrors(self):
        h, w = self.shape
        return (-self.rows) % h, (-self.cols) % w

    def prefix(self, n):
        """Plan for the first ``n`` bits; equals the plan built with ``length=n``."""
        if not 1 <= n <= self.length:
            raise PlanMismatchError(f"prefix length {n} outside 1..{self.length}")
        return CoordinatePlan(self.seed, n, self.coords[:n], self.band, self.mag_floor,
                              self.shape, self.eligible)


def signed_radius(shape):
    """Distance of every upper-half-plane bin from DC on the shifted spectrum."""
    h, w = shape
    fu = np.arange(h // 2, dtype=np.float64)[:, None]
    v = np.arange(w)
    fv = np.where(v < w / 2, v, v - w).astype(np.float64)[None, :]
    return np.sqrt(fu * fu + fv * fv)


def eligible_bins(spectrum, band=DEFAULT_BAND, mag_floor=DEFAULT_MAG_FLOOR):
    """All usable bins in (u, v) lexicographic order, as an (n, 2) array."""
    h, w = spectrum.shape
    r_in, r_out = band
    if not 0 < r_in < r_out <= 0.5:
        raise ParamError(f"band must satisfy 0 < r_in < r_out <= 0.5, got {band}")
    side = min(h, w)
    r = signed_radius((h, w))
    mask = (r >= r_in * side) & (r <= r_out * side)
    mask[0, w // 2:] = False
    mask[0, 0] = False
    mask &= np.abs(spectrum[: h // 2, :]) >= mag_floor
    return np.argwhere(mask)


def plan_coords(original, seed=DEFAULT_SEED, length=80, band=DEFAULT_BAND,
                mag_floor=DEFAULT_MAG_FLOOR, spectrum=None):
    if length < 1:
        raise ParamError("plan length must be at least 1")
    if spectrum is None:
        spectrum = fft2(to_double(original))
    bins = eligible_bins(spectrum, band, mag_floor)
    if len(bins) < length:
        raise CapacityError(f"only {len(bins)} eligible bins for {length} bits "
                            f"(band={band}, mag_floor={mag_floor})")
    order = kernels.shuffle_prefix(len(bins), length, seed)
    chosen = bins[order]
    coords = tuple((int(u), int(v)) for u, v in chosen)
    return CoordinatePlan(int(seed), int(length), coords, (float(band[0]), float(band[1])),
                          float(mag_floor), tuple(spectrum.shape), len(bins))


def _check_alpha(alpha):
    if not 0 < alpha < 1:
        raise ParamError(f"alpha must lie in (0, 1), got {alpha}")


def modulate(spectrum, stream, alpha, plan):
    """Scale planned bins and their partners; returns a new spectrum."""
    bits = as_bits(stream)
    if bits.size != plan.length:
        raise PlanMismatchError(f"stream has {bits.size} bits, plan has {plan.length} coordinates")
    if tuple(spectrum.shape) != plan.shape:
        raise PlanMismatchError(f"plan built for {plan.shape}, spectrum is {spectrum.shape}")
    _check_alpha(alpha)
    factor = np.where(bits == 1, 1.0 + alpha, 1.0 - alpha)
    out = np.array(spectrum, dtype=np.complex128, copy=True)
    mu, mv = plan.mirrors()
    out[plan.rows, plan.cols] *= factor
    out[mu, mv] *= factor
    return out


def dft_embed_plane(img, stream, alpha, plan):
    """Watermarked plane before uint8 quantization (complex, for diagnostics)."""
    return ifft2_complex(modulate(fft2(to_double(img)), stream, alpha, plan))


def dft_embed(img, stream, alpha, plan):
    return from_double(ifft2(modulate(fft2(to_double(img)), stream, alpha, plan)))


def dft_extract(watermarked, original, plan, original_spectrum=None):
    if watermarked.shape != original.shape:
        raise GeometryError(f"shape mismatch {watermarked.shape} vs {original.shape}")
    if tuple(watermarked.shape) != plan.shape:
        raise PlanMismatchError(f"plan built for {plan.shape}, image is {watermarked.shape}")
    fw = fft2(to_double(watermarked))
    fo = original_spectrum if original_spectrum is not None else fft2(to_double(original))
    r, c = plan.rows, plan.cols
    return (np.abs(fw[r, c]) > np.abs(fo[r, c])).astype(np.uint8)


def extraction_margins(watermarked, original, plan):
    """``|F_W| - |F_O|`` at every planned bin."""
    fw = fft2(to_double(watermarked))
    fo = fft2(to_double(original))
    r, c = plan.rows, plan.cols
    return np.abs(fw[r, c]) - np.abs(fo[r, c])
