"""Deterministic 512x512 synthetic test images.

The usual benchmark photographs cannot be redistributed, so the bench ships
three generated stand-ins. Each carries real mid-band energy, since a
magnitude-modulation scheme has nothing to work with on flat content.

``gradient``  luminance ramp overlaid with a frequency-swept oblique grating
``checker``   shaded checkerboard with 6-px squares (not aligned to 8x8 blocks)
``texture``   band-pass filtered noise concentrated near 0.2 cycles/pixel
"""
import numpy as np

from hybridmark.attacks import normals
from hybridmark.raster import GrayImage
from hybridmark.spectral import fft2, ifft2

SIZE = 512
NAMES = ("gradient", "checker", "texture")


def _finish(values):
    return GrayImage(np.clip(np.floor(values + 0.5), 0, 255).astype(np.uint8))


def gradient(size=SIZE):
    y, x = np.mgrid[0:size, 0:size].astype(np.float64)
    ramp = 60.0 + 130.0 * (x + y) / (2.0 * (size - 1))
    # instantaneous frequency sweeps 0.12 -> 0.28 cycles/pixel along the diagonal
    t = (x + y) / np.sqrt(2.0)
    span = np.sqrt(2.0) * size
    f0, f1 = 0.12, 0.28
    phase = 2 * np.pi * (f0 * t + (f1 - f0) * t * t / (2 * span))
    return _finish(ramp + 28.0 * np.cos(phase))


def checker(size=SIZE, square=6):
    y, x = np.mgrid[0:size, 0:size]
    cells = ((x // square) + (y // square)) % 2
    shade = 20.0 * np.cos(2 * np.pi * x / size) * np.cos(2 * np.pi * y / size)
    return _finish(75.0 + 110.0 * cells + shade)


def texture(size=SIZE, seed=2024, center=0.2, width=0.02, std=36.0):
    noise = normals(seed, size * size).reshape(size, size)
    f = np.fft.fftfreq(size)
    r = np.sqrt(f[:, None] ** 2 + f[None, :] ** 2)
    shaped = ifft2(fft2(noise) * np.exp(-(((r - center) / width) ** 2)))
    shaped *= std / shaped.std()
    return _finish(128.0 + shaped)


def make(name, size=SIZE):
    try:
        return {"gradient": gradient, "checker": checker, "texture": texture}[name](size)
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}") from None


def all_fixtures(size=SIZE):
    return {name: make(name, size) for name in NAMES}
