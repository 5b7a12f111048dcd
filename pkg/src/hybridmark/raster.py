"""Grayscale rasters: PGM/PNG loading, PGM saving, luma conversion, resizing."""
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from hybridmark.errors import FormatError


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Immutable 8-bit grayscale raster, row-major ``(height, width)``."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise FormatError(f"expected a 2-D raster, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise FormatError("pixel values must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        arr = np.array(arr, dtype=np.uint8, copy=True, order="C")
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_list(cls, width, height, values):
        arr = np.asarray(values, dtype=np.int64)
        if arr.size != width * height:
            raise FormatError(f"{arr.size} values for a {width}x{height} raster")
        return cls(arr.reshape(height, width))

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def shape(self):
        return self.pixels.shape

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"


def to_gray(r, g, b):
    """Rec.601 luma, rounded half away from zero. Works on scalars or arrays."""
    y = 0.299 * np.asarray(r, dtype=np.float64) + 0.587 * np.asarray(g, dtype=np.float64) \
        + 0.114 * np.asarray(b, dtype=np.float64)
    out = np.clip(np.floor(y + 0.5 + 1e-9), 0, 255)
    if out.ndim == 0:
        return int(out)
    return out.astype(np.uint8)


def _pgm_tokens(data):
    """Parse the P5 header; return (width, height, maxval, body offset)."""
    if data[:2] != b"P5":
        raise FormatError("not a binary PGM (missing P5 magic)")
    pos = 2
    tokens = []
    while len(tokens) < 3:
        if pos >= len(data):
            raise FormatError("truncated PGM header")
        ch = data[pos:pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            start = pos
            while pos < len(data) and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
                pos += 1
            tok = data[start:pos]
            if not tok.isdigit():
                raise FormatError(f"bad PGM header token {tok!r}")
            tokens.append(int(tok))
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise FormatError("PGM header must end with a single whitespace byte")
    return tokens[0], tokens[1], tokens[2], pos + 1


def decode_pgm(data):
    width, height, maxval, offset = _pgm_tokens(data)
    if maxval != 255:
        raise FormatError(f"only maxval 255 is supported, got {maxval}")
    if width < 1 or height < 1:
        raise FormatError(f"bad PGM geometry {width}x{height}")
    body = data[offset:offset + width * height]
    if len(body) < width * height:
        raise FormatError(f"truncated PGM body: {len(body)} of {width * height} bytes")
    return GrayImage(np.frombuffer(body, dtype=np.uint8).reshape(height, width))


def encode_pgm(img):
    return f"P5\n{img.width} {img.height}\n255\n".encode("ascii") + img.pixels.tobytes()


def _load_png(path):
    try:
        from PIL import Image
    except ImportError:  # pragma: no cover
        raise FormatError("PNG input needs Pillow (pip install hybridmark[png])") from None
    try:
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            if mode == "L":
                return GrayImage(np.asarray(im, dtype=np.uint8))
            if mode in ("RGB", "RGBA"):
                rgb = np.asarray(im.convert("RGB"), dtype=np.uint8)
                return GrayImage(to_gray(rgb[..., 0], rgb[..., 1], rgb[..., 2]))
    except OSError as exc:
        raise FormatError(f"cannot decode {path}: {exc}") from None
    raise FormatError(f"unsupported PNG mode {mode!r} (need 8-bit gray or RGB)")


def load_image(path):
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    if data[:2] == b"P5":
        return decode_pgm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _load_png(path)
    raise FormatError(f"{path}: unsupported format (expected binary PGM or PNG)")


def save_image(img, path):
    Path(path).write_bytes(encode_pgm(img))


def resize_nn(img, w, h):
    """Nearest-neighbour resample: source index = floor((dst + 0.5) * src / dst)."""
    if w < 1 or h < 1:
        raise ValueError("target size must be at least 1x1")
    rows = np.floor((np.arange(h) + 0.5) * img.height / h).astype(np.int64)
    cols = np.floor((np.arange(w) + 0.5) * img.width / w).astype(np.int64)
    rows = np.minimum(rows, img.height - 1)
    cols = np.minimum(cols, img.width - 1)
    return GrayImage(img.pixels[np.ix_(rows, cols)])
