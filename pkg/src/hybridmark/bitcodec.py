"""Text <-> headered bitstream conversion.

A stream is a 16-bit MSB-first header holding the payload length in bits,
followed by the payload: one 8-bit MSB-first group per ASCII character.
Streams are numpy ``uint8`` arrays of 0/1 values.
"""
import numpy as np

from hybridmark.errors import (
    CapacityError,
    EncodingError,
    MalformedHeaderError,
    TruncatedError,
)

HEADER_BITS = 16
MAX_CHARS = 8191


def int_to_bits(value, width):
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def bits_to_int(bits):
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def as_bits(bits):
    """Coerce a 0/1 sequence (or a string of '0'/'1') to a uint8 array."""
    if isinstance(bits, str):
        bits = [int(c) for c in bits.strip()]
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("bitstream values must be 0 or 1")
    return arr


def header_value(stream):
    stream = as_bits(stream)
    if stream.size < HEADER_BITS:
        raise TruncatedError(f"stream has {stream.size} bits, header needs {HEADER_BITS}")
    return bits_to_int(stream[:HEADER_BITS])


def text_to_stream(text):
    try:
        raw = text.encode("ascii")
    except UnicodeEncodeError as exc:
        raise EncodingError(f"watermark text must be ASCII: {exc}") from None
    if len(raw) > MAX_CHARS:
        raise CapacityError(f"{len(raw)} characters exceeds the {MAX_CHARS}-character limit")
    payload = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))
    return np.concatenate([int_to_bits(payload.size, HEADER_BITS), payload]).astype(np.uint8)


def stream_to_text(stream):
    stream = as_bits(stream)
    n = header_value(stream)
    if n % 8:
        raise MalformedHeaderError(f"header value {n} is not a multiple of 8")
    if stream.size < HEADER_BITS + n:
        raise TruncatedError(f"header announces {n} payload bits, only {stream.size - HEADER_BITS} present")
    payload = stream[HEADER_BITS:HEADER_BITS + n]
    return np.packbits(payload).tobytes().decode("ascii", errors="replace")


def validate_header(stream):
    """True when the header is consistent with the stream's own length."""
    stream = as_bits(stream)
    if stream.size < HEADER_BITS:
        return False
    n = bits_to_int(stream[:HEADER_BITS])
    return n % 8 == 0 and HEADER_BITS + n == stream.size
