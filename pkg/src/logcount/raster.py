"""Grayscale and binary raster primitives: decoding, encoding, binarization.

Images are plain numpy arrays in row-major order, indexed ``[y, x]``:

* gray image  -- 2-D ``uint8`` array, intensities in [0, 255]
* binary mask -- 2-D ``bool`` array, True marks foreground

Supported file formats are PNG (8-bit grayscale or RGB, non-interlaced)
and PGM (binary P5 and ASCII P2).  Output is always 8-bit gray PNG or
binary P5.  Both codecs are self-contained; the PNG path needs only
``zlib``.  The per-axis dimension limit is 65535.
"""

from __future__ import annotations

import struct
import zlib
from typing import NamedTuple

import numpy as np

MAX_DIM = 65535

_PNG_SIG = b"\x89PNG\r\n\x1a\n"
_WS = b" \t\r\n\x0b\x0c"


class DecodeError(ValueError):
    """A file is malformed; the message names the offending element."""


class UnsupportedFormatError(DecodeError):
    """A file is recognized but uses a variant outside the supported set."""


class Resolution(NamedTuple):
    width: int
    height: int


def as_gray(img: np.ndarray) -> np.ndarray:
    """Validate and return ``img`` as a 2-D uint8 gray image."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"gray image must be 2-D, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"gray image must be integer-typed, got {arr.dtype}")
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError("gray intensities must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


def as_mask(mask: np.ndarray) -> np.ndarray:
    """Validate and return ``mask`` as a 2-D bool array."""
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise ValueError(f"mask must be 2-D, got shape {arr.shape}")
    if arr.dtype != bool:
        arr = arr.astype(bool)
    return arr


def luminance(rgb: np.ndarray) -> np.ndarray:
    """Collapse an (h, w, 3) uint8 array to gray via Rec. 601 weights.

    Uses exact integer arithmetic, (299 R + 587 G + 114 B + 500) // 1000,
    which is half-up rounding of 0.299 R + 0.587 G + 0.114 B.
    """
    rgb = np.asarray(rgb, dtype=np.uint32)
    gray = (299 * rgb[..., 0] + 587 * rgb[..., 1] + 114 * rgb[..., 2] + 500) // 1000
    return gray.astype(np.uint8)


def mask_to_gray(mask: np.ndarray) -> np.ndarray:
    """Map foreground to 255, background to 0."""
    return np.where(as_mask(mask), np.uint8(255), np.uint8(0))


def threshold(img: np.ndarray, cutoff: int = 127) -> np.ndarray:
    """Binarize: a pixel is foreground iff its intensity is strictly > cutoff."""
    if not 0 <= cutoff <= 255:
        raise ValueError(f"cutoff must be in [0, 255], got {cutoff}")
    return as_gray(img) > cutoff


# ---------------------------------------------------------------------------
# decoding


def decode_image(data: bytes) -> np.ndarray:
    """Decode PNG / PGM bytes to a gray image.

    Color PNGs are converted to luminance.  Raises DecodeError for
    malformed input and UnsupportedFormatError for recognized-but-
    unsupported variants (16-bit, palette, alpha, interlaced, PBM/PPM).
    """
    if data[:8] == _PNG_SIG:
        return _decode_png(data)
    magic = bytes(data[:2])
    if magic == b"P5":
        return _decode_pgm_p5(data)
    if magic == b"P2":
        return _decode_pgm_p2(data)
    if magic in (b"P1", b"P3", b"P4", b"P6"):
        raise UnsupportedFormatError(
            f"netpbm variant {magic.decode('ascii')} unsupported (only PGM P5/P2)"
        )
    raise UnsupportedFormatError("unrecognized image format (expected PNG or PGM)")


def _check_dims(width: int, height: int, what: str) -> None:
    if width < 1 or height < 1:
        raise DecodeError(f"{what}: non-positive dimensions {width}x{height}")
    if width > MAX_DIM or height > MAX_DIM:
        raise DecodeError(f"{what}: dimensions {width}x{height} exceed {MAX_DIM} per axis")


# -- PNG --------------------------------------------------------------------


def _decode_png(data: bytes) -> np.ndarray:
    pos = 8
    ihdr = None
    idat = bytearray()
    while True:
        if pos + 8 > len(data):
            raise DecodeError("PNG: truncated chunk header")
        (length,) = struct.unpack_from(">I", data, pos)
        ctype = data[pos + 4 : pos + 8]
        pos += 8
        if pos + length + 4 > len(data):
            raise DecodeError(f"PNG: truncated {ctype.decode('latin-1')} chunk")
        payload = data[pos : pos + length]
        pos += length
        (crc,) = struct.unpack_from(">I", data, pos)
        pos += 4
        if zlib.crc32(ctype + payload) & 0xFFFFFFFF != crc:
            raise DecodeError(f"PNG: CRC mismatch in {ctype.decode('latin-1')} chunk")
        if ctype == b"IHDR":
            if ihdr is not None:
                raise DecodeError("PNG: duplicate IHDR chunk")
            if length != 13:
                raise DecodeError(f"PNG: IHDR length {length}, expected 13")
            ihdr = struct.unpack(">IIBBBBB", payload)
            _check_ihdr(ihdr)
        elif ctype == b"IDAT":
            if ihdr is None:
                raise DecodeError("PNG: IDAT before IHDR")
            idat.extend(payload)
        elif ctype == b"IEND":
            break
        elif ctype[0] & 0x20 == 0:
            raise UnsupportedFormatError(
                f"PNG: unknown critical chunk {ctype.decode('latin-1')}"
            )
        # ancillary chunks are skipped
    if ihdr is None:
        raise DecodeError("PNG: missing IHDR chunk")
    width, height, _, color, _, _, _ = ihdr
    if not idat:
        raise DecodeError("PNG: no IDAT chunk")
    try:
        raw = zlib.decompress(bytes(idat))
    except zlib.error as exc:
        raise DecodeError(f"PNG: corrupt IDAT zlib stream ({exc})") from exc

    channels = 1 if color == 0 else 3
    stride = width * channels
    if len(raw) != (stride + 1) * height:
        raise DecodeError(
            f"PNG: pixel data is {len(raw)} bytes, expected {(stride + 1) * height}"
        )
    flat = _unfilter(raw, height, stride, channels)
    if channels == 1:
        return np.frombuffer(flat, dtype=np.uint8).reshape(height, width)
    rgb = np.frombuffer(flat, dtype=np.uint8).reshape(height, width, 3)
    return luminance(rgb)


def _check_ihdr(ihdr: tuple) -> None:
    width, height, depth, color, comp, filt, interlace = ihdr
    _check_dims(width, height, "PNG IHDR")
    if depth != 8:
        raise UnsupportedFormatError(f"PNG: bit depth {depth} unsupported (only 8)")
    if color == 3:
        raise UnsupportedFormatError("PNG: color type 3 (palette) unsupported")
    if color not in (0, 2):
        raise UnsupportedFormatError(
            f"PNG: color type {color} unsupported (only grayscale 0 and RGB 2)"
        )
    if comp != 0:
        raise DecodeError(f"PNG: IHDR compression method {comp} invalid")
    if filt != 0:
        raise DecodeError(f"PNG: IHDR filter method {filt} invalid")
    if interlace != 0:
        raise UnsupportedFormatError("PNG: Adam7 interlacing unsupported")


def _unfilter(raw: bytes, height: int, stride: int, bpp: int) -> bytes:
    """Reverse the per-scanline PNG filters (types 0-4)."""
    out = bytearray(height * stride)
    prev_off = -stride
    for y in range(height):
        row_off = y * (stride + 1)
        ftype = raw[row_off]
        src = raw[row_off + 1 : row_off + 1 + stride]
        off = y * stride
        if ftype == 0:  # None
            out[off : off + stride] = src
        elif ftype == 1:  # Sub
            for i in range(stride):
                left = out[off + i - bpp] if i >= bpp else 0
                out[off + i] = (src[i] + left) & 0xFF
        elif ftype == 2:  # Up
            for i in range(stride):
                up = out[prev_off + i] if y > 0 else 0
                out[off + i] = (src[i] + up) & 0xFF
        elif ftype == 3:  # Average
            for i in range(stride):
                left = out[off + i - bpp] if i >= bpp else 0
                up = out[prev_off + i] if y > 0 else 0
                out[off + i] = (src[i] + (left + up) // 2) & 0xFF
        elif ftype == 4:  # Paeth
            for i in range(stride):
                left = out[off + i - bpp] if i >= bpp else 0
                up = out[prev_off + i] if y > 0 else 0
                ul = out[prev_off + i - bpp] if (y > 0 and i >= bpp) else 0
                out[off + i] = (src[i] + _paeth(left, up, ul)) & 0xFF
        else:
            raise DecodeError(f"PNG: unknown filter type {ftype} on row {y}")
        prev_off = off
    return bytes(out)


def _paeth(a: int, b: int, c: int) -> int:
    p = a + b - c
    pa = abs(p - a)
    pb = abs(p - b)
    pc = abs(p - c)
    if pa <= pb and pa <= pc:
        return a
    if pb <= pc:
        return b
    return c


# -- PGM --------------------------------------------------------------------


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n:
        c = data[pos]
        if c in _WS:
            pos += 1
        elif c == 0x23:  # '#' comment runs to end of line
            nl = data.find(b"\n", pos)
            pos = n if nl < 0 else nl + 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _WS and data[pos] != 0x23:
        pos += 1
    if start == pos:
        raise DecodeError("PGM: unexpected end of header")
    return data[start:pos], pos


def _parse_int(token: bytes, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise DecodeError(f"PGM: {what} {token!r} is not a decimal integer") from None


def _pgm_header(data: bytes, magic: str) -> tuple[int, int, int, int]:
    tok, pos = _next_token(data, 0)
    if tok != magic.encode("ascii"):
        raise DecodeError(f"PGM: bad magic {tok!r}")
    tok, pos = _next_token(data, pos)
    width = _parse_int(tok, "width")
    tok, pos = _next_token(data, pos)
    height = _parse_int(tok, "height")
    tok, pos = _next_token(data, pos)
    maxval = _parse_int(tok, "maxval")
    _check_dims(width, height, f"PGM {magic}")
    if maxval < 1:
        raise DecodeError(f"PGM {magic}: maxval {maxval} must be >= 1")
    if maxval > 255:
        raise UnsupportedFormatError(
            f"PGM {magic}: maxval {maxval} exceeds 255 (16-bit samples unsupported)"
        )
    return width, height, maxval, pos


def _decode_pgm_p5(data: bytes) -> np.ndarray:
    width, height, maxval, pos = _pgm_header(data, "P5")
    if pos >= len(data) or data[pos] not in _WS:
        raise DecodeError("PGM P5: missing whitespace after maxval")
    pos += 1
    need = width * height
    pixels = data[pos : pos + need]
    if len(pixels) != need:
        raise DecodeError(f"PGM P5: expected {need} pixel bytes, found {len(pixels)}")
    arr = np.frombuffer(pixels, dtype=np.uint8).reshape(height, width)
    if int(arr.max(initial=0)) > maxval:
        raise DecodeError(f"PGM P5: pixel value {int(arr.max())} exceeds maxval {maxval}")
    return arr.copy()


def _decode_pgm_p2(data: bytes) -> np.ndarray:
    width, height, maxval, pos = _pgm_header(data, "P2")
    need = width * height
    values = []
    for _ in range(need):
        try:
            tok, pos = _next_token(data, pos)
        except DecodeError:
            raise DecodeError(
                f"PGM P2: expected {need} pixel values, found {len(values)}"
            ) from None
        val = _parse_int(tok, "pixel value")
        if val < 0 or val > maxval:
            raise DecodeError(f"PGM P2: pixel value {val} outside [0, {maxval}]")
        values.append(val)
    return np.array(values, dtype=np.uint8).reshape(height, width)


# ---------------------------------------------------------------------------
# encoding


def encode_gray(img: np.ndarray, format: str = "png") -> bytes:
    """Encode a gray image as 8-bit PNG or binary PGM (P5)."""
    arr = as_gray(img)
    h, w = arr.shape
    if w > MAX_DIM or h > MAX_DIM:
        raise ValueError(f"dimensions {w}x{h} exceed {MAX_DIM} per axis")
    if format == "png":
        return _encode_png(np.ascontiguousarray(arr), color_type=0)
    if format == "pgm":
        return b"P5\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(arr).tobytes()
    raise ValueError(f"unknown output format {format!r} (expected 'png' or 'pgm')")


def encode_mask(mask: np.ndarray, format: str = "png") -> bytes:
    """Encode a binary mask: foreground as 255, background as 0."""
    return encode_gray(mask_to_gray(mask), format)


def encode_rgb(img: np.ndarray) -> bytes:
    """Encode an (h, w, 3) uint8 array as an RGB PNG."""
    arr = np.asarray(img, dtype=np.uint8)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"RGB image must have shape (h, w, 3), got {arr.shape}")
    return _encode_png(np.ascontiguousarray(arr), color_type=2)


def _encode_png(arr: np.ndarray, color_type: int) -> bytes:
    h, w = arr.shape[:2]
    stride = w if color_type == 0 else w * 3
    raw = bytearray()
    flat = arr.tobytes()
    for y in range(h):
        raw.append(0)  # filter type None
        raw.extend(flat[y * stride : (y + 1) * stride])
    ihdr = struct.pack(">IIBBBBB", w, h, 8, color_type, 0, 0, 0)
    return b"".join(
        (
            _PNG_SIG,
            _png_chunk(b"IHDR", ihdr),
            _png_chunk(b"IDAT", zlib.compress(bytes(raw), 9)),
            _png_chunk(b"IEND", b""),
        )
    )


def _png_chunk(ctype: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + ctype
        + payload
        + struct.pack(">I", zlib.crc32(ctype + payload) & 0xFFFFFFFF)
    )
