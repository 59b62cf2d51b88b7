"""Decode/encode between 8-bit rasters and the normalized representation.

Supported formats: PNG (8-bit grayscale and truecolor) via Pillow, and
binary netpbm (P5 PGM / P6 PPM, maxval 255) via a small codec of our own
so golden-file tests have a bit-transparent format. Alpha channels are
rejected outright; dropping one silently would corrupt blend semantics.

Byte value v decodes to v/255; encoding rounds value*255 half up.
"""

from __future__ import annotations

import enum
import io
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from PIL import Image as PILImage
from PIL import UnidentifiedImageError

from .errors import ImageDecodeError, ImageEncodeError, InvalidParameterError
from .image import Image

PathOrBytes = Union[str, Path, bytes, bytearray]

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


class EncodedFormat(enum.Enum):
    PNG = "png"
    PPM = "ppm"

    @classmethod
    def parse(cls, name: str) -> "EncodedFormat":
        try:
            return cls(name.lower())
        except ValueError:
            raise InvalidParameterError(
                f"unknown format {name!r}; expected one of {[f.value for f in cls]}"
            ) from None


def load(src: PathOrBytes) -> Image:
    """Decode a PNG/PPM/PGM file (by path) or its raw bytes."""
    if isinstance(src, (str, Path)):
        data = Path(src).read_bytes()
    else:
        data = bytes(src)
    if data.startswith(_PNG_MAGIC):
        return _decode_png(data)
    if data[:2] in (b"P5", b"P6"):
        return _decode_netpbm(data)
    raise ImageDecodeError("unrecognized image data: expected PNG, P5 PGM, or P6 PPM")


def _decode_png(data: bytes) -> Image:
    try:
        with PILImage.open(io.BytesIO(data)) as pil:
            pil.load()
            mode = pil.mode
            if mode in ("LA", "RGBA", "PA") or (
                mode == "P" and "transparency" in pil.info
            ):
                raise ImageDecodeError(
                    f"alpha channel present (mode {mode}); flatten the image first"
                )
            if mode in ("I", "I;16", "I;16B", "F"):
                raise ImageDecodeError(f"unsupported bit depth (mode {mode}); only 8-bit")
            if mode not in ("L", "RGB"):
                raise ImageDecodeError(
                    f"unsupported color mode {mode}; only 8-bit grayscale or RGB"
                )
            arr = np.asarray(pil, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise ImageDecodeError(f"malformed PNG: {exc}") from exc
    except (OSError, SyntaxError, ValueError) as exc:
        if isinstance(exc, ImageDecodeError):
            raise
        raise ImageDecodeError(f"malformed PNG: {exc}") from exc
    return Image(arr.astype(np.float64) / 255.0)


def _decode_netpbm(data: bytes) -> Image:
    magic = data[:2].decode("ascii")
    pos = 2
    fields = []
    while len(fields) < 3:
        # skip whitespace and # comments between header tokens
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        token = data[start:pos]
        if not token.isdigit():
            raise ImageDecodeError(f"malformed {magic} header near byte {start}")
        fields.append(int(token))
    width, height, maxval = fields
    if maxval != 255:
        raise ImageDecodeError(f"unsupported bit depth: maxval {maxval}, expected 255")
    if width < 1 or height < 1:
        raise ImageDecodeError(f"malformed {magic} header: {width}x{height}")
    pos += 1  # single whitespace byte after maxval
    channels = 3 if magic == "P6" else 1
    expected = width * height * channels
    raw = data[pos : pos + expected]
    if len(raw) != expected:
        raise ImageDecodeError(
            f"truncated {magic} payload: expected {expected} bytes, got {len(raw)}"
        )
    arr = np.frombuffer(raw, dtype=np.uint8).reshape(height, width, channels)
    return Image(arr.astype(np.float64) / 255.0)


def quantize(planes: np.ndarray) -> np.ndarray:
    """Map [0, 1] plane values onto bytes, rounding value*255 half up.

    A 1e-9 guard keeps values that accumulated float dust just below a
    half-boundary (e.g. a mid-gray 0.5 minus one ulp) from dropping a level.
    """
    return np.floor(planes * 255.0 + (0.5 + 1e-9)).astype(np.uint8)


def save(img: Image, fmt: EncodedFormat = EncodedFormat.PNG) -> bytes:
    """Encode to PNG or netpbm bytes; gray images use P5, RGB uses P6."""
    lo = float(img.planes.min())
    hi = float(img.planes.max())
    if lo < 0.0 or hi > 1.0:
        raise ImageEncodeError(
            f"plane values outside [0, 1] (range [{lo}, {hi}]); clamp before saving"
        )
    bytes8 = quantize(img.planes)
    if fmt is EncodedFormat.PPM:
        magic = b"P6" if img.channels == 3 else b"P5"
        header = magic + b"\n%d %d\n255\n" % (img.width, img.height)
        return header + bytes8.tobytes()
    if img.channels == 1:
        pil = PILImage.fromarray(bytes8[:, :, 0], mode="L")
    else:
        pil = PILImage.fromarray(bytes8, mode="RGB")
    buf = io.BytesIO()
    pil.save(buf, format="PNG")
    return buf.getvalue()


def _axis_samples(n_src: int, n_dst: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    # center-aligned source coordinates, clamped to the valid range so the
    # border weights degenerate to the edge sample (and same-size resize is
    # the exact identity)
    x = (np.arange(n_dst, dtype=np.float64) + 0.5) * (n_src / n_dst) - 0.5
    x = np.clip(x, 0.0, n_src - 1.0)
    lo = np.floor(x).astype(np.intp)
    frac = x - lo
    hi = np.minimum(lo + 1, n_src - 1)
    return lo, hi, frac


def resize_bilinear(img: Image, w: int, h: int) -> Image:
    """Resample to w x h with bilinear interpolation and edge clamping."""
    if w < 1 or h < 1:
        raise InvalidParameterError(f"target dimensions must be positive, got {w}x{h}")
    if (w, h) == (img.width, img.height):
        return img
    x0, x1, fx = _axis_samples(img.width, w)
    y0, y1, fy = _axis_samples(img.height, h)
    p = img.planes
    fx = fx[np.newaxis, :, np.newaxis]
    fy = fy[:, np.newaxis, np.newaxis]
    top = (1.0 - fx) * p[y0[:, None], x0[None, :], :] + fx * p[y0[:, None], x1[None, :], :]
    bottom = (1.0 - fx) * p[y1[:, None], x0[None, :], :] + fx * p[y1[:, None], x1[None, :], :]
    out = (1.0 - fy) * top + fy * bottom
    # convexity can be violated by float dust only; pin it to the exact range
    ch_min = p.min(axis=(0, 1), keepdims=True)
    ch_max = p.max(axis=(0, 1), keepdims=True)
    return Image(np.clip(out, ch_min, ch_max))
