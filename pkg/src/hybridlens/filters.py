"""Lowpass/highpass decomposition, hybrid blending, and scale-pyramid strips.

A hybrid composes the blur of one image with the residual detail of
another:

    out = clamp( w * lowpass(A) + (1 - w) * (highpass(B) + 0.5) )

The high-pass layer enters the blend with the mid-gray offset, so the
degenerate blends w=1 and w=0 reproduce the two displayable filter
outputs exactly, and the pre-clamp value stays in range for typical
inputs. Viewing the result small (or far away) makes the lowpass layer
dominate; the scale pyramid renders that progression as one strip.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .convolve import convolve2d, convolve_separable
from .errors import InvalidParameterError
from .image import BoundaryPolicy, Image, SignedImage, clamp01, require_same_shape
from .image_io import resize_bilinear
from .kernels import gaussian_1d, log_2d

HIGHPASS_MODES = ("subtract", "log")


@dataclass(frozen=True)
class BlendSpec:
    """Full recipe for one hybrid: blur scales, blend weight, residual mode."""

    sigma_low: float = 7.0
    sigma_high: float = 7.0
    weight: float = 0.5
    highpass_mode: str = "subtract"
    boundary: BoundaryPolicy = BoundaryPolicy.REPLICATE

    def __post_init__(self) -> None:
        if not (self.sigma_low > 0.0 and self.sigma_high > 0.0):
            raise InvalidParameterError("sigmas must be positive")
        if not 0.0 <= self.weight <= 1.0:
            raise InvalidParameterError(f"weight must be in [0, 1], got {self.weight}")
        if self.highpass_mode not in HIGHPASS_MODES:
            raise InvalidParameterError(
                f"highpass_mode must be one of {HIGHPASS_MODES}, got {self.highpass_mode!r}"
            )


@dataclass(frozen=True)
class PyramidSpec:
    """Layout of a shrinking-copies strip: level count, scale step, gap."""

    levels: int = 4
    scale_factor: float = 0.5
    gap_px: int = 8

    def __post_init__(self) -> None:
        if self.levels < 1:
            raise InvalidParameterError(f"levels must be >= 1, got {self.levels}")
        if not 0.0 < self.scale_factor < 1.0:
            raise InvalidParameterError(
                f"scale_factor must be in (0, 1), got {self.scale_factor}"
            )
        if self.gap_px < 0:
            raise InvalidParameterError(f"gap_px must be >= 0, got {self.gap_px}")


def lowpass(
    img: Image, sigma: float, b: BoundaryPolicy = BoundaryPolicy.REPLICATE
) -> Image:
    """Separable Gaussian blur, clamped back into [0, 1]."""
    return clamp01(convolve_separable(img, gaussian_1d(sigma), b))


def highpass(
    img: Image,
    sigma: float,
    mode: str = "subtract",
    b: BoundaryPolicy = BoundaryPolicy.REPLICATE,
) -> SignedImage:
    """Residual detail layer; signed, centered on zero.

    subtract: image minus its own lowpass (complement-of-blur).
    log: convolution with the zero-sum Laplacian-of-Gaussian kernel.
    """
    if mode == "subtract":
        return SignedImage(img.planes - lowpass(img, sigma, b).planes)
    if mode == "log":
        return convolve2d(img, log_2d(sigma), b)
    raise InvalidParameterError(f"highpass mode must be one of {HIGHPASS_MODES}, got {mode!r}")


def visualize_signed(s: SignedImage) -> Image:
    """Render a signed residual for display: mid-gray is zero response."""
    return clamp01(SignedImage(s.planes + 0.5))


def hybrid(low_src: Image, high_src: Image, spec: BlendSpec) -> Image:
    """Blend the lowpass of one image with the offset highpass of another.

    Inputs must already share dimensions and channel count (see
    match_dimensions). weight=1 degenerates to the lowpass output,
    weight=0 to the visualized highpass, bit for bit.
    """
    require_same_shape(low_src, high_src)
    low = lowpass(low_src, spec.sigma_low, spec.boundary)
    high = highpass(high_src, spec.sigma_high, spec.highpass_mode, spec.boundary)
    blended = spec.weight * low.planes + (1.0 - spec.weight) * (high.planes + 0.5)
    return clamp01(SignedImage(blended))


def match_dimensions(a: Image, b: Image) -> Tuple[Image, Image]:
    """Shrink whichever image is larger to the per-axis minimum of the two.

    Downscale only, bilinear; images already at the target size are
    returned unchanged.
    """
    if a.channels != b.channels:
        raise InvalidParameterError(
            f"channel counts differ: {a.channels} vs {b.channels}"
        )
    tw = min(a.width, b.width)
    th = min(a.height, b.height)
    return resize_bilinear(a, tw, th), resize_bilinear(b, tw, th)


def pyramid_layout(width: int, height: int, spec: PyramidSpec) -> List[Tuple[int, int]]:
    """Realized (width, height) of each emitted pyramid level.

    Each level scales the previous by scale_factor (rounded half up);
    generation stops early once a level would fall below 1x1, so the
    returned list may be shorter than spec.levels.
    """
    dims = [(width, height)]
    w, h = width, height
    for _ in range(spec.levels - 1):
        w = int(np.floor(w * spec.scale_factor + 0.5))
        h = int(np.floor(h * spec.scale_factor + 0.5))
        if w < 1 or h < 1:
            break
        dims.append((w, h))
    return dims


def scale_pyramid(img: Image, spec: PyramidSpec) -> Image:
    """One horizontal strip of progressively smaller copies.

    Copies are bottom-aligned and separated by gap_px columns of white,
    mimicking an image receding from the viewer.
    """
    dims = pyramid_layout(img.width, img.height, spec)
    strip_w = sum(w for w, _ in dims) + spec.gap_px * (len(dims) - 1)
    strip_h = img.height
    strip = np.ones((strip_h, strip_w, img.channels), dtype=np.float64)
    x = 0
    for w, h in dims:
        level = resize_bilinear(img, w, h)
        strip[strip_h - h :, x : x + w, :] = level.planes
        x += w + spec.gap_px
    return Image(strip)
