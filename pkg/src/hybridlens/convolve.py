"""Spatial-domain convolution: direct 2-D and separable two-pass 1-D.

Both strategies accumulate in double precision, scanning kernel taps in
row-major order so every output pixel has a fixed floating-point summation
sequence. The result is therefore bit-identical whether channels are
processed serially or in parallel, and matches a scalar triple-loop
reference that scans the kernel in the same order.

Because the kernels built by this package are symmetric, convolution and
correlation coincide; the tap at offset (du, dv) multiplies the input
sample at p + (du, dv).
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Iterator, Optional, Tuple

import numpy as np

from .errors import KernelTooLargeError
from .image import BoundaryPolicy, SignedImage
from .kernels import Kernel1D, Kernel2D

_PAD_MODE = {
    BoundaryPolicy.REPLICATE: "edge",
    BoundaryPolicy.REFLECT: "symmetric",
    BoundaryPolicy.ZERO: "constant",
}


class TapCounter:
    """Accumulates the number of tap multiplies performed while active."""

    def __init__(self) -> None:
        self.multiplies = 0
        self._lock = threading.Lock()

    def add(self, n: int) -> None:
        with self._lock:
            self.multiplies += n


_active_counter: Optional[TapCounter] = None


@contextmanager
def count_taps() -> Iterator[TapCounter]:
    """Enable tap-multiply counting for the duration of the block.

    Off by default so benchmark timings are unaffected; intended for tests
    that assert arithmetic cost, not for production runs.
    """
    global _active_counter
    counter = TapCounter()
    previous = _active_counter
    _active_counter = counter
    try:
        yield counter
    finally:
        _active_counter = previous


def resolve(
    coord: Tuple[int, int], b: BoundaryPolicy, bounds: Tuple[int, int]
) -> Optional[Tuple[int, int]]:
    """Map an (x, y) coordinate onto the valid index range per the policy.

    Returns None under the zero policy when the coordinate is outside the
    image, meaning the sample contributes 0.
    """
    x = _resolve_axis(coord[0], bounds[0], b)
    y = _resolve_axis(coord[1], bounds[1], b)
    if x is None or y is None:
        return None
    return x, y


def _resolve_axis(i: int, n: int, b: BoundaryPolicy) -> Optional[int]:
    if 0 <= i < n:
        return i
    if b is BoundaryPolicy.ZERO:
        return None
    if b is BoundaryPolicy.REPLICATE:
        return 0 if i < 0 else n - 1
    # half-sample mirror; kernel-size cap keeps one reflection sufficient
    return -i - 1 if i < 0 else 2 * n - 1 - i


def _check_kernel_fits(size: int, width: int, height: int) -> None:
    limit = 2 * min(width, height) + 1
    if size > limit:
        raise KernelTooLargeError(
            f"kernel size {size} exceeds 2*min(width, height)+1 = {limit} "
            f"for a {width}x{height} image"
        )


def _pad(planes: np.ndarray, rx: int, ry: int, b: BoundaryPolicy) -> np.ndarray:
    widths = [(ry, ry), (rx, rx)] + ([(0, 0)] if planes.ndim == 3 else [])
    if b is BoundaryPolicy.ZERO:
        return np.pad(planes, widths, mode="constant", constant_values=0.0)
    return np.pad(planes, widths, mode=_PAD_MODE[b])


def _direct_channel(padded: np.ndarray, taps: np.ndarray, out: np.ndarray) -> int:
    h, w = out.shape[:2]
    s = taps.shape[0]
    mults = 0
    for u in range(s):
        for v in range(s):
            out += padded[u : u + h, v : v + w] * taps[u, v]
            mults += out.size
    return mults


def convolve2d(
    img: SignedImage,
    k: Kernel2D,
    b: BoundaryPolicy = BoundaryPolicy.REPLICATE,
    *,
    parallel: bool = False,
) -> SignedImage:
    """Same-size 2-D convolution of every channel with a square kernel."""
    _check_kernel_fits(k.size, img.width, img.height)
    r = k.radius
    padded = _pad(img.planes, r, r, b)
    out = np.zeros_like(img.planes)
    if parallel and img.channels > 1:
        with ThreadPoolExecutor(max_workers=img.channels) as pool:
            futures = [
                pool.submit(_direct_channel, padded[:, :, c], k.taps, out[:, :, c])
                for c in range(img.channels)
            ]
            mults = sum(f.result() for f in futures)
    else:
        mults = _direct_channel(padded, k.taps, out)
    if _active_counter is not None:
        _active_counter.add(mults)
    return SignedImage(out)


def _separable_channel(planes: np.ndarray, taps: np.ndarray, b: BoundaryPolicy) -> Tuple[np.ndarray, int]:
    h, w = planes.shape[:2]
    r = taps.size // 2
    s = taps.size
    mults = 0

    padded = _pad(planes, r, 0, b)
    horiz = np.zeros_like(planes)
    for v in range(s):
        horiz += padded[:, v : v + w] * taps[v]
        mults += horiz.size

    padded = _pad(horiz, 0, r, b)
    out = np.zeros_like(planes)
    for u in range(s):
        out += padded[u : u + h, :] * taps[u]
        mults += out.size
    return out, mults


def convolve_separable(
    img: SignedImage,
    k: Kernel1D,
    b: BoundaryPolicy = BoundaryPolicy.REPLICATE,
    *,
    parallel: bool = False,
) -> SignedImage:
    """Two-pass convolution with a 1-D kernel: horizontal, then vertical.

    Equivalent (within accumulation rounding) to convolve2d with the
    kernel's outer product; costs 2*S instead of S*S multiplies per pixel.
    No rounding happens between the passes; everything stays float64.
    """
    _check_kernel_fits(k.size, img.width, img.height)
    if parallel and img.channels > 1:
        out = np.empty_like(img.planes)
        with ThreadPoolExecutor(max_workers=img.channels) as pool:
            futures = [
                pool.submit(_separable_channel, img.planes[:, :, c], k.taps, b)
                for c in range(img.channels)
            ]
            mults = 0
            for c, f in enumerate(futures):
                out[:, :, c], m = f.result()
                mults += m
    else:
        out, mults = _separable_channel(img.planes, k.taps, b)
    if _active_counter is not None:
        _active_counter.add(mults)
    return SignedImage(out)
