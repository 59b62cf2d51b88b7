"""Normalized Gaussian, binomial, and Laplacian-of-Gaussian kernel builders.

Kernels are point-sampled from the continuous forms at integer offsets.
Support size follows S = round(4*sigma) + 1, bumped to the next odd value
so a center tap always exists, and floored at 3.

Symmetry is guaranteed bitwise: each builder evaluates one quadrant (or
half-axis) and mirrors it, rather than re-evaluating the exponential per
quadrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from .errors import InvalidParameterError

KernelKind = Literal["gaussian", "log", "binomial3"]


def _check_sigma(sigma: float) -> float:
    sigma = float(sigma)
    if not math.isfinite(sigma) or sigma <= 0.0:
        raise InvalidParameterError(f"sigma must be a positive finite real, got {sigma}")
    return sigma


def size_rule(sigma: float) -> int:
    """Support size for a Gaussian/LoG kernel of the given sigma.

    S = round(4*sigma) + 1 (round half up), incremented by 1 when even,
    never below 3. Integer sigmas reproduce S = 4*sigma + 1 exactly.
    """
    sigma = _check_sigma(sigma)
    s = int(math.floor(4.0 * sigma + 0.5)) + 1
    if s % 2 == 0:
        s += 1
    return max(s, 3)


@dataclass(frozen=True)
class Kernel1D:
    """Sampled 1-D filter taps with their construction metadata."""

    sigma: float
    taps: np.ndarray = field(repr=False)
    kind: KernelKind = "gaussian"

    def __post_init__(self) -> None:
        taps = np.asarray(self.taps, dtype=np.float64)
        taps.setflags(write=False)
        object.__setattr__(self, "taps", taps)
        if taps.ndim != 1 or taps.size % 2 == 0:
            raise InvalidParameterError(f"1-D taps must have odd length, got shape {taps.shape}")

    @property
    def size(self) -> int:
        return self.taps.size

    @property
    def radius(self) -> int:
        return self.taps.size // 2


@dataclass(frozen=True)
class Kernel2D:
    """Sampled 2-D filter taps; sigma is None for the fixed binomial preset."""

    sigma: Optional[float]
    taps: np.ndarray = field(repr=False)
    kind: KernelKind

    def __post_init__(self) -> None:
        taps = np.asarray(self.taps, dtype=np.float64)
        taps.setflags(write=False)
        object.__setattr__(self, "taps", taps)
        if taps.ndim != 2 or taps.shape[0] != taps.shape[1] or taps.shape[0] % 2 == 0:
            raise InvalidParameterError(f"2-D taps must be square with odd side, got shape {taps.shape}")

    @property
    def size(self) -> int:
        return self.taps.shape[0]

    @property
    def radius(self) -> int:
        return self.taps.shape[0] // 2


def _mirror_1d(half: np.ndarray) -> np.ndarray:
    # half holds samples at offsets 0..r; mirror to -r..r without recomputing
    return np.concatenate([half[:0:-1], half])


def _mirror_2d(quadrant: np.ndarray) -> np.ndarray:
    # quadrant holds samples at offsets (0..r, 0..r)
    right = np.concatenate([quadrant[:, :0:-1], quadrant], axis=1)
    return np.concatenate([right[:0:-1, :], right], axis=0)


def gaussian_1d(sigma: float) -> Kernel1D:
    """Unit-sum 1-D Gaussian: taps proportional to exp(-u^2 / (2 sigma^2))."""
    sigma = _check_sigma(sigma)
    r = size_rule(sigma) // 2
    u = np.arange(r + 1, dtype=np.float64)
    half = np.exp(-(u * u) / (2.0 * sigma * sigma))
    taps = _mirror_1d(half)
    taps /= taps.sum()
    return Kernel1D(sigma=sigma, taps=taps, kind="gaussian")


def gaussian_2d(sigma: float) -> Kernel2D:
    """Unit-sum 2-D Gaussian: taps proportional to exp(-(x^2+y^2) / (2 sigma^2))."""
    sigma = _check_sigma(sigma)
    r = size_rule(sigma) // 2
    u = np.arange(r + 1, dtype=np.float64)
    rsq = u[:, np.newaxis] ** 2 + u[np.newaxis, :] ** 2
    quadrant = np.exp(-rsq / (2.0 * sigma * sigma))
    taps = _mirror_2d(quadrant)
    taps /= taps.sum()
    return Kernel2D(sigma=sigma, taps=taps, kind="gaussian")


def binomial3() -> Kernel2D:
    """The classic 3x3 binomial smoothing kernel, (1/16)[[1,2,1],[2,4,2],[1,2,1]]."""
    taps = np.array([[1.0, 2.0, 1.0], [2.0, 4.0, 2.0], [1.0, 2.0, 1.0]]) / 16.0
    return Kernel2D(sigma=None, taps=taps, kind="binomial3")


def log_samples(sigma: float) -> np.ndarray:
    """Raw Laplacian-of-Gaussian samples, before zero-DC correction.

    Samples ((x^2 + y^2 - 2 sigma^2) / sigma^4) * exp(-(x^2+y^2) / (2 sigma^2))
    on the integer grid. The center value is -2 / sigma^2; the response
    crosses zero on the ring x^2 + y^2 = 2 sigma^2.
    """
    sigma = _check_sigma(sigma)
    r = size_rule(sigma) // 2
    u = np.arange(r + 1, dtype=np.float64)
    rsq = u[:, np.newaxis] ** 2 + u[np.newaxis, :] ** 2
    s2 = sigma * sigma
    quadrant = ((rsq - 2.0 * s2) / (s2 * s2)) * np.exp(-rsq / (2.0 * s2))
    return _mirror_2d(quadrant)


def log_2d(sigma: float) -> Kernel2D:
    """Zero-sum Laplacian-of-Gaussian kernel.

    The truncated samples carry a small DC offset; the mean is subtracted
    so flat regions map to exactly zero response.
    """
    samples = log_samples(sigma)
    taps = samples - samples.mean()
    return Kernel2D(sigma=float(sigma), taps=taps, kind="log")
