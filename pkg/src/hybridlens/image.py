"""Raster carriers: normalized images, signed intermediates, boundary policies.

Planes are float64 arrays shaped (height, width, channels), channels-last.
``Image`` values live in [0, 1]; ``SignedImage`` is the unrestricted carrier
for high-pass residuals and other intermediates before visualization.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, InvalidParameterError


class BoundaryPolicy(enum.Enum):
    """Edge-handling rule used when a kernel tap falls outside the image.

    - replicate: clamp to the nearest valid index
    - reflect: mirror about the edge, half-sample convention (-1 -> 0, -2 -> 1)
    - zero: out-of-range samples contribute 0
    """

    REPLICATE = "replicate"
    REFLECT = "reflect"
    ZERO = "zero"

    @classmethod
    def parse(cls, name: str) -> "BoundaryPolicy":
        try:
            return cls(name.lower())
        except ValueError:
            raise InvalidParameterError(
                f"unknown boundary policy {name!r}; expected one of "
                f"{[p.value for p in cls]}"
            ) from None


def _check_planes(planes: np.ndarray) -> np.ndarray:
    planes = np.asarray(planes, dtype=np.float64)
    if planes.ndim == 2:
        planes = planes[:, :, np.newaxis]
    if planes.ndim != 3:
        raise InvalidParameterError(
            f"planes must be (height, width, channels), got shape {planes.shape}"
        )
    h, w, c = planes.shape
    if h < 1 or w < 1:
        raise InvalidParameterError(f"image must be non-empty, got {w}x{h}")
    if c not in (1, 3):
        raise InvalidParameterError(f"channel count must be 1 or 3, got {c}")
    return planes


@dataclass(frozen=True)
class SignedImage:
    """Per-channel raster of unrestricted real values."""

    planes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "planes", _check_planes(self.planes))

    @property
    def height(self) -> int:
        return self.planes.shape[0]

    @property
    def width(self) -> int:
        return self.planes.shape[1]

    @property
    def channels(self) -> int:
        return self.planes.shape[2]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.width}x{self.height}x{self.channels})"


@dataclass(frozen=True, repr=False)
class Image(SignedImage):
    """Raster of normalized intensities in [0, 1]."""

    def __post_init__(self) -> None:
        super().__post_init__()
        lo = float(self.planes.min())
        hi = float(self.planes.max())
        if lo < 0.0 or hi > 1.0:
            raise InvalidParameterError(
                f"Image plane values must lie in [0, 1], got range [{lo}, {hi}]"
            )


def clamp01(signed: SignedImage) -> Image:
    """Clamp plane values into [0, 1] and return a normalized Image."""
    return Image(np.clip(signed.planes, 0.0, 1.0))


def require_same_shape(a: SignedImage, b: SignedImage) -> None:
    if a.channels != b.channels:
        raise DimensionMismatchError(
            f"channel counts differ: {a.channels} vs {b.channels}"
        )
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatchError(
            f"dimensions differ: {a.width}x{a.height} vs {b.width}x{b.height}; "
            "run match_dimensions first"
        )
