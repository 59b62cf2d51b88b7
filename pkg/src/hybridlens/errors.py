"""Exception types raised across the package."""


class HybridLensError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(HybridLensError, ValueError):
    """A parameter is outside its documented domain (e.g. sigma <= 0)."""


class KernelTooLargeError(HybridLensError, ValueError):
    """Kernel support exceeds 2*min(width, height)+1 for the target image."""


class DimensionMismatchError(HybridLensError, ValueError):
    """Two images that must share dimensions or channel count do not."""


class ImageDecodeError(HybridLensError, ValueError):
    """Input bytes are not a supported PNG/PPM/PGM image."""


class ImageEncodeError(HybridLensError, ValueError):
    """Image cannot be encoded (e.g. plane values outside [0, 1])."""


class SuiteSchemaError(HybridLensError, ValueError):
    """A benchmark suite document violates the JSON schema."""
