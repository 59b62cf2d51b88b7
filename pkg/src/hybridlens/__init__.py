"""Image filtering toolkit: Gaussian/LoG kernels, spatial convolution,
hybrid-image synthesis, filter benchmarking, and an interactive tuning
service."""

from .bench import (
    DEFAULT_SIGMAS,
    BenchRecord,
    BenchSuite,
    SkippedCombo,
    load_suite,
    plot_scatter,
    run_bench,
    save_suite,
)
from .convolve import convolve2d, convolve_separable, count_taps, resolve
from .errors import (
    DimensionMismatchError,
    HybridLensError,
    ImageDecodeError,
    ImageEncodeError,
    InvalidParameterError,
    KernelTooLargeError,
    SuiteSchemaError,
)
from .filters import (
    BlendSpec,
    PyramidSpec,
    highpass,
    hybrid,
    lowpass,
    match_dimensions,
    pyramid_layout,
    scale_pyramid,
    visualize_signed,
)
from .image import BoundaryPolicy, Image, SignedImage, clamp01
from .image_io import EncodedFormat, load, resize_bilinear, save
from .kernels import (
    Kernel1D,
    Kernel2D,
    binomial3,
    gaussian_1d,
    gaussian_2d,
    log_2d,
    log_samples,
    size_rule,
)

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "BenchSuite",
    "BlendSpec",
    "BoundaryPolicy",
    "DEFAULT_SIGMAS",
    "DimensionMismatchError",
    "EncodedFormat",
    "HybridLensError",
    "Image",
    "ImageDecodeError",
    "ImageEncodeError",
    "InvalidParameterError",
    "Kernel1D",
    "Kernel2D",
    "KernelTooLargeError",
    "PyramidSpec",
    "SignedImage",
    "SkippedCombo",
    "SuiteSchemaError",
    "binomial3",
    "clamp01",
    "convolve2d",
    "convolve_separable",
    "count_taps",
    "gaussian_1d",
    "gaussian_2d",
    "highpass",
    "hybrid",
    "load",
    "load_suite",
    "log_2d",
    "log_samples",
    "lowpass",
    "match_dimensions",
    "plot_scatter",
    "pyramid_layout",
    "resize_bilinear",
    "resolve",
    "run_bench",
    "save",
    "save_suite",
    "scale_pyramid",
    "size_rule",
    "visualize_signed",
]
