"""Filter-cost measurement: timing sweeps, JSON persistence, SVG scatter plots.

One record is produced per (image, sigma, filter kind, strategy)
combination; the elapsed time is the minimum wall time over the requested
repetitions, measured around the filter arithmetic only (kernel
construction, decode, and encode are excluded). Combinations that cannot
run are kept as explicit skip entries rather than dropped.

Both clocks are injectable so suites are fully deterministic under test.
"""

from __future__ import annotations

import json
import platform
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable, List, Optional, Sequence, Tuple

from .convolve import convolve2d, convolve_separable
from .errors import InvalidParameterError, KernelTooLargeError, SuiteSchemaError
from .image import BoundaryPolicy, Image, SignedImage, clamp01
from .kernels import gaussian_1d, gaussian_2d, log_2d
from .svgplot import render_scatter

FILTER_KINDS = ("lowpass", "highpass_subtract", "highpass_log")
STRATEGIES = ("direct", "separable")
DEFAULT_SIGMAS = (2.0, 4.0, 5.0, 7.0, 10.0, 15.0, 20.0, 25.0, 30.0)
DEFAULT_REPETITIONS = 3

ClockNs = Callable[[], int]
WallClock = Callable[[], str]


def _utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class BenchRecord:
    """One timed measurement of a filter applied to one image."""

    image_id: str
    width: int
    height: int
    channels: int
    size_metric: int
    sigma: float
    filter_kind: str
    strategy: str
    elapsed_ns: int
    repetitions: int
    timestamp: str

    def __post_init__(self) -> None:
        if self.size_metric != self.width * self.height * self.channels:
            raise InvalidParameterError(
                f"size_metric {self.size_metric} != width*height*channels "
                f"{self.width * self.height * self.channels}"
            )
        if self.elapsed_ns < 0:
            raise InvalidParameterError("elapsed_ns must be non-negative")
        if self.repetitions < 1:
            raise InvalidParameterError("repetitions must be positive")


@dataclass(frozen=True)
class SkippedCombo:
    """A combination that could not be measured, and why."""

    image_id: str
    sigma: float
    filter_kind: str
    strategy: str
    reason: str


@dataclass
class BenchSuite:
    """A set of measurements plus a free-form note about the machine."""

    records: List[BenchRecord] = field(default_factory=list)
    machine_note: str = ""
    skipped: List[SkippedCombo] = field(default_factory=list)


def _apply_filter(
    img: Image, sigma: float, kind: str, strategy: str, parallel: bool
) -> Callable[[], object]:
    """Build the timed closure; kernel construction stays outside the timer."""
    b = BoundaryPolicy.REPLICATE
    if kind == "lowpass":
        if strategy == "separable":
            k1 = gaussian_1d(sigma)
            return lambda: clamp01(convolve_separable(img, k1, b, parallel=parallel))
        k2 = gaussian_2d(sigma)
        return lambda: clamp01(convolve2d(img, k2, b, parallel=parallel))
    if kind == "highpass_subtract":
        if strategy == "separable":
            k1 = gaussian_1d(sigma)
            return lambda: SignedImage(
                img.planes - clamp01(convolve_separable(img, k1, b, parallel=parallel)).planes
            )
        k2 = gaussian_2d(sigma)
        return lambda: SignedImage(
            img.planes - clamp01(convolve2d(img, k2, b, parallel=parallel)).planes
        )
    if kind == "highpass_log":
        if strategy == "separable":
            raise _NotSeparableError("a Laplacian-of-Gaussian kernel is not separable")
        klog = log_2d(sigma)
        return lambda: convolve2d(img, klog, b, parallel=parallel)
    raise InvalidParameterError(f"unknown filter kind {kind!r}; expected one of {FILTER_KINDS}")


class _NotSeparableError(Exception):
    pass


def run_bench(
    images: Sequence[Tuple[str, Image]],
    sigmas: Sequence[float] = DEFAULT_SIGMAS,
    kinds: Sequence[str] = FILTER_KINDS,
    strategies: Sequence[str] = STRATEGIES,
    repetitions: int = DEFAULT_REPETITIONS,
    *,
    machine_note: Optional[str] = None,
    parallel_engine: bool = False,
    clock_ns: ClockNs = time.perf_counter_ns,
    wall_clock: WallClock = _utc_now_iso,
) -> BenchSuite:
    """Time every (image x sigma x kind x strategy) combination.

    ``images`` pairs a stable identifier with the decoded image. Runs are
    strictly serial unless ``parallel_engine`` is set (recorded in the
    machine note) so records stay comparable.
    """
    if not images or not sigmas or not kinds:
        raise InvalidParameterError("need at least one image, one sigma, and one kind")
    if repetitions < 1:
        raise InvalidParameterError("repetitions must be positive")
    for kind in kinds:
        if kind not in FILTER_KINDS:
            raise InvalidParameterError(f"unknown filter kind {kind!r}")
    for strategy in strategies:
        if strategy not in STRATEGIES:
            raise InvalidParameterError(f"unknown strategy {strategy!r}")

    if machine_note is None:
        machine_note = f"{platform.platform()}; python {platform.python_version()}"
    if parallel_engine:
        machine_note += "; parallel-engine"

    suite = BenchSuite(machine_note=machine_note)
    for image_id, img in images:
        for sigma in sigmas:
            for kind in kinds:
                for strategy in strategies:
                    try:
                        run_once = _apply_filter(img, float(sigma), kind, strategy, parallel_engine)
                    except _NotSeparableError as exc:
                        suite.skipped.append(
                            SkippedCombo(image_id, float(sigma), kind, strategy, str(exc))
                        )
                        continue
                    except KernelTooLargeError as exc:
                        suite.skipped.append(
                            SkippedCombo(image_id, float(sigma), kind, strategy, str(exc))
                        )
                        continue
                    best: Optional[int] = None
                    try:
                        for _ in range(repetitions):
                            t0 = clock_ns()
                            run_once()
                            t1 = clock_ns()
                            elapsed = t1 - t0
                            if best is None or elapsed < best:
                                best = elapsed
                    except KernelTooLargeError as exc:
                        suite.skipped.append(
                            SkippedCombo(image_id, float(sigma), kind, strategy, str(exc))
                        )
                        continue
                    suite.records.append(
                        BenchRecord(
                            image_id=image_id,
                            width=img.width,
                            height=img.height,
                            channels=img.channels,
                            size_metric=img.width * img.height * img.channels,
                            sigma=float(sigma),
                            filter_kind=kind,
                            strategy=strategy,
                            elapsed_ns=max(int(best), 0),
                            repetitions=repetitions,
                            timestamp=wall_clock(),
                        )
                    )
    return suite


_RECORD_FIELDS = (
    ("image_id", str),
    ("width", int),
    ("height", int),
    ("channels", int),
    ("size_metric", int),
    ("sigma", (int, float)),
    ("filter_kind", str),
    ("strategy", str),
    ("elapsed_ns", int),
    ("repetitions", int),
    ("timestamp", str),
)


def save_suite(s: BenchSuite) -> bytes:
    """Serialize to the documented JSON schema (UTF-8)."""
    if not s.records:
        raise InvalidParameterError("refusing to persist an empty suite")
    doc = {
        "machine_note": s.machine_note,
        "records": [
            {
                "image_id": r.image_id,
                "width": r.width,
                "height": r.height,
                "channels": r.channels,
                "size_metric": r.size_metric,
                "sigma": r.sigma,
                "filter_kind": r.filter_kind,
                "strategy": r.strategy,
                "elapsed_ns": r.elapsed_ns,
                "repetitions": r.repetitions,
                "timestamp": r.timestamp,
            }
            for r in s.records
        ],
    }
    if s.skipped:
        doc["skipped"] = [
            {
                "image_id": k.image_id,
                "sigma": k.sigma,
                "filter_kind": k.filter_kind,
                "strategy": k.strategy,
                "reason": k.reason,
            }
            for k in s.skipped
        ]
    return json.dumps(doc, indent=2).encode("utf-8")


def load_suite(data: bytes) -> BenchSuite:
    """Parse suite JSON; unknown extra fields are ignored for forward compat."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SuiteSchemaError(f"not valid suite JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SuiteSchemaError("suite document must be a JSON object")
    note = doc.get("machine_note")
    if not isinstance(note, str):
        raise SuiteSchemaError('missing or non-string field "machine_note"')
    raw_records = doc.get("records")
    if not isinstance(raw_records, list):
        raise SuiteSchemaError('missing or non-list field "records"')
    records = []
    for i, raw in enumerate(raw_records):
        if not isinstance(raw, dict):
            raise SuiteSchemaError(f"record {i}: not an object")
        values = {}
        for name, types in _RECORD_FIELDS:
            if name not in raw:
                raise SuiteSchemaError(f'record {i}: missing field "{name}"')
            value = raw[name]
            if isinstance(value, bool) or not isinstance(value, types):
                raise SuiteSchemaError(
                    f'record {i}: field "{name}" has wrong type {type(value).__name__}'
                )
            values[name] = value
        values["sigma"] = float(values["sigma"])
        try:
            records.append(BenchRecord(**values))
        except InvalidParameterError as exc:
            raise SuiteSchemaError(f"record {i}: {exc}") from exc
    skipped = []
    for i, raw in enumerate(doc.get("skipped", [])):
        if not isinstance(raw, dict):
            raise SuiteSchemaError(f"skipped entry {i}: not an object")
        try:
            skipped.append(
                SkippedCombo(
                    image_id=str(raw["image_id"]),
                    sigma=float(raw["sigma"]),
                    filter_kind=str(raw["filter_kind"]),
                    strategy=str(raw["strategy"]),
                    reason=str(raw["reason"]),
                )
            )
        except KeyError as exc:
            raise SuiteSchemaError(f"skipped entry {i}: missing field {exc}") from exc
    return BenchSuite(records=records, machine_note=note, skipped=skipped)


def plot_scatter(s: BenchSuite) -> bytes:
    """Faceted SVG scatter: time vs size, one panel per filter kind."""
    if not s.records:
        raise InvalidParameterError("cannot plot an empty suite")
    return render_scatter(s.records)
