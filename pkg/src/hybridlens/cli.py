"""Command-line entry point.

Subcommands: blur, highpass, hybrid, bench, plot, kernel-dump, serve.
Exit codes: 0 success, 2 usage error, 1 runtime failure. Outputs are
written to a temp file and renamed into place so a failing run never
leaves a partial file.
"""

from __future__ import annotations

import functools
import os
import tempfile
from pathlib import Path

import click
import numpy as np

from . import bench as bench_mod
from .errors import HybridLensError
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
from .image import BoundaryPolicy, Image
from .image_io import EncodedFormat, load, save
from .kernels import binomial3, gaussian_2d, log_2d

SYNTHETIC_SEED = 0x5EED
SYNTHETIC_SIDES = (64, 128, 256)


def _positive(ctx: click.Context, param: click.Parameter, value: float) -> float:
    if value is not None and value <= 0:
        raise click.BadParameter("must be > 0")
    return value


def _fraction(ctx: click.Context, param: click.Parameter, value: float) -> float:
    if value is not None and not 0.0 <= value <= 1.0:
        raise click.BadParameter("must be in [0, 1]")
    return value


_BOUNDARY = click.option(
    "--boundary",
    type=click.Choice(["replicate", "reflect", "zero"]),
    default="replicate",
    show_default=True,
    help="Edge handling during convolution.",
)


def _runtime_errors(fn):
    """Surface library failures as exit-1 errors (usage problems stay exit 2)."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except HybridLensError as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _format_for(path: Path) -> EncodedFormat:
    if path.suffix.lower() in (".ppm", ".pgm"):
        return EncodedFormat.PPM
    return EncodedFormat.PNG


def _write_atomic(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _save_image(img: Image, path: Path) -> None:
    _write_atomic(path, save(img, _format_for(path)))


@click.group()
@click.version_option(package_name="hybridlens")
def main() -> None:
    """Gaussian/LoG filtering, hybrid images, and filter benchmarking."""


@main.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("output", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--sigma", type=float, default=7.0, show_default=True, callback=_positive)
@_BOUNDARY
@_runtime_errors
def blur(input: Path, output: Path, sigma: float, boundary: str) -> None:
    """Apply a Gaussian lowpass filter to an image."""
    img = load(input)
    _save_image(lowpass(img, sigma, BoundaryPolicy.parse(boundary)), output)
    click.echo(f"wrote {output} ({img.width}x{img.height}, sigma={sigma})")


@main.command("highpass")
@click.argument("input", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("output", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--sigma", type=float, default=7.0, show_default=True, callback=_positive)
@click.option(
    "--mode",
    type=click.Choice(["subtract", "log"]),
    default="subtract",
    show_default=True,
    help="Residual extraction: blur complement, or Laplacian-of-Gaussian.",
)
@_BOUNDARY
@_runtime_errors
def highpass_cmd(input: Path, output: Path, sigma: float, mode: str, boundary: str) -> None:
    """Extract the high-frequency layer and render it mid-gray centered."""
    img = load(input)
    residual = highpass(img, sigma, mode, BoundaryPolicy.parse(boundary))
    _save_image(visualize_signed(residual), output)
    click.echo(f"wrote {output} ({mode}, sigma={sigma})")


@main.command("hybrid")
@click.argument("input_low", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("input_high", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("output", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--sigma-low", type=float, default=7.0, show_default=True, callback=_positive)
@click.option("--sigma-high", type=float, default=7.0, show_default=True, callback=_positive)
@click.option(
    "--weight",
    type=float,
    default=0.5,
    show_default=True,
    callback=_fraction,
    help="Fraction of the lowpass layer in the blend.",
)
@click.option("--mode", type=click.Choice(["subtract", "log"]), default="subtract", show_default=True)
@click.option(
    "--pyramid-levels",
    type=int,
    default=1,
    show_default=True,
    help="Render a shrinking-copies strip with this many levels (1 = plain hybrid).",
)
@click.option("--pyramid-scale", type=float, default=0.5, show_default=True)
@click.option("--pyramid-gap", type=int, default=8, show_default=True)
@_BOUNDARY
@_runtime_errors
def hybrid_cmd(
    input_low: Path,
    input_high: Path,
    output: Path,
    sigma_low: float,
    sigma_high: float,
    weight: float,
    mode: str,
    pyramid_levels: int,
    pyramid_scale: float,
    pyramid_gap: int,
    boundary: str,
) -> None:
    """Compose a hybrid image from a lowpass source and a highpass source."""
    if pyramid_levels < 1:
        raise click.BadParameter("must be >= 1", param_hint="--pyramid-levels")
    a, b = match_dimensions(load(input_low), load(input_high))
    spec = BlendSpec(
        sigma_low=sigma_low,
        sigma_high=sigma_high,
        weight=weight,
        highpass_mode=mode,
        boundary=BoundaryPolicy.parse(boundary),
    )
    result = hybrid(a, b, spec)
    if pyramid_levels > 1:
        pspec = PyramidSpec(levels=pyramid_levels, scale_factor=pyramid_scale, gap_px=pyramid_gap)
        emitted = len(pyramid_layout(result.width, result.height, pspec))
        result = scale_pyramid(result, pspec)
        if emitted < pyramid_levels:
            click.echo(f"note: emitted {emitted} of {pyramid_levels} levels (next would be < 1x1)")
        else:
            click.echo(f"emitted {emitted} pyramid levels")
    _save_image(result, output)
    click.echo(f"wrote {output} ({result.width}x{result.height})")


def synthetic_corpus() -> list:
    """Deterministic pseudorandom RGB squares, fixed seed, sizes 64/128/256."""
    rng = np.random.default_rng(SYNTHETIC_SEED)
    return [
        (f"synthetic-{side}", Image(rng.random((side, side, 3))))
        for side in SYNTHETIC_SIDES
    ]


@main.command("bench")
@click.argument(
    "corpus_dir",
    required=False,
    type=click.Path(exists=True, file_okay=False, path_type=Path),
)
@click.option("--synthetic", is_flag=True, help="Use the built-in seeded synthetic corpus.")
@click.option("--out-json", type=click.Path(dir_okay=False, path_type=Path), required=True)
@click.option(
    "--sigma",
    "sigmas",
    type=float,
    multiple=True,
    help="Sigma sweep; repeatable. Defaults to 2,4,5,7,10,15,20,25,30.",
)
@click.option(
    "--kind",
    "kinds",
    type=click.Choice(list(bench_mod.FILTER_KINDS)),
    multiple=True,
    help="Filter kinds to measure; repeatable. Defaults to all.",
)
@click.option(
    "--strategy",
    "strategies",
    type=click.Choice(list(bench_mod.STRATEGIES)),
    multiple=True,
    help="Convolution strategies; repeatable. Defaults to both.",
)
@click.option("--repetitions", type=int, default=bench_mod.DEFAULT_REPETITIONS, show_default=True)
@click.option("--parallel-engine", is_flag=True, help="Allow engine-internal parallelism (noted in the suite).")
@_runtime_errors
def bench_cmd(
    corpus_dir: Path | None,
    synthetic: bool,
    out_json: Path,
    sigmas: tuple,
    kinds: tuple,
    strategies: tuple,
    repetitions: int,
    parallel_engine: bool,
) -> None:
    """Time filters across a corpus and record a JSON suite."""
    if synthetic == (corpus_dir is not None):
        raise click.UsageError("provide exactly one of CORPUS_DIR or --synthetic")
    if repetitions < 1:
        raise click.BadParameter("must be >= 1", param_hint="--repetitions")
    for s in sigmas:
        if s <= 0:
            raise click.BadParameter("must be > 0", param_hint="--sigma")
    if synthetic:
        images = synthetic_corpus()
    else:
        paths = sorted(
            p for p in corpus_dir.iterdir()
            if p.suffix.lower() in (".png", ".ppm", ".pgm")
        )
        if not paths:
            raise click.UsageError(f"no .png/.ppm/.pgm images in {corpus_dir}")
        images = [(p.name, load(p)) for p in paths]
    suite = bench_mod.run_bench(
        images,
        sigmas=list(sigmas) or list(bench_mod.DEFAULT_SIGMAS),
        kinds=list(kinds) or list(bench_mod.FILTER_KINDS),
        strategies=list(strategies) or list(bench_mod.STRATEGIES),
        repetitions=repetitions,
        parallel_engine=parallel_engine,
    )
    _write_atomic(out_json, bench_mod.save_suite(suite))
    msg = f"wrote {out_json}: {len(suite.records)} records"
    if suite.skipped:
        msg += f", {len(suite.skipped)} combinations skipped"
    click.echo(msg)


@main.command("plot")
@click.argument("in_json", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("out_svg", type=click.Path(dir_okay=False, path_type=Path))
@_runtime_errors
def plot_cmd(in_json: Path, out_svg: Path) -> None:
    """Render a suite JSON as an SVG scatter plot (time vs size)."""
    suite = bench_mod.load_suite(in_json.read_bytes())
    _write_atomic(out_svg, bench_mod.plot_scatter(suite))
    click.echo(f"wrote {out_svg}: {len(suite.records)} points")


@main.command("kernel-dump")
@click.option("--sigma", type=float, callback=_positive, help="Required for gaussian and log kinds.")
@click.option(
    "--kind",
    type=click.Choice(["gaussian", "log", "binomial3"]),
    default="gaussian",
    show_default=True,
)
@_runtime_errors
def kernel_dump(sigma: float | None, kind: str) -> None:
    """Print kernel taps as a text grid (17 significant digits) plus the sum."""
    if kind == "binomial3":
        kernel = binomial3()
    else:
        if sigma is None:
            raise click.BadParameter("required for gaussian/log kinds", param_hint="--sigma")
        kernel = gaussian_2d(sigma) if kind == "gaussian" else log_2d(sigma)
    for row in kernel.taps:
        click.echo(" ".join(f"{v:.17g}" for v in row))
    click.echo(f"sum {kernel.taps.sum():.17g}")


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8321, show_default=True)
@click.option("--max-sessions", type=int, default=8, show_default=True)
@click.option(
    "--ui-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Directory of built tuner UI assets; defaults to ./frontend/dist when present.",
)
@_runtime_errors
def serve(host: str, port: int, max_sessions: int, ui_dir: Path | None) -> None:
    """Start the interactive parameter-tuning HTTP service."""
    import uvicorn

    from .service.app import create_app

    if ui_dir is None:
        candidate = Path.cwd() / "frontend" / "dist"
        ui_dir = candidate if candidate.is_dir() else None
    elif not ui_dir.is_dir():
        raise click.BadParameter(f"{ui_dir} is not a directory", param_hint="--ui-dir")
    if ui_dir is None:
        click.echo("no UI assets found; serving API only (build frontend/ for the tuner UI)")
    app = create_app(max_sessions=max_sessions, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)
