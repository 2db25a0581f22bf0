"""Typer-based CLI for porebench."""

from __future__ import annotations

import asyncio
import json
import logging
from dataclasses import replace
from pathlib import Path
from typing import Annotated, Any, NoReturn

import numpy as np
import typer

from porebench import __version__
from porebench.averaging import (
    AveragingKind,
    AveragingScheme,
    average,
    decompose,
    read_field,
    write_field,
)
from porebench.bench import COMPLETE, AnalysisResult, PoreBench, create_default_bench
from porebench.closure import FitOptions, LossKind, SampleSet, closure_residual_data, fit
from porebench.core.models import utc_now_iso
from porebench.exceptions import PoreBenchError
from porebench.geometry.image import DEFAULT_RESOLUTION, GeneratorKind, GeneratorSpec
from porebench.geometry.raster import (
    read_raster,
    write_label_pgm,
    write_overlay_pgm,
    write_raster,
)
from porebench.preprocess import clean as clean_image
from porebench.preprocess import check_periodic_connectivity
from porebench.utils.serialization import dumps, sha256_file

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
GEOMETRY_SUFFIXES = (".pbm", ".pgm")

app = typer.Typer(help="Pore geometry generation, metrics, averaging and closure fitting")


def _fail(exc: Exception) -> NoReturn:
    """Print a structured error object and exit with status 1."""
    if isinstance(exc, PoreBenchError):
        error: dict[str, Any] = exc.to_dict()
    else:
        error = {"code": type(exc).__name__, "message": str(exc)}
    typer.echo(dumps({"error": error}))
    raise typer.Exit(code=1)


def _sidecar_seed(path: Path) -> int | None:
    sidecar = path.with_suffix(".json")
    if not sidecar.is_file():
        return None
    try:
        return json.loads(sidecar.read_text(encoding="utf-8")).get("seed")
    except (ValueError, AttributeError):
        return None


def _report_document(path: Path, result: AnalysisResult, timestamp: str) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "input": {
            "path": str(path),
            "width": result.image.width,
            "height": result.image.height,
            "checksum": f"sha256:{sha256_file(path)}",
        },
        **result.to_dict(),
        "provenance": {"version": __version__, "timestamp": timestamp, "seed": _sidecar_seed(path)},
    }


def _write_debug(result: AnalysisResult, directory: Path, stem: str) -> None:
    artifacts = result.artifacts
    if artifacts.pores is not None:
        write_label_pgm(artifacts.pores.labels, directory / f"{stem}_pores.pgm")
    for axis, path_result in artifacts.paths.items():
        marked = np.zeros(result.image.cells.shape, dtype=bool)
        marked[path_result.path[:, 0], path_result.path[:, 1]] = True
        write_overlay_pgm(result.image, marked, directory / f"{stem}_path_{axis}.pgm")
    for axis, cut in artifacts.cuts.items():
        write_overlay_pgm(result.image, cut.cut_mask, directory / f"{stem}_cut_{axis}.pgm")


def _scheme(
    kind: AveragingKind, sub_nx: int, sub_ny: int, filter_w: int, filter_h: int, superficial: bool
) -> AveragingScheme:
    return AveragingScheme(
        kind=kind,
        sub_nx=sub_nx,
        sub_ny=sub_ny,
        filter_w=filter_w,
        filter_h=filter_h,
        superficial=superficial,
    )


@app.command("generate")
def generate(
    kind: Annotated[GeneratorKind, typer.Option(help="Generator kind")],
    out: Annotated[Path | None, typer.Option(help="Output PBM path (default: <kind>.pbm)")] = None,
    width: Annotated[int, typer.Option(help="Width in pixels")] = DEFAULT_RESOLUTION,
    height: Annotated[int, typer.Option(help="Height in pixels")] = DEFAULT_RESOLUTION,
    radius: Annotated[float, typer.Option(help="Circle radius / triangle circumradius")] = 0.0,
    half_width: Annotated[float, typer.Option(help="Half width (square, rectangle, ellipse, cross)")] = 0.0,
    half_height: Annotated[float, typer.Option(help="Half height (rectangle, ellipse, cross)")] = 0.0,
    rotation: Annotated[float, typer.Option(help="Counterclockwise rotation in degrees")] = 0.0,
    scale: Annotated[int, typer.Option(help="Noise wavelength in pixels")] = 50,
    threshold: Annotated[float, typer.Option(help="Noise cut level in [0, 1]")] = 0.5,
    octaves: Annotated[int, typer.Option(help="Fractal octaves")] = 4,
    persistence: Annotated[float, typer.Option(help="Fractal amplitude factor per octave")] = 0.5,
    seeds: Annotated[int, typer.Option(help="Voronoi seed count")] = 8,
    aperture: Annotated[float, typer.Option(help="Voronoi channel half-width")] = 2.0,
    seed: Annotated[int, typer.Option(help="RNG seed")] = 0,
    plain: Annotated[bool, typer.Option(help="Write plain (P1) instead of binary PBM")] = False,
) -> None:
    """Generate a geometry and its JSON metadata sidecar."""
    spec = GeneratorSpec(
        kind=kind,
        radius=radius,
        half_width=half_width,
        half_height=half_height,
        rotation=rotation,
        scale=scale,
        threshold=threshold,
        octaves=octaves,
        persistence=persistence,
        seeds=seeds,
        aperture=aperture,
        rng_seed=seed,
    )
    target = out or Path(f"{kind.value}.pbm")
    try:
        bench = create_default_bench()
        image = bench.generate(spec, width, height)
        write_raster(image, target, plain=plain)
    except PoreBenchError as exc:
        _fail(exc)

    sidecar = target.with_suffix(".json")
    metadata = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "spec": spec.to_dict(),
        "width": width,
        "height": height,
        "seed": seed,
        "porosity": image.void_count / image.total_count,
    }
    sidecar.write_text(dumps(metadata) + "\n", encoding="utf-8")
    typer.echo(dumps({"geometry": str(target), "metadata": str(sidecar)}))


@app.command("check")
def check(path: Annotated[Path, typer.Argument(help="Geometry file")]) -> None:
    """Report periodic connectivity of a geometry."""
    try:
        bench = create_default_bench()
        image = read_raster(path)
        report = check_periodic_connectivity(image, bench.options.discontinuity_threshold)
    except (PoreBenchError, OSError) as exc:
        _fail(exc)
    typer.echo(dumps(report.to_dict()))


@app.command("clean")
def clean(
    path: Annotated[Path, typer.Argument(help="Geometry file")],
    out: Annotated[Path, typer.Option(help="Output PBM path")],
) -> None:
    """Keep only the largest void component."""
    try:
        bench = create_default_bench()
        result = clean_image(read_raster(path), bench.options.discontinuity_threshold)
        write_raster(result.image, out)
    except (PoreBenchError, OSError) as exc:
        _fail(exc)
    typer.echo(
        dumps({"out": str(out), "removed_pixels": result.removed_pixels, **result.report.to_dict()})
    )


async def _stream(bench: PoreBench, path: Path, clean_first: bool) -> AnalysisResult:
    result: AnalysisResult | None = None
    async for event in bench.stream_analysis(read_raster(path), clean=clean_first):
        typer.echo(f"[{event.stage}] {event.message}")
        if event.stage == COMPLETE:
            result = event.payload["result"]
    assert result is not None
    return result


@app.command("analyze")
def analyze(
    path: Annotated[Path | None, typer.Argument(help="Geometry file")] = None,
    batch: Annotated[Path | None, typer.Option(help="Analyze every PBM/PGM file in a directory")] = None,
    clean_first: Annotated[bool, typer.Option("--clean", help="Keep only the largest void component first")] = False,
    stream: Annotated[bool, typer.Option(help="Print stage events while running")] = False,
    debug_dir: Annotated[Path | None, typer.Option(help="Write segmentation, path and cut rasters")] = None,
    out: Annotated[Path | None, typer.Option(help="Also write the JSON report here")] = None,
) -> None:
    """Compute every metric and print a JSON report."""
    if (path is None) == (batch is None):
        raise typer.BadParameter("give either a geometry file or --batch <dir>")
    timestamp = utc_now_iso()
    bench = create_default_bench()

    if batch is not None:
        files = sorted(p for p in batch.iterdir() if p.suffix.lower() in GEOMETRY_SUFFIXES)
        items = asyncio.run(bench.analyze_batch(files, clean=clean_first))
        documents: list[dict[str, Any]] = []
        for item in items:
            if item.result is None:
                documents.append({"input": {"path": str(item.path)}, "error": item.error})
                continue
            documents.append(_report_document(item.path, item.result, timestamp))
            if debug_dir is not None:
                _write_debug(item.result, debug_dir, item.path.stem)
        payload: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "results": documents}
        text = dumps(payload)
        if out is not None:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(text + "\n", encoding="utf-8")
        typer.echo(text)
        if not all(item.ok for item in items):
            raise typer.Exit(code=1)
        return

    assert path is not None
    try:
        if stream:
            result = asyncio.run(_stream(bench, path, clean_first))
        else:
            result = bench.analyze_path(path, clean=clean_first)
        document = _report_document(path, result, timestamp)
        if debug_dir is not None:
            _write_debug(result, debug_dir, path.stem)
    except (PoreBenchError, OSError) as exc:
        _fail(exc)
    text = dumps(document)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n", encoding="utf-8")
    typer.echo(text)


@app.command("average")
def average_cmd(
    field_path: Annotated[Path, typer.Argument(help="PSF1 field file")],
    kind: Annotated[AveragingKind, typer.Option(help="Averaging scheme")] = AveragingKind.FULL,
    sub_nx: Annotated[int, typer.Option(help="Sub-regions along x")] = 1,
    sub_ny: Annotated[int, typer.Option(help="Sub-regions along y")] = 1,
    filter_w: Annotated[int, typer.Option(help="Convolution filter width (odd)")] = 1,
    filter_h: Annotated[int, typer.Option(help="Convolution filter height (odd)")] = 1,
    superficial: Annotated[bool, typer.Option(help="Multiply by window porosity")] = False,
    out_dir: Annotated[
        Path | None, typer.Option(help="Output directory (default: <field stem>_avg beside the field)")
    ] = None,
) -> None:
    """Average a pore-scale field and split off its variation."""
    if out_dir is None:
        out_dir = field_path.with_name(f"{field_path.stem}_avg")
    scheme = _scheme(kind, sub_nx, sub_ny, filter_w, filter_h, superficial)
    try:
        field = read_field(field_path)
        averaged = average(field, scheme)
        _, variation = decompose(field, scheme)
    except (PoreBenchError, OSError) as exc:
        _fail(exc)

    payload: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "scheme": scheme.to_dict()}
    if kind is AveragingKind.FULL:
        payload["average"] = averaged.scalar
    elif kind is AveragingKind.SUB:
        payload["average"] = averaged.to_dict()["values"]
    try:
        if kind is AveragingKind.CONVOLUTIONAL:
            averaged_field = field.with_values(averaged.expand())
            payload["average"] = str(write_field(averaged_field, out_dir / "average.psf1"))
        payload["variation"] = str(write_field(variation, out_dir / "variation.psf1"))
        (out_dir / "average.json").write_text(dumps(payload) + "\n", encoding="utf-8")
    except OSError as exc:
        _fail(exc)
    typer.echo(dumps(payload))


@app.command("samples")
def samples(
    m_path: Annotated[Path, typer.Argument(help="First PSF1 field")],
    n_path: Annotated[Path, typer.Argument(help="Second PSF1 field")],
    out: Annotated[Path, typer.Option(help="Output CSV or JSON")],
    kind: Annotated[AveragingKind, typer.Option(help="Averaging scheme")] = AveragingKind.SUB,
    sub_nx: Annotated[int, typer.Option(help="Sub-regions along x")] = 1,
    sub_ny: Annotated[int, typer.Option(help="Sub-regions along y")] = 1,
    filter_w: Annotated[int, typer.Option(help="Convolution filter width (odd)")] = 1,
    filter_h: Annotated[int, typer.Option(help="Convolution filter height (odd)")] = 1,
    feature: Annotated[list[str] | None, typer.Option(help="Extra feature NAME=VALUE")] = None,
    averages: Annotated[bool, typer.Option(help="Include window averages as features")] = True,
) -> None:
    """Build closure samples from two pore-scale fields."""
    extra: dict[str, float] = {}
    for item in feature or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise typer.BadParameter(f"feature must be NAME=VALUE, got {item!r}")
        try:
            extra[name.strip()] = float(value)
        except ValueError as exc:
            raise typer.BadParameter(f"feature value must be a number, got {value!r}") from exc
    scheme = _scheme(kind, sub_nx, sub_ny, filter_w, filter_h, False)
    try:
        sample_set = closure_residual_data(
            read_field(m_path), read_field(n_path), scheme, extra, include_averages=averages
        )
        sample_set.export(out)
    except (PoreBenchError, OSError, ValueError) as exc:
        _fail(exc)
    typer.echo(dumps({"out": str(out), "samples": len(sample_set), "features": list(sample_set.feature_names)}))


@app.command("fit")
def fit_cmd(
    samples_path: Annotated[Path, typer.Argument(help="Samples CSV or JSON")],
    model: Annotated[str, typer.Option(help="Closure model name")] = "linear",
    loss: Annotated[LossKind, typer.Option(help="Loss function")] = LossKind.MSE,
    starts: Annotated[int, typer.Option(help="Number of seeded simplex starts")] = 8,
    seed: Annotated[int, typer.Option(help="Start point seed")] = 0,
    max_iter: Annotated[int, typer.Option(help="Iteration cap per start")] = 10_000,
    out: Annotated[Path | None, typer.Option(help="Also write the fit JSON here")] = None,
) -> None:
    """Fit closure parameters to a sample set."""
    options = replace(FitOptions(), n_starts=starts, seed=seed, max_iter=max_iter)
    try:
        bench = create_default_bench()
        sample_set = SampleSet.load(samples_path)
        closure = bench.models.get(model).build(len(sample_set.feature_names))
        result = fit(closure, sample_set, loss, options)
    except (PoreBenchError, OSError, ValueError) as exc:
        _fail(exc)
    text = dumps({"schema_version": SCHEMA_VERSION, **result.to_dict()})
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n", encoding="utf-8")
    typer.echo(text)


@app.command("list-generators")
def list_generators() -> None:
    """List registered geometry generators."""
    bench = create_default_bench()
    for entry in bench.generators.list_entries():
        typer.echo(f"- {entry['name']}: {entry['description']}")


@app.command("list-models")
def list_models() -> None:
    """List registered closure models."""
    bench = create_default_bench()
    for entry in bench.models.list_entries():
        typer.echo(f"- {entry['name']}: {entry['description']}")


@app.command("stats")
def stats(
    paths: Annotated[list[Path], typer.Argument(help="Geometry files")],
) -> None:
    """Analyze files and show run counters and stage timings."""
    bench = create_default_bench()
    for path in paths:
        try:
            bench.analyze_path(path)
        except (PoreBenchError, OSError) as exc:
            logger.warning("Analysis of %s failed: %s", path, exc)
    typer.echo(dumps(bench.stats_snapshot()))


if __name__ == "__main__":
    app()
