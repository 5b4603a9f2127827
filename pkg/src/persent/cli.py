"""Command-line driver: sampling, end-to-end analysis, barcode re-scoring.

Exit codes: 0 success, 2 configuration error, 3 I/O or input-format
error, 4 simplex budget exceeded, 5 degenerate barcode. All file output
is atomic (temp file + rename), so a failed run leaves no partial
outputs behind. Identical configuration (including seed) produces
byte-identical files.
"""

from __future__ import annotations

import functools
import math
import os
import re
import sys
import tempfile
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import click

from .entropy import (
    REPORT_FORMATS,
    EntropyReport,
    classify,
    lengths_from_barcode,
    render_report,
)
from .errors import (
    BudgetExceededError,
    DegenerateBarcodeError,
    InputFormatError,
)
from .filtration import DEFAULT_BUDGET, build_rips, format_complex_lines
from .persistence import (
    Barcode,
    apply_essential_cap,
    compute_barcode,
    format_barcode,
    parse_barcode,
    resolved_dimensions,
)
from .pointcloud import (
    RNG_NAME,
    PointCloud,
    diameter,
    distance_matrix,
    load_points,
    sample_circle,
    sample_torus,
)

EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_BUDGET = 4
EXIT_DEGENERATE = 5

Threshold = Union[float, str]


@dataclass(frozen=True)
class RunConfig:
    """Everything one analysis run depends on."""

    input: Optional[str] = None
    circle: Optional[Tuple[int, float]] = None
    torus: Optional[Tuple[int, float, float]] = None
    max_dim: int = 2
    threshold: Threshold = "full"
    per_dim: Optional[int] = None
    seed: int = 0
    format: str = "table"
    budget: int = DEFAULT_BUDGET
    barcode_out: Optional[str] = None
    report_out: Optional[str] = None
    plot_out: Optional[str] = None
    complex_out: Optional[str] = None

    def __post_init__(self):
        sources = [s for s in (self.input, self.circle, self.torus) if s is not None]
        if len(sources) != 1:
            raise ValueError("exactly one of input, circle, torus must be given")
        if self.max_dim < 0:
            raise ValueError("max_dim must be >= 0")
        if self.threshold != "full":
            t = float(self.threshold)
            if not (math.isfinite(t) and t > 0):
                raise ValueError("threshold must be positive and finite, or 'full'")
        if self.per_dim is not None and self.per_dim < 0:
            raise ValueError("per_dim must be >= 0")
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if self.format not in REPORT_FORMATS:
            raise ValueError(f"format must be one of {REPORT_FORMATS}")


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".persent-", suffix="~")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _points_csv(cloud: PointCloud) -> str:
    lines = [",".join("%.17g" % c for c in row) for row in cloud.points]
    return "\n".join(lines) + "\n"


def _resolve_cloud(cfg: RunConfig) -> Tuple[PointCloud, dict]:
    """Build the point cloud and the provenance entries for the report."""
    if cfg.input is not None:
        cloud = load_points(cfg.input)
        meta = {"source": cfg.input}
    elif cfg.circle is not None:
        count, radius = cfg.circle
        cloud = sample_circle(count, radius, seed=cfg.seed)
        meta = {"source": f"circle({count},{radius:g})", "seed": cfg.seed, "rng": RNG_NAME}
    else:
        count, major, minor = cfg.torus
        cloud = sample_torus(count, major, minor, seed=cfg.seed)
        meta = {
            "source": f"torus({count},{major:g},{minor:g})",
            "seed": cfg.seed,
            "rng": RNG_NAME,
        }
    meta["points"] = cloud.count
    return cloud, meta


def run_analysis(cfg: RunConfig) -> Tuple[Barcode, EntropyReport, str]:
    """Full pipeline; returns the analysis barcode, report, rendered text.

    The analysis barcode keeps only dimensions below max(max_dim, 1):
    in the top computed dimension no higher simplices exist to kill
    anything, so every class there is a cap artifact, not geometry.
    """
    cloud, meta = _resolve_cloud(cfg)
    m = distance_matrix(cloud)
    fc = build_rips(m, max_dim=cfg.max_dim, threshold=cfg.threshold, budget=cfg.budget)
    raw = compute_barcode(fc)
    capped = apply_essential_cap(raw, diameter=fc.diameter, threshold=fc.threshold)
    analysis = capped.restrict_to_dims(resolved_dimensions(cfg.max_dim))

    lengths = lengths_from_barcode(analysis, per_dim=cfg.per_dim)
    meta.update(
        scale="half-max-distance",
        threshold="full" if cfg.threshold == "full" else "%.12g" % cfg.threshold,
        cap="%.12g" % analysis.cap,
        max_dim=cfg.max_dim,
        budget=cfg.budget,
        zero_length_dropped=lengths.zero_dropped,
    )
    if cfg.per_dim is not None:
        meta["per_dim"] = cfg.per_dim
    report = classify(lengths, meta=meta)
    rendered = render_report(report, cfg.format)

    if cfg.barcode_out:
        _write_atomic(cfg.barcode_out, format_barcode(analysis))
    if cfg.complex_out:
        _write_atomic(cfg.complex_out, "\n".join(format_complex_lines(fc)) + "\n")
    if cfg.plot_out:
        _write_atomic(cfg.plot_out, _plot_lines(analysis, report))
    if cfg.report_out:
        _write_atomic(cfg.report_out, rendered)
    return analysis, report, rendered


def _plot_lines(b: Barcode, report: EntropyReport) -> str:
    """One '(birth, death, dim, flag)' line per interval, for plotting."""
    flags = {}
    for row in report.rows:
        if row.origin is not None:
            flags.setdefault(row.origin, []).append(row.feature)
    lines = ["# birth death dim feature"]
    for iv in b.intervals:
        key = (iv.dim, iv.birth, iv.death)
        queue = flags.get(key)
        feature = queue.pop(0) if queue else False
        lines.append(
            "%.17g %.17g %d %s" % (iv.birth, iv.death, iv.dim, "yes" if feature else "no")
        )
    return "\n".join(lines) + "\n"


def _fail(code: int, exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def _mapped_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except BudgetExceededError as exc:
            _fail(EXIT_BUDGET, exc)
        except DegenerateBarcodeError as exc:
            _fail(EXIT_DEGENERATE, exc)
        except (InputFormatError, OSError) as exc:
            _fail(EXIT_IO, exc)

    return wrapper


class ThresholdParam(click.ParamType):
    name = "threshold"

    def convert(self, value, param, ctx):
        if value == "full":
            return "full"
        try:
            t = float(value)
        except (TypeError, ValueError):
            self.fail(f"{value!r} is neither a number nor 'full'", param, ctx)
        if not (math.isfinite(t) and t > 0):
            self.fail("threshold must be positive and finite", param, ctx)
        return t


_SPEC_RE = re.compile(r"^\s*(circle|torus)\s*\(\s*([^()]*)\s*\)\s*$")


def _parse_sampler_spec(spec: str):
    m = _SPEC_RE.match(spec)
    if not m:
        raise click.UsageError(
            f"bad sampler spec {spec!r}; expected circle(count,radius) or torus(count,R,r)"
        )
    kind = m.group(1)
    parts = [p.strip() for p in m.group(2).split(",")]
    arity = 2 if kind == "circle" else 3
    if len(parts) != arity:
        raise click.UsageError(f"{kind} takes {arity} arguments, got {len(parts)}")
    try:
        count = int(parts[0])
        radii = tuple(float(p) for p in parts[1:])
    except ValueError as exc:
        raise click.UsageError(f"bad sampler spec {spec!r}: {exc}")
    return kind, count, radii


@click.group()
@click.version_option(package_name="persent")
def main():
    """Persistence barcodes and entropy-based feature/noise separation."""


@main.command()
@click.argument("spec")
@click.option("--seed", type=int, default=0, show_default=True, help="RNG seed.")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="CSV output path.")
@_mapped_errors
def sample(spec, seed, out):
    """Sample a point cloud; SPEC is circle(count,radius) or torus(count,R,r)."""
    kind, count, radii = _parse_sampler_spec(spec)
    try:
        if kind == "circle":
            cloud = sample_circle(count, radii[0], seed=seed)
        else:
            cloud = sample_torus(count, radii[0], radii[1], seed=seed)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _write_atomic(out, _points_csv(cloud))
    diam = diameter(distance_matrix(cloud))
    click.echo(f"{cloud.count} points, diameter {diam:.12g}")


def _analyze_options(fn):
    decorators = [
        click.option("--input", "input_path", type=click.Path(dir_okay=False),
                     help="Point CSV to analyze."),
        click.option("--circle", type=(int, float), default=None,
                     metavar="COUNT RADIUS", help="Sample a circle instead of reading a file."),
        click.option("--torus", type=(int, float, float), default=None,
                     metavar="COUNT R r", help="Sample a torus instead of reading a file."),
        click.option("--max-dim", type=int, default=None,
                     help="Top simplex dimension [default: 2; 3 with --torus]."),
        click.option("--threshold", type=ThresholdParam(), default="full",
                     show_default=True, help="Scale cutoff, or 'full' for the whole filtration."),
        click.option("--per-dim", type=int, default=None,
                     help="Classify intervals of this dimension only."),
        click.option("--seed", type=int, default=0, show_default=True, help="Sampler seed."),
        click.option("--format", "fmt", type=click.Choice(REPORT_FORMATS), default="table",
                     show_default=True, help="Report format."),
        click.option("--budget", type=int, default=DEFAULT_BUDGET, show_default=True,
                     help="Maximum simplex count."),
        click.option("--barcode-out", type=click.Path(dir_okay=False),
                     help="Write the capped barcode here."),
        click.option("--report-out", type=click.Path(dir_okay=False),
                     help="Write the report here instead of stdout."),
        click.option("--dump-plot", "plot_out", type=click.Path(dir_okay=False),
                     help="Write (birth, death, dim, flag) tuples for external plotting."),
        click.option("--dump-complex", "complex_out", type=click.Path(dir_okay=False),
                     help="Write the filtered complex as 'dim v0 ... vk value' lines."),
    ]
    for dec in reversed(decorators):
        fn = dec(fn)
    return fn


@main.command()
@_analyze_options
@_mapped_errors
def analyze(input_path, circle, torus, max_dim, threshold, per_dim, seed, fmt,
            budget, barcode_out, report_out, plot_out, complex_out):
    """Run the full pipeline: points -> filtration -> barcode -> report."""
    if max_dim is None:
        max_dim = 3 if torus is not None else 2
    try:
        cfg = RunConfig(
            input=input_path,
            circle=circle,
            torus=torus,
            max_dim=max_dim,
            threshold=threshold,
            per_dim=per_dim,
            seed=seed,
            format=fmt,
            budget=budget,
            barcode_out=barcode_out,
            report_out=report_out,
            plot_out=plot_out,
            complex_out=complex_out,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _, _, rendered = run_analysis(cfg)
    if not report_out:
        click.echo(rendered, nl=False)


@main.command("classify-barcode")
@click.argument("barcode_file", type=click.Path(dir_okay=False))
@click.option("--per-dim", type=int, default=None,
              help="Classify intervals of this dimension only.")
@click.option("--format", "fmt", type=click.Choice(REPORT_FORMATS), default="table",
              show_default=True, help="Report format.")
@click.option("--out", type=click.Path(dir_okay=False),
              help="Write the report here instead of stdout.")
@_mapped_errors
def classify_barcode(barcode_file, per_dim, fmt, out):
    """Score an existing barcode file without recomputing persistence."""
    with open(barcode_file, "r") as fh:
        text = fh.read()
    barcode = parse_barcode(text)
    try:
        lengths = lengths_from_barcode(barcode, per_dim=per_dim)
    except ValueError as exc:
        raise InputFormatError(str(exc))
    meta = {"source": barcode_file, "points": barcode.point_count}
    if barcode.cap is not None:
        meta["cap"] = "%.12g" % barcode.cap
    if per_dim is not None:
        meta["per_dim"] = per_dim
    meta["zero_length_dropped"] = lengths.zero_dropped
    report = classify(lengths, meta=meta)
    rendered = render_report(report, fmt)
    if out:
        _write_atomic(out, rendered)
    else:
        click.echo(rendered, nl=False)


if __name__ == "__main__":
    main()
