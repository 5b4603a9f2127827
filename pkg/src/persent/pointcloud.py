"""Point-cloud ingestion, synthetic samplers, and pairwise distances.

Sampling uses numpy's seeded PCG64 generator so clouds are reproducible
across platforms; the generator name is recorded in report metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Union

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import InputFormatError

RNG_NAME = "numpy-pcg64"


@dataclass(frozen=True)
class PointCloud:
    """A finite set of points in n-dimensional Euclidean space."""

    points: np.ndarray  # shape (count, dim), float64

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise ValueError("point cloud must be a non-empty 2-D array")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point cloud contains non-finite coordinates")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def count(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric matrix of pairwise Euclidean distances, zero diagonal."""

    values: np.ndarray  # shape (size, size), float64

    def __post_init__(self):
        m = np.asarray(self.values, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError("distance matrix must be square and non-empty")
        if not np.all(np.isfinite(m)):
            raise ValueError("distance matrix contains non-finite entries")
        if np.any(m < 0):
            raise ValueError("distance matrix contains negative entries")
        if np.any(np.diagonal(m) != 0):
            raise ValueError("distance matrix diagonal must be zero")
        if not np.array_equal(m, m.T):
            raise ValueError("distance matrix must be symmetric")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "values", m)

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def entry(self, i: int, j: int) -> float:
        return float(self.values[i, j])


def load_points(source: Union[str, Path, IO], format: str = "csv") -> PointCloud:
    """Parse a point file into a PointCloud.

    Parameters
    ----------
    source : path or file object
        Rows of equally many numeric fields. Lines starting with '#' are
        skipped; line numbers in errors count every physical line.
    format : {"csv", "whitespace"}
        Field delimiter convention.

    Raises
    ------
    InputFormatError
        On ragged rows, non-numeric fields, or empty input, with the
        offending 1-based line number.
    """
    if format not in ("csv", "whitespace"):
        raise ValueError(f"unknown point format {format!r}")
    text = _read_text(source)

    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split(",") if format == "csv" else stripped.split()
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise InputFormatError(
                f"ragged row: expected {width} fields, got {len(fields)}",
                line=lineno,
            )
        try:
            rows.append([float(f) for f in fields])
        except ValueError as exc:
            raise InputFormatError(f"non-numeric field: {exc}", line=lineno) from None
    if not rows:
        raise InputFormatError("no data rows in input")
    return PointCloud(np.array(rows, dtype=np.float64))


def _read_text(source) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text()
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data


def sample_circle(count: int, radius: float, seed: int) -> PointCloud:
    """Sample points uniformly in angle from a circle of the given radius."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if radius <= 0:
        raise ValueError("radius must be positive")
    rng = np.random.default_rng(seed)
    theta = 2.0 * math.pi * rng.random(count)
    pts = np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])
    return PointCloud(pts)


def sample_torus(
    count: int, major_radius: float, minor_radius: float, seed: int
) -> PointCloud:
    """Sample a torus in R^3, uniform in both angular parameters.

    The tube angle is drawn after the axial angle from a single seeded
    stream, so identical inputs reproduce bit-identical clouds.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if not (major_radius > minor_radius > 0):
        raise ValueError("need major_radius > minor_radius > 0")
    rng = np.random.default_rng(seed)
    theta = 2.0 * math.pi * rng.random(count)
    phi = 2.0 * math.pi * rng.random(count)
    ring = major_radius + minor_radius * np.cos(phi)
    pts = np.column_stack(
        [ring * np.cos(theta), ring * np.sin(theta), minor_radius * np.sin(phi)]
    )
    return PointCloud(pts)


def distance_matrix(cloud: PointCloud) -> DistanceMatrix:
    """Pairwise Euclidean distances; symmetric by construction."""
    if cloud.count == 1:
        return DistanceMatrix(np.zeros((1, 1)))
    condensed = pdist(cloud.points)
    return DistanceMatrix(squareform(condensed))


def diameter(m: DistanceMatrix) -> float:
    """Largest pairwise distance."""
    return float(np.max(m.values))
