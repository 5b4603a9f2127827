"""Persistence barcodes by Z2 boundary-matrix reduction.

The boundary matrix is laid out in compressed sparse columns over the
filtration order and reduced left to right (see _kernels); each pairing
(creator, killer) becomes an interval [value(creator), value(killer))
in the creator's dimension, and unpaired creators become essential
classes. Zero-length pairs are retained here: most Rips pairings are
born and filled at the same value, so the barcode is array-backed and
interval objects are only materialized on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

from ._kernels import reduce_columns
from .errors import InputFormatError
from .filtration import FilteredComplex, Simplex


@dataclass(frozen=True)
class Interval:
    """One bar: a homology class alive on [birth, death).

    essential marks classes that never die in the computed filtration;
    their death is math.inf until apply_essential_cap substitutes the
    finite cap value.
    """

    dim: int
    birth: float
    death: float
    essential: bool = False

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be >= 0")
        if not 0 <= self.birth <= self.death:
            raise ValueError(f"need 0 <= birth <= death, got [{self.birth}, {self.death})")

    @property
    def length(self) -> float:
        return self.death - self.birth

    def contains(self, t: float) -> bool:
        """Whether the class is alive at scale t (birth <= t < death)."""
        return self.birth <= t < self.death


@dataclass(frozen=True, eq=False)
class Barcode:
    """All intervals of a filtration, stored as parallel arrays.

    deaths hold math.inf for essential classes until the cap is applied;
    cap records the substituted value (None before capping). Arrays are
    sorted by (dim, birth, death, essential) and read-only.
    """

    dims: np.ndarray  # int32
    births: np.ndarray  # float64
    deaths: np.ndarray  # float64
    essential: np.ndarray  # bool
    cap: Optional[float]
    point_count: int
    max_dim: Optional[int]
    threshold: Union[float, str, None]

    def __post_init__(self):
        n = len(self.dims)
        if not (len(self.births) == len(self.deaths) == len(self.essential) == n):
            raise ValueError("barcode arrays must have equal length")
        for arr in (self.dims, self.births, self.deaths, self.essential):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.dims)

    @property
    def intervals(self) -> Tuple[Interval, ...]:
        """Materialize Interval objects (use the arrays on huge barcodes)."""
        return tuple(
            Interval(int(d), float(b), float(e), essential=bool(s))
            for d, b, e, s in zip(self.dims, self.births, self.deaths, self.essential)
        )

    def dims_present(self) -> Tuple[int, ...]:
        return tuple(int(d) for d in np.unique(self.dims))

    def restrict_to_dims(self, dims: Iterable[int]) -> "Barcode":
        """Keep only intervals whose dimension is in dims."""
        wanted = np.isin(self.dims, np.fromiter(dims, np.int32))
        return replace(
            self,
            dims=self.dims[wanted],
            births=self.births[wanted],
            deaths=self.deaths[wanted],
            essential=self.essential[wanted],
        )


def resolved_dimensions(max_dim: int) -> range:
    """Dimensions whose intervals are geometrically meaningful.

    Killing a k-dimensional class takes a (k+1)-simplex, so in the top
    computed dimension nothing can die: every dim == max_dim interval is
    an artifact of the dimension cap, not of the point cloud. Analysis
    therefore covers dimensions below max_dim; a 0-dimensional complex
    still reports dimension 0.
    """
    return range(max(max_dim, 1))


def _vertex_counts(simplices: Tuple[Simplex, ...]) -> np.ndarray:
    return np.fromiter((len(v) for v in simplices), np.int8, len(simplices))


def compute_barcode(fc: FilteredComplex, backend: Optional[str] = None) -> Barcode:
    """Pair simplices by column reduction over Z2 and emit intervals.

    Each pairing (creator, killer) yields [value(creator), value(killer))
    in the creator's dimension; zero-length pairs are kept. Unpaired
    creators become essential intervals with infinite death.
    """
    simplices = fc.simplices
    values = fc.values
    m = len(simplices)
    nverts = _vertex_counts(simplices)

    facet_counts = nverts.astype(np.int64)
    facet_counts[facet_counts == 1] = 0
    col_ptr = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(facet_counts, out=col_ptr[1:])
    rows = np.empty(int(col_ptr[-1]), dtype=np.int32)

    # Resolve facet indices one dimension at a time so the lookup table
    # only ever spans a single dimension class.
    for k in range(2, int(nverts.max()) + 1):
        face_index = {simplices[j]: j for j in np.nonzero(nverts == k - 1)[0]}
        for j in np.nonzero(nverts == k)[0]:
            verts = simplices[j]
            facets = sorted(
                face_index[verts[:i] + verts[i + 1 :]] for i in range(k)
            )
            base = col_ptr[j]
            rows[base : base + k] = facets
        del face_index

    lows = reduce_columns(col_ptr, rows, backend=backend)

    killers = np.nonzero(lows >= 0)[0].astype(np.int64)
    creators = lows[killers].astype(np.int64)
    killed = np.zeros(m, dtype=bool)
    killed[creators] = True
    unpaired = np.nonzero((lows < 0) & ~killed)[0]

    dims = np.concatenate([nverts[creators], nverts[unpaired]]).astype(np.int32) - 1
    births = np.concatenate([values[creators], values[unpaired]])
    deaths = np.concatenate([values[killers], np.full(len(unpaired), np.inf)])
    essential = np.concatenate(
        [np.zeros(len(creators), dtype=bool), np.ones(len(unpaired), dtype=bool)]
    )
    order = np.lexsort((essential, deaths, births, dims))
    return Barcode(
        dims=np.ascontiguousarray(dims[order]),
        births=np.ascontiguousarray(births[order]),
        deaths=np.ascontiguousarray(deaths[order]),
        essential=np.ascontiguousarray(essential[order]),
        cap=None,
        point_count=fc.point_count,
        max_dim=fc.max_dim,
        threshold=fc.threshold,
    )


def apply_essential_cap(
    raw: Barcode, diameter: float, threshold: Union[float, str]
) -> Barcode:
    """Substitute finite deaths for essential classes.

    With threshold "full" every essential class dies at diameter/2 (the
    surviving component becomes [0, diameter/2)); with a numeric
    threshold every essential class dies at the threshold.
    """
    cap = diameter / 2.0 if threshold == "full" else float(threshold)
    return replace(
        raw,
        deaths=np.where(raw.essential, cap, raw.deaths),
        essential=raw.essential.copy(),
        cap=cap,
    )


def betti_numbers_at(fc: FilteredComplex, t: float) -> List[int]:
    """Betti numbers of the subcomplex at scale t, by independent ranks.

    Gaussian elimination over Z2 on the full boundary matrices of K(t);
    deliberately shares nothing with the persistence pairing so it can
    serve as an oracle for it.
    """
    by_dim: List[List[Tuple[int, ...]]] = [[] for _ in range(fc.max_dim + 1)]
    for verts, value in zip(fc.simplices, fc.values):
        if value <= t:
            by_dim[len(verts) - 1].append(verts)

    ranks = [0] * (fc.max_dim + 2)
    for k in range(1, fc.max_dim + 1):
        if not by_dim[k]:
            continue
        face_index = {verts: i for i, verts in enumerate(by_dim[k - 1])}
        columns = []
        for verts in by_dim[k]:
            col = 0
            for drop in range(len(verts)):
                face = verts[:drop] + verts[drop + 1 :]
                col |= 1 << face_index[face]
            columns.append(col)
        ranks[k] = _gf2_rank(columns)

    return [len(by_dim[k]) - ranks[k] - ranks[k + 1] for k in range(fc.max_dim + 1)]


def _gf2_rank(columns: List[int]) -> int:
    pivots = {}
    rank = 0
    for col in columns:
        while col:
            top = col.bit_length() - 1
            other = pivots.get(top)
            if other is None:
                pivots[top] = col
                rank += 1
                break
            col ^= other
    return rank


def format_barcode(b: Barcode) -> str:
    """Serialize: header, then one "dim birth death" line per interval.

    Essentiality is not persisted; a capped barcode round-trips its
    dimensions and endpoints exactly (17 significant digits).
    """
    threshold = b.threshold if b.threshold is not None else "full"
    header = "# cap=%s threshold=%s points=%d" % (
        "none" if b.cap is None else "%.17g" % b.cap,
        threshold if threshold == "full" else "%.17g" % float(threshold),
        b.point_count,
    )
    lines = [header]
    for d, birth, death in zip(b.dims, b.births, b.deaths):
        lines.append("%d %.17g %.17g" % (d, birth, death))
    return "\n".join(lines) + "\n"


def parse_barcode(text: str) -> Barcode:
    """Read the format written by format_barcode.

    Raises InputFormatError with a 1-based line number on malformed
    input. The parsed barcode has no max_dim (unknown from the file).
    """
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise InputFormatError("missing barcode header line", line=1)
    fields = {}
    for item in lines[0].lstrip("#").split():
        if "=" not in item:
            raise InputFormatError(f"bad header item {item!r}", line=1)
        key, _, value = item.partition("=")
        fields[key] = value
    for key in ("cap", "threshold", "points"):
        if key not in fields:
            raise InputFormatError(f"header is missing {key}", line=1)
    try:
        cap = None if fields["cap"] == "none" else float(fields["cap"])
        threshold: Union[float, str] = (
            "full" if fields["threshold"] == "full" else float(fields["threshold"])
        )
        point_count = int(fields["points"])
    except ValueError as exc:
        raise InputFormatError(f"bad header value: {exc}", line=1)

    dims, births, deaths = [], [], []
    for lineno, raw_line in enumerate(lines[1:], start=2):
        stripped = raw_line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise InputFormatError(
                f"expected 'dim birth death', got {len(parts)} fields", line=lineno
            )
        try:
            dim = int(parts[0])
            birth = float(parts[1])
            death = float(parts[2])
        except ValueError as exc:
            raise InputFormatError(str(exc), line=lineno)
        if dim < 0 or not 0 <= birth <= death:
            raise InputFormatError(
                f"invalid interval: dim={dim} [{birth}, {death})", line=lineno
            )
        dims.append(dim)
        births.append(birth)
        deaths.append(death)

    return Barcode(
        dims=np.asarray(dims, dtype=np.int32),
        births=np.asarray(births, dtype=np.float64),
        deaths=np.asarray(deaths, dtype=np.float64),
        essential=np.zeros(len(dims), dtype=bool),
        cap=cap,
        point_count=point_count,
        max_dim=None,
        threshold=threshold,
    )
