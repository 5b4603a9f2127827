"""Vietoris-Rips filtration construction.

A simplex enters the filtration at half its largest pairwise distance
(radius scale): two balls of radius t intersect exactly when the centers
are within 2t. Vertices enter at 0. The complex is the flag complex of
the thresholded edge graph, built by lower-neighbor clique expansion.

Vertex tuples reference a shared index table and filtration values are
kept in one float64 array, so multi-million-simplex complexes stay
within desk-machine memory.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple, Union

import numpy as np

from .errors import BudgetExceededError
from .pointcloud import DistanceMatrix
from .pointcloud import diameter as _diameter

DEFAULT_BUDGET = 10_000_000

Simplex = Tuple[int, ...]  # strictly increasing vertex indices


@dataclass(frozen=True)
class FilteredComplex:
    """Simplices with filtration values in a fixed compatible order.

    simplices[i] is the vertex tuple of the i-th simplex and values[i]
    its filtration value. Invariants: closed under faces; value(face) <=
    value(coface); sorted by (value, dimension, vertex tuple), which
    places every simplex after all of its faces.
    """

    simplices: Tuple[Simplex, ...]
    values: np.ndarray  # float64, read-only, parallel to simplices
    point_count: int
    max_dim: int
    threshold: Union[float, str]  # positive value, or "full"
    diameter: float

    def __len__(self) -> int:
        return len(self.simplices)

    @property
    def cap_value(self) -> float:
        """Death substituted for classes alive at the end of the filtration."""
        if self.threshold == "full":
            return self.diameter / 2.0
        return float(self.threshold)

    def validate(self) -> None:
        """Check closure, monotonicity, and ordering. O(size), test use."""
        value_of = {}
        prev_key = None
        for verts, value in simplex_stream(self):
            if list(verts) != sorted(set(verts)):
                raise AssertionError(f"vertices not strictly increasing: {verts}")
            if verts[-1] >= self.point_count or verts[0] < 0:
                raise AssertionError(f"vertex out of range: {verts}")
            key = (value, len(verts), verts)
            if prev_key is not None and key < prev_key:
                raise AssertionError(f"simplices out of order at {verts}")
            prev_key = key
            for k in range(len(verts)):
                face = verts[:k] + verts[k + 1 :]
                if len(face) == 0:
                    continue
                if face not in value_of:
                    raise AssertionError(f"face {face} of {verts} missing")
                if value_of[face] > value:
                    raise AssertionError(f"value drops from face {face} to {verts}")
            value_of[verts] = value


def build_rips(
    m: DistanceMatrix,
    max_dim: int,
    threshold: Union[float, str] = "full",
    budget: int = DEFAULT_BUDGET,
) -> FilteredComplex:
    """Build the Rips filtration up to a dimension cap and value threshold.

    Contains every simplex of dimension <= max_dim whose filtration value
    is <= the effective threshold ("full" keeps everything: no value can
    exceed half the diameter). Raises BudgetExceededError if the simplex
    count would exceed ``budget``.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    diam = _diameter(m)
    if threshold == "full":
        vmax = diam / 2.0
    else:
        vmax = float(threshold)
        if vmax <= 0:
            raise ValueError("threshold must be positive or 'full'")

    n = m.size
    ids = tuple(range(n))  # shared vertex objects for every simplex tuple
    # Edge filtration values; /2 is exact in floating point.
    half = (m.values / 2.0).tolist()

    def over_budget(count):
        return BudgetExceededError(
            f"{count} simplices exceed budget {budget}; "
            "lower the threshold or max_dim, or raise the budget"
        )

    # store holds (value, vertex_count, vertices): tuples compare in
    # exactly the (value, dim, lexicographic) contract order.
    store = [(0.0, 1, (ids[v],)) for v in range(n)]
    if len(store) > budget:
        raise over_budget(len(store))

    if max_dim >= 1:
        # lower[v]: bitmask of u < v within the edge threshold
        lower = [0] * n
        for v in range(n):
            row = half[v]
            bits = 0
            for u in range(v):
                if row[u] <= vmax:
                    bits |= 1 << u
            lower[v] = bits

        # frontier entries: (vertices, value, candidate bitmask)
        frontier = []
        edges_only = max_dim == 1
        for v in range(n):
            bits = lower[v]
            vo = ids[v]
            row = half[v]
            while bits:
                lsb = bits & -bits
                u = lsb.bit_length() - 1
                bits ^= lsb
                store.append((row[u], 2, (ids[u], vo)))
                if not edges_only:
                    frontier.append(((ids[u], vo), row[u], lower[u] & lower[v]))
            if len(store) > budget:
                raise over_budget(len(store))

        for dim in range(2, max_dim + 1):
            last = dim == max_dim
            new_frontier = []
            nverts = dim + 1
            for verts, value, cands in frontier:
                bits = cands
                while bits:
                    lsb = bits & -bits
                    u = lsb.bit_length() - 1
                    bits ^= lsb
                    row = half[u]
                    val = value
                    for w in verts:
                        duw = row[w]
                        if duw > val:
                            val = duw
                    # every edge of the clique is within vmax, so val is too
                    nv = (ids[u],) + verts
                    store.append((val, nverts, nv))
                    if not last:
                        new_frontier.append((nv, val, cands & lower[u]))
                if len(store) > budget:
                    raise over_budget(len(store))
            if not new_frontier:
                break
            frontier = new_frontier

    store.sort()
    simplices = tuple(entry[2] for entry in store)
    values = np.fromiter((entry[0] for entry in store), np.float64, len(store))
    values.setflags(write=False)
    del store
    return FilteredComplex(
        simplices=simplices,
        values=values,
        point_count=n,
        max_dim=max_dim,
        threshold=threshold,
        diameter=diam,
    )


def simplex_stream(fc: FilteredComplex) -> Iterator[Tuple[Simplex, float]]:
    """Yield (simplex, value) in filtration order, faces before cofaces."""
    for verts, value in zip(fc.simplices, fc.values):
        yield verts, float(value)


def format_complex_lines(fc: FilteredComplex) -> Iterator[str]:
    """Dump format: one line per simplex, "dim v0 v1 ... vk value"."""
    for verts, value in simplex_stream(fc):
        yield f"{len(verts) - 1} {' '.join(str(v) for v in verts)} {value:.17g}"
