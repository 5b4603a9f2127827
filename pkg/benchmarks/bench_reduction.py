"""Compare the compiled and pure-Python reduction kernels.

Builds Rips filtrations of seeded circle/torus samples, reduces the same
boundary matrix with each available backend, checks the pairings agree,
and prints a timing table.

Run:  python benchmarks/bench_reduction.py
"""
import time

import numpy as np

from persent import build_rips, distance_matrix, sample_circle, sample_torus
from persent._kernels import BACKENDS, reduce_columns
from persent.persistence import _vertex_counts


def boundary_csc(fc):
    simplices = fc.simplices
    nverts = _vertex_counts(simplices)
    facet_counts = nverts.astype(np.int64)
    facet_counts[facet_counts == 1] = 0
    col_ptr = np.zeros(len(simplices) + 1, dtype=np.int64)
    np.cumsum(facet_counts, out=col_ptr[1:])
    rows = np.empty(int(col_ptr[-1]), dtype=np.int32)
    for k in range(2, int(nverts.max()) + 1):
        face_index = {simplices[j]: j for j in np.nonzero(nverts == k - 1)[0]}
        for j in np.nonzero(nverts == k)[0]:
            verts = simplices[j]
            facets = sorted(face_index[verts[:i] + verts[i + 1 :]] for i in range(k))
            rows[col_ptr[j] : col_ptr[j] + k] = facets
    return col_ptr, rows


def cases():
    yield "circle n=60 dim<=3", sample_circle(60, 2.0, seed=1), 3, "full"
    yield "circle n=120 dim<=2", sample_circle(120, 2.0, seed=1), 2, "full"
    yield "torus n=90 dim<=3 t=1.0", sample_torus(90, 2.0, 1.0, seed=1), 3, 1.0
    yield "torus n=140 dim<=3 t=0.9", sample_torus(140, 2.0, 1.0, seed=1), 3, 0.9


def main():
    print(f"backends: {', '.join(BACKENDS)}")
    header = f"{'case':<28} {'simplices':>10}" + "".join(
        f" {b + ' (s)':>14}" for b in BACKENDS
    )
    print(header)
    print("-" * len(header))
    for name, cloud, max_dim, threshold in cases():
        fc = build_rips(distance_matrix(cloud), max_dim=max_dim, threshold=threshold)
        col_ptr, rows = boundary_csc(fc)
        timings = []
        results = []
        for backend in BACKENDS:
            start = time.perf_counter()
            lows = reduce_columns(col_ptr, rows, backend=backend)
            timings.append(time.perf_counter() - start)
            results.append(lows)
        for other in results[1:]:
            if not np.array_equal(results[0], other):
                raise SystemExit(f"backends disagree on {name}")
        print(
            f"{name:<28} {len(fc):>10}"
            + "".join(f" {t:>14.4f}" for t in timings)
        )
    if len(BACKENDS) > 1:
        print("all backends produced identical pairings")


if __name__ == "__main__":
    main()
