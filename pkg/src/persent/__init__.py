"""Persistence barcodes of point clouds and entropy-based feature separation.

Pipeline: sample or load points, build a Vietoris-Rips filtration, reduce
the boundary matrix over Z2 to get the barcode, then classify each
interval as topological feature or noise by persistent-entropy
increments. The reduction kernel has a compiled (Cython) and a pure
Python implementation; the fastest available is picked at import.
"""

from ._kernels import BACKENDS, HAVE_COMPILED
from .entropy import (
    EntropyReport,
    LengthList,
    ReportRow,
    classify,
    lengths_from_barcode,
    max_entropy_substitution,
    persistent_entropy,
    render_report,
    report_from_json,
    tail_entropy,
)
from .errors import (
    BudgetExceededError,
    DegenerateBarcodeError,
    InputFormatError,
    PersentError,
)
from .filtration import (
    DEFAULT_BUDGET,
    FilteredComplex,
    build_rips,
    format_complex_lines,
    simplex_stream,
)
from .persistence import (
    Barcode,
    Interval,
    apply_essential_cap,
    betti_numbers_at,
    compute_barcode,
    format_barcode,
    parse_barcode,
    resolved_dimensions,
)
from .pointcloud import (
    RNG_NAME,
    DistanceMatrix,
    PointCloud,
    diameter,
    distance_matrix,
    load_points,
    sample_circle,
    sample_torus,
)

__version__ = "0.1.0"

__all__ = [
    "BACKENDS",
    "HAVE_COMPILED",
    "DEFAULT_BUDGET",
    "RNG_NAME",
    "PersentError",
    "InputFormatError",
    "BudgetExceededError",
    "DegenerateBarcodeError",
    "PointCloud",
    "DistanceMatrix",
    "load_points",
    "sample_circle",
    "sample_torus",
    "distance_matrix",
    "diameter",
    "FilteredComplex",
    "build_rips",
    "simplex_stream",
    "format_complex_lines",
    "Interval",
    "Barcode",
    "resolved_dimensions",
    "compute_barcode",
    "apply_essential_cap",
    "betti_numbers_at",
    "format_barcode",
    "parse_barcode",
    "LengthList",
    "lengths_from_barcode",
    "persistent_entropy",
    "tail_entropy",
    "max_entropy_substitution",
    "classify",
    "ReportRow",
    "EntropyReport",
    "render_report",
    "report_from_json",
]
