"""Persistent entropy and the feature/noise classifier.

The entropy of a barcode is the Shannon entropy of its normalized
interval lengths, in nats. Replacing the i longest intervals by the
common value (tail sum)/exp(tail entropy) maximizes entropy among all
lists sharing that tail; the classifier measures how much each such
replacement moves the entropy toward its ceiling log(n) and flags the
interval as a feature when the relative increment clears (i-1)/n.

Sums are accumulated with math.fsum over the stored order, which is
exactly rounded and therefore bitwise deterministic.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

from .errors import DegenerateBarcodeError
from .persistence import Barcode, Interval

# Below this gap between log(n) and the entropy, all lengths are equal
# to working precision and the relative increment is undefined.
DEGENERATE_GAP = 1e-12


@dataclass(frozen=True)
class LengthList:
    """Positive interval lengths, sorted non-increasing, with total.

    origins, when present, maps each length back to its source interval;
    zero_dropped counts zero-length intervals excluded on the way in.
    """

    lengths: Tuple[float, ...]
    total: float
    origins: Optional[Tuple[Interval, ...]] = None
    zero_dropped: int = 0

    def __post_init__(self):
        if not self.lengths:
            raise ValueError("length list must be non-empty")
        for a, b in zip(self.lengths, self.lengths[1:]):
            if b > a:
                raise ValueError("lengths must be sorted non-increasing")
        if self.lengths[-1] <= 0:
            raise ValueError("lengths must be strictly positive")
        if not all(map(math.isfinite, self.lengths)):
            raise ValueError("lengths must be finite")
        if self.origins is not None and len(self.origins) != len(self.lengths):
            raise ValueError("origins must match lengths")
        expected = math.fsum(self.lengths)
        if abs(self.total - expected) > 1e-12 * max(expected, 1.0):
            raise ValueError("total does not match the sum of lengths")

    def __len__(self) -> int:
        return len(self.lengths)

    @classmethod
    def from_lengths(cls, values: Iterable[float]) -> "LengthList":
        ordered = tuple(sorted(values, reverse=True))
        return cls(lengths=ordered, total=math.fsum(ordered))


def lengths_from_barcode(b: Barcode, per_dim: Optional[int] = None) -> LengthList:
    """Extract positive interval lengths from a capped barcode.

    Zero-length intervals are dropped (their count is recorded); an
    empty result raises DegenerateBarcodeError. Ties in length are
    ordered by (dim, birth, death) so reports are deterministic.
    """
    selected = []
    zero_dropped = 0
    for iv in b.intervals:
        if per_dim is not None and iv.dim != per_dim:
            continue
        if math.isinf(iv.death):
            raise ValueError(
                "barcode has uncapped essential intervals; apply_essential_cap first"
            )
        if iv.length == 0.0:
            zero_dropped += 1
        else:
            selected.append(iv)
    if not selected:
        raise DegenerateBarcodeError(
            "no positive-length intervals"
            + (f" in dimension {per_dim}" if per_dim is not None else "")
        )
    selected.sort(key=lambda iv: (-iv.length, iv.dim, iv.birth, iv.death))
    lengths = tuple(iv.length for iv in selected)
    return LengthList(
        lengths=lengths,
        total=math.fsum(lengths),
        origins=tuple(selected),
        zero_dropped=zero_dropped,
    )


def persistent_entropy(lengths: Union[LengthList, Sequence[float]]) -> float:
    """Shannon entropy of the normalized lengths, natural log.

    Accepts a LengthList or any sequence of positive values (substituted
    lists are not sorted). The value lies in [0, log(n)].
    """
    values = lengths.lengths if isinstance(lengths, LengthList) else tuple(lengths)
    if not values:
        raise ValueError("cannot take the entropy of an empty list")
    total = math.fsum(values)
    if total <= 0:
        raise ValueError("lengths must be positive")
    terms = []
    for v in values:
        p = v / total
        terms.append(-(p * math.log(p)))
    return math.fsum(terms) + 0.0  # normalize -0.0 for the singleton case


def tail_entropy(L: LengthList, i: int) -> Tuple[float, float]:
    """Sum and entropy of the suffix starting at 1-based position i."""
    n = len(L)
    if not 1 <= i <= n:
        raise IndexError(f"tail start {i} out of range 1..{n}")
    suffix = L.lengths[i - 1 :]
    return math.fsum(suffix), persistent_entropy(suffix)


def max_entropy_substitution(
    L: Union[LengthList, Sequence[float]], i: int
) -> Tuple[float, ...]:
    """Replace the i longest entries by the entropy-maximizing value.

    For 1 <= i <= n-1 the common value is (tail sum)/exp(tail entropy)
    with the tail starting at position i+1; the result maximizes entropy
    among all lists sharing that tail. i = 0 returns the list unchanged;
    i = n returns the uniform list with the same total. The result is
    generally not sorted, so it is returned as a plain tuple.
    """
    if not isinstance(L, LengthList):
        L = LengthList.from_lengths(L)
    n = len(L)
    if not 0 <= i <= n:
        raise IndexError(f"replacement count {i} out of range 0..{n}")
    if i == 0:
        return L.lengths
    if i == n:
        return (L.total / n,) * n
    tail_sum, tail_ent = tail_entropy(L, i + 1)
    c = tail_sum / math.exp(tail_ent)
    return (c,) * i + L.lengths[i:]


@dataclass(frozen=True)
class ReportRow:
    """One classified interval, in the column order of the text report."""

    index: int  # 1-based rank by decreasing length
    length: float
    length_fraction: float  # length / total
    substitute: float  # replacement value used at this step
    substitute_fraction: float  # substitute / total of the substituted list
    entropy_fraction: float  # entropy after substitution / log(n)
    rel_increment: float  # entropy step / (log(n) - initial entropy)
    feature: bool
    origin: Optional[Tuple[int, float, float]] = None  # (dim, birth, death)


@dataclass(frozen=True)
class EntropyReport:
    """Classification of every interval of a barcode."""

    rows: Tuple[ReportRow, ...]
    interval_count: int
    entropy: float
    log_count: float
    meta: Dict[str, object] = field(default_factory=dict)

    def feature_rows(self) -> Tuple[ReportRow, ...]:
        return tuple(r for r in self.rows if r.feature)


def classify(
    L: Union[LengthList, Sequence[float]],
    meta: Optional[Dict[str, object]] = None,
) -> EntropyReport:
    """Flag each interval as feature or noise by entropy increments.

    Step i replaces the i longest intervals with their maximum-entropy
    substitute and measures the entropy gain relative to the remaining
    headroom log(n) - H; interval i is a feature when that relative
    increment exceeds (i-1)/n.

    Degenerate inputs are defined, not errors: a single interval is a
    feature by convention, and an all-equal list (no headroom) marks
    every interval as noise; both warn and note it in the metadata.
    """
    if not isinstance(L, LengthList):
        L = LengthList.from_lengths(L)
    n = len(L)
    h_initial = persistent_entropy(L)
    log_n = math.log(n)
    headroom = log_n - h_initial

    report_meta: Dict[str, object] = dict(meta) if meta else {}
    if L.zero_dropped:
        report_meta.setdefault("zero_length_dropped", L.zero_dropped)

    degenerate = headroom < DEGENERATE_GAP
    if degenerate:
        if n == 1:
            note = "single interval: flagged as a feature by convention"
        else:
            note = "all lengths equal: no separation signal, everything is noise"
        warnings.warn(note)
        report_meta["degenerate"] = note

    rows = []
    prev_q = h_initial
    for i in range(1, n + 1):
        substituted = max_entropy_substitution(L, i)
        q = persistent_entropy(substituted)
        sub_total = math.fsum(substituted)
        if degenerate:
            rel = 0.0
            feature = n == 1
        else:
            rel = (q - prev_q) / headroom
            feature = rel > (i - 1) / n
        origin = None
        if L.origins is not None:
            iv = L.origins[i - 1]
            origin = (iv.dim, iv.birth, iv.death)
        rows.append(
            ReportRow(
                index=i,
                length=L.lengths[i - 1],
                length_fraction=L.lengths[i - 1] / L.total,
                substitute=substituted[0],
                substitute_fraction=substituted[0] / sub_total,
                entropy_fraction=q / log_n if n > 1 else 1.0,
                rel_increment=rel,
                feature=feature,
                origin=origin,
            )
        )
        prev_q = q

    return EntropyReport(
        rows=tuple(rows),
        interval_count=n,
        entropy=h_initial,
        log_count=log_n,
        meta=report_meta,
    )


REPORT_FORMATS = ("table", "csv", "json")

_COLUMNS = (
    "i",
    "length",
    "length_fraction",
    "substitute",
    "substitute_fraction",
    "entropy_fraction",
    "rel_increment",
    "feature",
)


def render_report(r: EntropyReport, format: str = "table") -> str:
    """Serialize a report; columns follow the classifier's step order."""
    if format == "table":
        return _render_table(r)
    if format == "csv":
        return _render_csv(r)
    if format == "json":
        return report_to_json(r)
    raise ValueError(f"unknown report format {format!r}")


def _origin_columns(r: EntropyReport) -> bool:
    return any(row.origin is not None for row in r.rows)


def _render_table(r: EntropyReport) -> str:
    lines = [
        f"# intervals={r.interval_count} entropy={r.entropy:.12g} "
        f"log_n={r.log_count:.12g}"
    ]
    for key, value in r.meta.items():
        lines.append(f"# {key}={value}")
    with_origin = _origin_columns(r)
    header = f"{'i':>4} {'length':>14} {'len/total':>12} {'substitute':>14} " \
             f"{'subst/total':>12} {'H/log(n)':>12} {'rel_incr':>12} {'feature':>7}"
    if with_origin:
        header += f" {'dim':>4} {'birth':>14} {'death':>14}"
    lines.append(header)
    for row in r.rows:
        text = (
            f"{row.index:>4} {row.length:>14.6g} {row.length_fraction:>12.6g} "
            f"{row.substitute:>14.6g} {row.substitute_fraction:>12.6g} "
            f"{row.entropy_fraction:>12.6g} {row.rel_increment:>12.6g} "
            f"{'yes' if row.feature else 'no':>7}"
        )
        if with_origin:
            if row.origin is not None:
                dim, birth, death = row.origin
                text += f" {dim:>4} {birth:>14.6g} {death:>14.6g}"
            else:
                text += f" {'-':>4} {'-':>14} {'-':>14}"
        lines.append(text)
    return "\n".join(lines) + "\n"


def _render_csv(r: EntropyReport) -> str:
    with_origin = _origin_columns(r)
    columns = _COLUMNS + (("dim", "birth", "death") if with_origin else ())
    lines = [",".join(columns)]
    for row in r.rows:
        cells = [
            str(row.index),
            f"{row.length:.12g}",
            f"{row.length_fraction:.12g}",
            f"{row.substitute:.12g}",
            f"{row.substitute_fraction:.12g}",
            f"{row.entropy_fraction:.12g}",
            f"{row.rel_increment:.12g}",
            "yes" if row.feature else "no",
        ]
        if with_origin:
            if row.origin is not None:
                dim, birth, death = row.origin
                cells += [str(dim), f"{birth:.12g}", f"{death:.12g}"]
            else:
                cells += ["", "", ""]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def report_to_json(r: EntropyReport) -> str:
    payload = {
        "interval_count": r.interval_count,
        "entropy": r.entropy,
        "log_count": r.log_count,
        "meta": r.meta,
        "rows": [
            {
                "index": row.index,
                "length": row.length,
                "length_fraction": row.length_fraction,
                "substitute": row.substitute,
                "substitute_fraction": row.substitute_fraction,
                "entropy_fraction": row.entropy_fraction,
                "rel_increment": row.rel_increment,
                "feature": row.feature,
                "origin": None
                if row.origin is None
                else {
                    "dim": row.origin[0],
                    "birth": row.origin[1],
                    "death": row.origin[2],
                },
            }
            for row in r.rows
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def report_from_json(text: str) -> EntropyReport:
    payload = json.loads(text)
    rows = tuple(
        ReportRow(
            index=item["index"],
            length=item["length"],
            length_fraction=item["length_fraction"],
            substitute=item["substitute"],
            substitute_fraction=item["substitute_fraction"],
            entropy_fraction=item["entropy_fraction"],
            rel_increment=item["rel_increment"],
            feature=item["feature"],
            origin=None
            if item["origin"] is None
            else (
                item["origin"]["dim"],
                item["origin"]["birth"],
                item["origin"]["death"],
            ),
        )
        for item in payload["rows"]
    )
    return EntropyReport(
        rows=rows,
        interval_count=payload["interval_count"],
        entropy=payload["entropy"],
        log_count=payload["log_count"],
        meta=payload["meta"],
    )
