"""Predicted defectivity of ``Sec_h(T(m, V_{2,d}))`` and grid sweeps.

The prediction encodes the known case lists: a defective list in each of the
two regimes split by comparing ``C(d+2, 2)`` with the uncapped expected
dimension plus one, and a non-defective list valid for ``m <= 18``.  All
rational bounds are compared exactly.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .combinatorics import binomial
from .join import DEFAULT_TRIALS, DimensionReport, JoinSpec, join_dim
from .linalg import DEFAULT_PRIME

__all__ = [
    "MAX_CLASSIFIED_ORDER",
    "REPORT_COLUMNS",
    "PredictedStatus",
    "SweepConfig",
    "SweepRow",
    "regimes",
    "predicted_status",
    "cell_seed",
    "evaluate_cell",
    "sweep",
    "emit_report",
    "parse_report",
]

MAX_CLASSIFIED_ORDER = 18

REPORT_COLUMNS = (
    "d", "m", "h", "ambient", "expdim", "dim", "defect",
    "predicted", "agreement", "prime", "seed", "trials",
)

# (h, lower, upper) with each bound given as (a, b, c) meaning (a*m + b) / c
_FORMER_DEFECTIVE = {
    "a": (1, (1, 2, 1), (2, 2, 1)),
    "b": (2, (3, 6, 2), (2, 2, 1)),
    "c": (4, (2, 4, 1), (5, 8, 2)),
    "d": (5, (12, 24, 5), (5, 8, 2)),
    "e": (6, (21, 42, 8), (8, 14, 3)),
    "f": (7, (48, 96, 17), (17, 32, 6)),
}
_LATTER_DEFECTIVE = {
    "a": (1, (1, 1, 1), (2, 0, 1)),
    "b": (2, (3, 3, 2), (2, 0, 1)),
    "c": (4, (2, 2, 1), (5, 3, 2)),
    "d": (5, (12, 12, 5), (5, 3, 2)),
    "e": (6, (21, 21, 8), (8, 6, 3)),
    "f": (7, (48, 48, 17), (17, 15, 6)),
}
# non-defective when d < lower or d > upper
_NONDEFECTIVE = {
    "a": (1, (1, 1, 1), (2, 2, 1)),
    "b": (2, (3, 3, 2), (2, 2, 1)),
    "c": (4, (2, 2, 1), (5, 8, 2)),
    "d": (5, (12, 12, 5), (5, 8, 2)),
    "e": (6, (21, 21, 8), (8, 14, 3)),
    "f": (7, (48, 48, 17), (17, 32, 6)),
}


def _bound(coeffs: tuple[int, int, int], m: int) -> Fraction:
    a, b, c = coeffs
    return Fraction(a * m + b, c)


@dataclass(frozen=True)
class PredictedStatus:
    """``kind`` is ``"defective"``, ``"nondefective"`` or ``"unclassified"``."""

    kind: str
    case: str | None = None
    regime: str | None = None
    m_in_range: bool = True

    def __str__(self):
        if self.kind == "defective":
            return f"defective:{self.regime}:{self.case}"
        if self.kind == "nondefective":
            return f"nondefective:{self.case}"
        return self.kind

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> PredictedStatus:
        parts = text.split(":")
        in_range = m is None or m <= MAX_CLASSIFIED_ORDER
        if parts[0] == "defective" and len(parts) == 3:
            return cls("defective", parts[2], parts[1], in_range)
        if parts[0] == "nondefective" and len(parts) == 2:
            return cls("nondefective", parts[1], None, in_range)
        if text in ("unclassified", "error"):
            return cls(text, m_in_range=in_range)
        raise ValueError(f"unrecognized status {text!r}")


def regimes(d: int, m: int, h: int) -> tuple[bool, bool]:
    """``(former, latter)``: which side of the parameter-count comparison holds.

    Both are true exactly at equality.
    """
    lhs = binomial(d + 2, 2)
    rhs = (h + 1) * (2 + binomial(m + 2, 2))
    return lhs <= rhs, lhs >= rhs


def predicted_status(d: int, m: int, h: int) -> PredictedStatus:
    for name, value in (("d", d), ("m", m), ("h", h)):
        if value < 1:
            raise ValueError(f"{name} must be at least 1, got {value}")
    in_range = m <= MAX_CLASSIFIED_ORDER
    former, latter = regimes(d, m, h)
    for regime, active, table in (
        ("former", former, _FORMER_DEFECTIVE),
        ("latter", latter, _LATTER_DEFECTIVE),
    ):
        if not active:
            continue
        for case, (h_case, lo, hi) in table.items():
            if h == h_case and _bound(lo, m) <= d <= _bound(hi, m):
                return PredictedStatus("defective", case, regime, in_range)

    if in_range:
        if h == 3 or h >= 8:
            return PredictedStatus("nondefective", "g", None, in_range)
        for case, (h_case, lo, hi) in _NONDEFECTIVE.items():
            if h == h_case and (d < _bound(lo, m) or d > _bound(hi, m)):
                return PredictedStatus("nondefective", case, None, in_range)
    return PredictedStatus("unclassified", m_in_range=in_range)


@dataclass(frozen=True)
class SweepConfig:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    trials: int = DEFAULT_TRIALS

    def to_dict(self) -> dict:
        return {"prime": self.prime, "seed": self.seed, "trials": self.trials}


@dataclass(frozen=True)
class SweepRow:
    d: int
    m: int
    h: int
    predicted: PredictedStatus
    report: DimensionReport | None
    agreement: str
    prime: int
    seed: int
    trials: int
    error: str | None = None

    def to_record(self) -> dict:
        rep = self.report
        return {
            "d": self.d,
            "m": self.m,
            "h": self.h,
            "ambient": rep.spec.r if rep else None,
            "expdim": rep.expdim if rep else None,
            "dim": rep.dim if rep else None,
            "defect": rep.defect if rep else None,
            "predicted": str(self.predicted),
            "agreement": self.agreement,
            "prime": self.prime,
            "seed": self.seed,
            "trials": self.trials,
        }


def cell_seed(seed: int, d: int, m: int, h: int) -> int:
    """Per-cell seed, independent of the order cells are evaluated in."""
    return int(np.random.SeedSequence([seed, d, m, h]).generate_state(1)[0])


def _agreement(predicted: PredictedStatus, report: DimensionReport) -> str:
    if predicted.kind == "defective":
        return "match" if report.defect > 0 else "mismatch"
    if predicted.kind == "nondefective":
        return "match" if report.defect == 0 else "mismatch"
    return "not_applicable"


def evaluate_cell(d: int, m: int, h: int, config: SweepConfig = SweepConfig()) -> SweepRow:
    """Predict and compute one ``(d, m, h)`` cell; domain errors become an error row."""
    try:
        predicted = predicted_status(d, m, h)
        report = join_dim(
            JoinSpec.secant(d, m, h),
            prime=config.prime,
            seed=cell_seed(config.seed, d, m, h),
            trials=config.trials,
        )
    except ValueError as exc:
        return SweepRow(
            d, m, h, PredictedStatus("error"), None, "error",
            config.prime, config.seed, config.trials, error=str(exc),
        )
    return SweepRow(
        d, m, h, predicted, report, _agreement(predicted, report),
        config.prime, config.seed, config.trials,
    )


def _evaluate_packed(args):
    return evaluate_cell(*args)


def sweep(
    d_range: Iterable[int],
    m_range: Iterable[int],
    h_range: Iterable[int],
    config: SweepConfig = SweepConfig(),
    *,
    m_max_d: bool = False,
    jobs: int = 1,
) -> list[SweepRow]:
    """Evaluate every cell of the grid, rows in lexicographic ``(d, m, h)`` order.

    With ``m_max_d`` the order is capped at the degree, giving the triangular
    grid ``1 <= m <= min(d, max(m_range))``.
    """
    ds, ms, hs = sorted(set(d_range)), sorted(set(m_range)), sorted(set(h_range))
    if not (ds and ms and hs):
        raise ValueError("sweep ranges must be non-empty")
    cells = [
        (d, m, h, config)
        for d in ds
        for m in ms
        if not (m_max_d and m > d)
        for h in hs
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_evaluate_packed, cells, chunksize=8))
    return [evaluate_cell(*cell) for cell in cells]


def _fmt(value) -> str:
    return "" if value is None else str(value)


def emit_report(
    rows: Sequence[SweepRow], fmt: str = "tsv", config: SweepConfig | None = None
) -> str:
    """Serialize sweep rows as TSV (header line plus one line per row) or JSON."""
    if fmt == "tsv":
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for row in rows:
            rec = row.to_record()
            writer.writerow([_fmt(rec[c]) for c in REPORT_COLUMNS])
        return buf.getvalue()
    if fmt == "json":
        if config is None and rows:
            config = SweepConfig(rows[0].prime, rows[0].seed, rows[0].trials)
        header = {"tool": "terracini", "version": __version__}
        if config is not None:
            header["config"] = config.to_dict()
        return json.dumps(
            {"header": header, "rows": [row.to_record() for row in rows]}, indent=2
        ) + "\n"
    raise ValueError(f"unknown report format {fmt!r}; expected 'tsv' or 'json'")


_INT_COLUMNS = {"d", "m", "h", "ambient", "expdim", "dim", "defect", "prime", "seed", "trials"}


def parse_report(text: str, fmt: str = "tsv") -> list[dict]:
    """Inverse of :func:`emit_report`, returning one record per row."""
    if fmt == "json":
        return json.loads(text)["rows"]
    if fmt != "tsv":
        raise ValueError(f"unknown report format {fmt!r}; expected 'tsv' or 'json'")
    reader = csv.DictReader(io.StringIO(text), delimiter="\t")
    out = []
    for raw in reader:
        out.append({
            k: (None if v == "" else int(v)) if k in _INT_COLUMNS else v
            for k, v in raw.items()
        })
    return out
