"""Reading numeric columns from delimited text and writing reports."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .descriptives import SampleSummary
from .estimation import FitResult


class DataError(ValueError):
    """Unreadable or invalid input data."""


def fmt(v: float) -> str:
    """Float with 17 significant digits (round-trips through ``float``)."""
    return f"{float(v):.17g}"


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class DatasetFile:
    path: str
    column: str | int = 0
    values: tuple[float, ...] = field(default=(), repr=False)

    @classmethod
    def read(cls, path, column: str | int = 0) -> "DatasetFile":
        """Parse one column of a comma-separated file.

        A first row containing a non-numeric cell is taken as a header.
        ``column`` is a header name or a zero-based index; strings made of
        digits are treated as indices unless they match a header name.
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise DataError(f"cannot read {path}: {exc}") from None
        rows = [(i + 1, r) for i, r in enumerate(csv.reader(io.StringIO(text))) if any(c.strip() for c in r)]
        if not rows:
            raise DataError(f"{path}: no data rows")

        first = [c.strip() for c in rows[0][1]]
        has_header = not all(_is_number(c) for c in first if c)
        header = first if has_header else None
        idx = _resolve_column(column, header, path)
        if has_header:
            rows = rows[1:]

        values, bad = [], []
        for line_no, row in rows:
            cell = row[idx].strip() if idx < len(row) else ""
            try:
                v = float(cell)
            except ValueError:
                bad.append(line_no)
                continue
            if not math.isfinite(v):
                bad.append(line_no)
                continue
            values.append(v)
        if bad:
            shown = ", ".join(map(str, bad[:10])) + (" ..." if len(bad) > 10 else "")
            raise DataError(f"{path}: non-numeric value in column {column!r} at row(s) {shown}")
        if not values:
            raise DataError(f"{path}: column {column!r} is empty")
        return cls(str(path), column, tuple(values))


def _resolve_column(column, header, path) -> int:
    if isinstance(column, str):
        if header is not None and column in header:
            return header.index(column)
        if column.lstrip("-").isdigit():
            column = int(column)
        else:
            raise DataError(f"{path}: no column named {column!r}")
    if column < 0:
        raise DataError(f"{path}: column index must be nonnegative")
    if header is not None and column >= len(header):
        raise DataError(f"{path}: column index {column} out of range")
    return column


# fit reports ---------------------------------------------------------------

_CSV_FIELDS = (
    "model", "method", "n_params", "param_names", "estimate", "log_likelihood", "sum_log_spacings",
    "aic", "bic", "converged", "best_log_likelihood", "best_sum_log_spacings",
)


@dataclass
class FitReportDocument:
    """Fits of several models/methods on one sample, plus its summary."""

    results: list[FitResult]
    summary: SampleSummary | None = None
    source: str | None = None

    def best(self, column: str) -> int | None:
        """Index of the highest finite value of ``log_likelihood`` or ``sum_log_spacings``."""
        vals = [getattr(r, column) for r in self.results]
        finite = [(v, i) for i, v in enumerate(vals) if math.isfinite(v)]
        return max(finite)[1] if finite else None

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "summary": self.summary.to_dict() if self.summary else None,
            "results": [r.to_dict() for r in self.results],
            "best": {"log_likelihood": self.best("log_likelihood"),
                     "sum_log_spacings": self.best("sum_log_spacings")},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "FitReportDocument":
        doc = json.loads(text)
        summary = SampleSummary(**doc["summary"]) if doc.get("summary") else None
        return cls([FitResult.from_dict(r) for r in doc["results"]], summary, doc.get("source"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_CSV_FIELDS)
        best_ll, best_sls = self.best("log_likelihood"), self.best("sum_log_spacings")
        for i, r in enumerate(self.results):
            w.writerow([
                r.model, r.method, r.n_params, ";".join(r.param_names), ";".join(fmt(v) for v in r.estimate),
                fmt(r.log_likelihood), fmt(r.sum_log_spacings), fmt(r.aic), fmt(r.bic),
                str(r.converged).lower(), str(i == best_ll).lower(), str(i == best_sls).lower(),
            ])
        return buf.getvalue()


def write_text(text: str, output: str | None) -> None:
    """Write to ``output`` or to stdout when it is ``None`` or ``-``."""
    if output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise DataError(f"cannot write {output}: {exc}") from None
