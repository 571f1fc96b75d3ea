"""Tabular data loading, field-type inference, and per-field statistics.

A Dataset is immutable after construction: loaders build it once and every
downstream module (oracles, recommender, service) only reads from it, so
instances are safe to share across threads.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import weakref
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .errors import EmptyDataset, ParseError, UnknownField

log = logging.getLogger(__name__)

# Fraction of non-missing values that must parse for a type to win.
TYPE_INFERENCE_THRESHOLD = 0.95

MISSING_TOKENS = {"", "null", "NULL", "NaN", "nan", "None"}


class FieldType(str, Enum):
    QUANTITATIVE = "quantitative"
    TEMPORAL = "temporal"
    NOMINAL = "nominal"


@dataclass(frozen=True)
class Field:
    name: str
    type: FieldType


@dataclass(frozen=True)
class FieldStats:
    """Exact statistics over the non-missing values of one field.

    Numeric moments are None for non-quantitative fields. Outliers use the
    1.5x IQR fence rule on linearly interpolated quartiles.
    """

    cardinality: int
    missing_count: int
    min: Optional[float] = None
    max: Optional[float] = None
    mean: Optional[float] = None
    stddev: Optional[float] = None
    skewness: Optional[float] = None
    outlier_count: int = 0
    max_text_len: int = 0


class Dataset:
    """Immutable typed table. Rows are tuples aligned with `fields`."""

    def __init__(self, name: str, fields: Sequence[Field], rows: Sequence[tuple]):
        names = [f.name for f in fields]
        if len(set(names)) != len(names):
            raise ParseError(f"duplicate field names in {name!r}")
        for r in rows:
            if len(r) != len(fields):
                raise ParseError("row width does not match field count")
        self.name = name
        self.fields = tuple(fields)
        self.rows = tuple(rows)
        self._index = {f.name: i for i, f in enumerate(self.fields)}

    @property
    def row_count(self) -> int:
        return len(self.rows)

    @property
    def field_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.fields)

    def field_type(self, name: str) -> FieldType:
        if name not in self._index:
            raise UnknownField(name)
        return self.fields[self._index[name]].type

    def column(self, name: str) -> list:
        """All values of one field, missing as None."""
        if name not in self._index:
            raise UnknownField(name)
        i = self._index[name]
        return [r[i] for r in self.rows]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __repr__(self) -> str:
        return f"Dataset({self.name!r}, {len(self.fields)} fields, {self.row_count} rows)"


def _is_missing(value: Any) -> bool:
    if value is None:
        return True
    if isinstance(value, float) and math.isnan(value):
        return True
    return isinstance(value, str) and value.strip() in MISSING_TOKENS


def _as_number(value: Any) -> Optional[float]:
    if isinstance(value, bool):
        return None
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value.strip())
        except ValueError:
            return None
    return None


def _parses_temporal(value: Any) -> bool:
    if not isinstance(value, str):
        return False
    s = value.strip()
    if len(s) == 4 and s.isdigit():
        return True
    try:
        datetime.fromisoformat(s)
        return True
    except ValueError:
        return False


def infer_field_type(values: Iterable[Any]) -> FieldType:
    """Majority-parse type inference: numeric first, then temporal, else nominal.

    A column with no non-missing values defaults to nominal (logged).
    """
    present = [v for v in values if not _is_missing(v)]
    if not present:
        log.warning("all values missing; defaulting field type to nominal")
        return FieldType.NOMINAL
    n = len(present)
    numeric = sum(1 for v in present if _as_number(v) is not None)
    if numeric / n >= TYPE_INFERENCE_THRESHOLD:
        return FieldType.QUANTITATIVE
    temporal = sum(1 for v in present if _parses_temporal(v))
    if temporal / n >= TYPE_INFERENCE_THRESHOLD:
        return FieldType.TEMPORAL
    return FieldType.NOMINAL


def _coerce(value: Any, ftype: FieldType):
    if _is_missing(value):
        return None
    if ftype is FieldType.QUANTITATIVE:
        num = _as_number(value)
        return num  # unparseable dirty cell becomes missing
    return value if isinstance(value, str) else str(value)


def _build(name: str, header: Sequence[str], raw_rows: Sequence[Sequence[Any]]) -> Dataset:
    if not header or not raw_rows:
        raise EmptyDataset(f"{name!r} has no fields or no rows")
    columns = list(zip(*raw_rows))
    fields = [Field(h, infer_field_type(col)) for h, col in zip(header, columns)]
    rows = [tuple(_coerce(v, f.type) for v, f in zip(r, fields)) for r in raw_rows]
    return Dataset(name, fields, rows)


def load_table(source: bytes | str, fmt: str, name: str = "table") -> Dataset:
    """Parse CSV (RFC 4180, header row) or a JSON array of records.

    Field order follows the header (CSV) or first-seen key order (JSON).
    """
    text = source.decode("utf-8") if isinstance(source, bytes) else source
    if fmt == "csv":
        try:
            reader = csv.reader(io.StringIO(text))
            table = list(reader)
        except csv.Error as exc:
            raise ParseError(str(exc)) from exc
        if not table:
            raise EmptyDataset("empty csv")
        header, body = table[0], table[1:]
        body = [r for r in body if r]
        for r in body:
            if len(r) != len(header):
                raise ParseError("ragged csv row")
        return _build(name, header, body)
    if fmt == "json-records":
        try:
            records = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
        if not isinstance(records, list) or not all(isinstance(r, dict) for r in records):
            raise ParseError("expected a JSON array of objects")
        if not records:
            raise EmptyDataset("no records")
        header: list[str] = []
        for rec in records:
            for k in rec:
                if k not in header:
                    header.append(k)
        body = [[rec.get(k) for k in header] for rec in records]
        return _build(name, header, body)
    raise ParseError(f"unknown format tag {fmt!r}")


def _quartiles(values: np.ndarray) -> tuple[float, float]:
    q1, q3 = np.percentile(values, [25, 75])
    return float(q1), float(q3)


def _adjusted_skewness(values: np.ndarray) -> float:
    """Adjusted Fisher-Pearson skewness; 0 for constant or short samples."""
    n = len(values)
    if n < 3:
        return 0.0
    mean = values.mean()
    s = values.std(ddof=1)
    if s == 0:
        return 0.0
    g1 = np.mean(((values - mean) / values.std(ddof=0)) ** 3)
    return float(g1 * math.sqrt(n * (n - 1)) / (n - 2))


def field_stats(dataset: Dataset, field: str) -> FieldStats:
    """Exact per-field statistics; missing values are excluded throughout."""
    values = dataset.column(field)  # raises UnknownField
    present = [v for v in values if v is not None]
    missing = len(values) - len(present)
    cardinality = len(set(present))

    if dataset.field_type(field) is not FieldType.QUANTITATIVE:
        max_len = max((len(str(v)) for v in present), default=0)
        return FieldStats(cardinality=cardinality, missing_count=missing,
                          max_text_len=max_len)

    arr = np.asarray(present, dtype=float)
    if arr.size == 0:
        return FieldStats(cardinality=0, missing_count=missing)
    q1, q3 = _quartiles(arr)
    iqr = q3 - q1
    lo, hi = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    outliers = int(np.count_nonzero((arr < lo) | (arr > hi)))
    return FieldStats(
        cardinality=cardinality,
        missing_count=missing,
        min=float(arr.min()),
        max=float(arr.max()),
        mean=float(arr.mean()),
        stddev=float(arr.std(ddof=1)) if arr.size > 1 else 0.0,
        skewness=_adjusted_skewness(arr),
        outlier_count=outliers,
    )


# Stats are pure functions of an immutable dataset; memoize per instance.
_stats_cache: "weakref.WeakKeyDictionary[Dataset, dict[str, FieldStats]]" = weakref.WeakKeyDictionary()


def cached_stats(dataset: Dataset, field: str) -> FieldStats:
    per_ds = _stats_cache.setdefault(dataset, {})
    if field not in per_ds:
        per_ds[field] = field_stats(dataset, field)
    return per_ds[field]
