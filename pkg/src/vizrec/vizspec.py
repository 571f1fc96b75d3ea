"""Chart specification model: encodings, canonical identity, Vega-Lite I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Mapping, Optional

from .dataset import FieldType
from .errors import InvalidSpec, ParseError, UnsupportedChannel

VEGA_LITE_SCHEMA = "https://vega.github.io/schema/vega-lite/v5.json"

MAX_SPEC_ATTRS = 3

#: Synthetic field name standing in for an aggregate row count.
COUNT_FIELD = "__count__"


class Mark(str, Enum):
    BAR = "bar"
    POINT = "point"
    LINE = "line"
    TICK = "tick"
    AREA = "area"
    TEXT = "text"


class Channel(str, Enum):
    X = "x"
    Y = "y"
    COLOR = "color"
    SIZE = "size"
    SHAPE = "shape"
    ROW = "row"
    COLUMN = "column"
    TEXT = "text"


# Canonical ordering of channels, used for sorting encodings and for
# preference order during candidate enumeration.
CHANNEL_ORDER = {c: i for i, c in enumerate(Channel)}


class TransformKind(str, Enum):
    RAW = "raw"
    BIN = "bin"
    AGGREGATE = "aggregate"
    SORT = "sort"


class AggregateOp(str, Enum):
    COUNT = "count"
    MEAN = "mean"
    SUM = "sum"


@dataclass(frozen=True, order=True)
class Transform:
    kind: TransformKind = TransformKind.RAW
    op: Optional[AggregateOp] = None
    direction: Optional[str] = None  # only for SORT: "ascending"/"descending"


RAW = Transform(TransformKind.RAW)
BIN = Transform(TransformKind.BIN)
COUNT = Transform(TransformKind.AGGREGATE, AggregateOp.COUNT)
MEAN = Transform(TransformKind.AGGREGATE, AggregateOp.MEAN)
SUM = Transform(TransformKind.AGGREGATE, AggregateOp.SUM)


@dataclass(frozen=True)
class Encoding:
    channel: Channel
    field: str
    transform: Transform = RAW


@dataclass(frozen=True)
class VisSpec:
    mark: Mark
    encodings: tuple[Encoding, ...] = dc_field(default_factory=tuple)


def variable_set(spec: VisSpec) -> frozenset[str]:
    """Dataset attributes the chart visualizes; the synthetic count is excluded."""
    return frozenset(e.field for e in spec.encodings if e.field != COUNT_FIELD)


def _encoding_key(enc: Encoding):
    t = enc.transform
    # the synthetic count sorts after any real attribute name, so canonical
    # tie-breaks prefer designs that keep data attributes on earlier channels
    field_key = "￿" if enc.field == COUNT_FIELD else enc.field
    return (CHANNEL_ORDER[enc.channel], field_key, t.kind.value,
            t.op.value if t.op else "", t.direction or "")


def canonicalize(spec: VisSpec) -> VisSpec:
    """Encoding-order-insensitive identity; idempotent."""
    return VisSpec(spec.mark, tuple(sorted(spec.encodings, key=_encoding_key)))


def canonical_key(spec: VisSpec) -> tuple:
    """Hashable, totally ordered identity of a visual design."""
    return (spec.mark.value,) + tuple(_encoding_key(e) for e in sorted(spec.encodings, key=_encoding_key))


def validate_spec(spec: VisSpec, field_types: Mapping[str, FieldType]) -> None:
    """Raise InvalidSpec on any structural violation."""
    seen_channels = set()
    seen_fields = set()
    for enc in spec.encodings:
        if enc.channel in seen_channels:
            raise InvalidSpec(f"channel {enc.channel.value} used twice")
        seen_channels.add(enc.channel)
        if enc.field != COUNT_FIELD:
            if enc.field not in field_types:
                raise InvalidSpec(f"unknown field {enc.field!r}")
            if enc.field in seen_fields:
                raise InvalidSpec(f"attribute {enc.field!r} on two channels")
            seen_fields.add(enc.field)
        _check_transform(enc, field_types)
    n_attrs = len(variable_set(spec))
    if n_attrs > MAX_SPEC_ATTRS:
        raise InvalidSpec(f"{n_attrs} attributes exceeds cap of {MAX_SPEC_ATTRS}")
    if not spec.encodings:
        raise InvalidSpec("spec has no encodings")


def _check_transform(enc: Encoding, field_types: Mapping[str, FieldType]) -> None:
    t = enc.transform
    if enc.field == COUNT_FIELD:
        if t != COUNT:
            raise InvalidSpec("synthetic count field requires the count aggregate")
        return
    ftype = field_types[enc.field]
    if t.kind is TransformKind.BIN and ftype is FieldType.NOMINAL:
        raise InvalidSpec(f"cannot bin nominal field {enc.field!r}")
    if t.kind is TransformKind.AGGREGATE:
        if t.op is AggregateOp.COUNT:
            raise InvalidSpec("count aggregate belongs on the synthetic count field")
        if ftype is not FieldType.QUANTITATIVE:
            raise InvalidSpec(f"cannot {t.op.value} non-quantitative field {enc.field!r}")


_VL_TYPE = {
    FieldType.NOMINAL: "nominal",
    FieldType.TEMPORAL: "temporal",
    FieldType.QUANTITATIVE: "quantitative",
}


def serialize(spec: VisSpec, dataset_ref: str,
              field_types: Optional[Mapping[str, FieldType]] = None) -> dict:
    """Emit a Vega-Lite compatible document for the canonical form of `spec`."""
    canon = canonicalize(spec)
    encoding: dict[str, dict] = {}
    for enc in canon.encodings:
        if enc.channel.value in encoding:
            raise UnsupportedChannel(f"duplicate channel {enc.channel.value}")
        block: dict = {}
        t = enc.transform
        if enc.field == COUNT_FIELD:
            block["aggregate"] = "count"
            block["type"] = "quantitative"
        else:
            block["field"] = enc.field
            if field_types and enc.field in field_types:
                block["type"] = _VL_TYPE[field_types[enc.field]]
            if t.kind is TransformKind.BIN:
                block["bin"] = True
            elif t.kind is TransformKind.AGGREGATE:
                block["aggregate"] = t.op.value
            elif t.kind is TransformKind.SORT:
                block["sort"] = t.direction or "ascending"
        encoding[enc.channel.value] = block
    return {
        "$schema": VEGA_LITE_SCHEMA,
        "data": {"name": dataset_ref},
        "mark": canon.mark.value,
        "encoding": encoding,
    }


def to_json(spec: VisSpec, dataset_ref: str,
            field_types: Optional[Mapping[str, FieldType]] = None) -> str:
    """Deterministic serialization: byte-identical for equal canonical specs."""
    return json.dumps(serialize(spec, dataset_ref, field_types),
                      sort_keys=True, separators=(",", ":"))


def parse_document(doc: dict | str) -> VisSpec:
    """Inverse of serialize, up to canonical form."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
    try:
        mark = Mark(doc["mark"])
        encodings = []
        for ch_name, block in doc["encoding"].items():
            channel = Channel(ch_name)
            if block.get("aggregate") == "count" and "field" not in block:
                encodings.append(Encoding(channel, COUNT_FIELD, COUNT))
                continue
            field = block["field"]
            if block.get("bin"):
                transform = BIN
            elif "aggregate" in block:
                transform = Transform(TransformKind.AGGREGATE, AggregateOp(block["aggregate"]))
            elif "sort" in block:
                transform = Transform(TransformKind.SORT, direction=block["sort"])
            else:
                transform = RAW
            encodings.append(Encoding(channel, field, transform))
    except (KeyError, ValueError, TypeError, AttributeError) as exc:
        raise ParseError(f"not a recognizable chart document: {exc}") from exc
    return canonicalize(VisSpec(mark, tuple(encodings)))
