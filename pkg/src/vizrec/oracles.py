"""Within-node candidate enumeration and the pluggable ranking oracles.

Three oracle families: rule-based effectiveness (channel-quality weights with
data-driven penalties), a hybrid that trades effectiveness against perceptual
edit distance to an anchor chart, and a statistical oracle scoring skew,
outliers, and correlation.

All weight and cost numbers live in RulesConfig so tests, the acceptance
suite, and external config files compute against one table.
"""

from __future__ import annotations

import json
import weakref

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field as dc_field, replace
from itertools import permutations, product
from typing import Optional, Sequence

import numpy as np

from .dataset import Dataset, FieldType, cached_stats
from .design_space import NodeId
from .errors import NoValidSpec
from .vizspec import (BIN, CHANNEL_ORDER, COUNT, COUNT_FIELD, MEAN, RAW, SUM,
                      AggregateOp, Channel, Encoding, Mark, Transform,
                      TransformKind, VisSpec, canonical_key, canonicalize,
                      variable_set)


@dataclass(frozen=True)
class EncodingConfig:
    """Per-algorithm constraint preset: which channels, transforms, marks."""

    allowed_channels: tuple[Channel, ...]
    allowed_transforms: tuple[Transform, ...]
    allowed_marks: tuple[Mark, ...]

    def __post_init__(self):
        if not (self.allowed_channels and self.allowed_transforms and self.allowed_marks):
            raise ValueError("encoding config sets must be non-empty")
        if Channel.X not in self.allowed_channels:
            raise ValueError("x channel is mandatory")


@dataclass(frozen=True)
class Score:
    value: float
    breakdown: tuple[tuple[str, float], ...] = ()

    @staticmethod
    def of(parts: Sequence[tuple[str, float]]) -> "Score":
        parts = tuple(parts)
        return Score(value=sum(c for _, c in parts), breakdown=parts)


@dataclass(frozen=True)
class OracleKind:
    kind: str  # "effectiveness" | "dziban" | "statistical"
    lam: float = 1.0
    features: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")


def Effectiveness() -> OracleKind:
    return OracleKind("effectiveness")


def DzibanHybrid(lam: float = 1.0) -> OracleKind:
    return OracleKind("dziban", lam=lam)


ALL_FEATURES = frozenset({"skew", "outliers", "correlation"})


def Statistical(features: frozenset[str] = ALL_FEATURES) -> OracleKind:
    unknown = features - ALL_FEATURES
    if unknown:
        raise ValueError(f"unknown features: {sorted(unknown)}")
    return OracleKind("statistical", features=frozenset(features))


# ---------------------------------------------------------------------------
# Weight / cost tables


@dataclass(frozen=True)
class RulesConfig:
    # (field type, channel) -> effectiveness weight; missing pairs score 0.
    channel_weights: tuple[tuple[str, str, float], ...]
    color_cardinality_limit: int = 10
    color_cardinality_penalty: float = -6.0
    shape_cardinality_limit: int = 6
    shape_cardinality_penalty: float = -4.0
    long_text_limit: int = 20
    long_text_penalty: float = -5.0
    # edit costs
    cost_add_field: float = 1.0
    cost_change_channel: float = 0.6
    cost_change_transform: float = 0.5
    cost_change_mark: float = 0.8

    def weight(self, ftype: FieldType, channel: Channel) -> float:
        return self._weight_map().get((ftype.value, channel.value), 0.0)

    def _weight_map(self) -> dict:
        cached = _weight_maps.get(self)
        if cached is None:
            cached = {(t, c): w for t, c, w in self.channel_weights}
            _weight_maps[self] = cached
        return cached


_weight_maps: dict[RulesConfig, dict] = {}

_Q, _N, _T = (FieldType.QUANTITATIVE.value, FieldType.NOMINAL.value,
              FieldType.TEMPORAL.value)

DEFAULT_RULES = RulesConfig(channel_weights=(
    (_Q, "x", 10.0), (_Q, "y", 10.0), (_Q, "size", 6.0), (_Q, "color", 5.0),
    (_Q, "text", 2.0),
    (_N, "x", 10.0), (_N, "y", 10.0), (_N, "color", 7.0), (_N, "row", 6.0),
    (_N, "column", 6.0), (_N, "shape", 5.0), (_N, "text", 2.0),
    (_T, "x", 10.0), (_T, "y", 10.0), (_T, "color", 4.0),
))


def load_rules(path: str) -> RulesConfig:
    """Read a weight/cost table from a TOML or JSON file; unset keys keep defaults."""
    with open(path, "rb") as fh:
        if path.endswith(".toml"):
            raw = tomllib.load(fh)
        else:
            raw = json.load(fh)
    kwargs = dict(raw)
    if "channel_weights" in kwargs:
        kwargs["channel_weights"] = tuple(
            (t, c, float(w)) for t, c, w in kwargs["channel_weights"])
    else:
        kwargs["channel_weights"] = DEFAULT_RULES.channel_weights
    return replace(RulesConfig(channel_weights=kwargs.pop("channel_weights")), **kwargs)


# ---------------------------------------------------------------------------
# Candidate enumeration


def _transform_options(ftype: FieldType, allowed: tuple[Transform, ...]) -> list[Transform]:
    opts = []
    for t in allowed:
        if t.kind is TransformKind.RAW:
            opts.append(t)
        elif t.kind is TransformKind.BIN and ftype in (FieldType.QUANTITATIVE, FieldType.TEMPORAL):
            opts.append(t)
        elif (t.kind is TransformKind.AGGREGATE and t.op in (AggregateOp.MEAN, AggregateOp.SUM)
              and ftype is FieldType.QUANTITATIVE):
            opts.append(t)
        # count lives on the synthetic field, sort stays out of enumeration
    return opts


def _is_discrete(enc: Encoding, dataset: Dataset) -> bool:
    if enc.field == COUNT_FIELD:
        return False
    if enc.transform.kind is TransformKind.BIN:
        return True
    return dataset.field_type(enc.field) is not FieldType.QUANTITATIVE


def _is_measure(enc: Encoding, dataset: Dataset) -> bool:
    return not _is_discrete(enc, dataset)


def compatible_marks(encodings: Sequence[Encoding], dataset: Dataset) -> list[Mark]:
    """Marks that make sense for an encoding assignment, best first."""
    by_channel = {e.channel: e for e in encodings}
    x, y = by_channel.get(Channel.X), by_channel.get(Channel.Y)
    if x is not None and y is not None:
        x_disc, y_disc = _is_discrete(x, dataset), _is_discrete(y, dataset)
        x_temporal = (x.field != COUNT_FIELD
                      and dataset.field_type(x.field) is FieldType.TEMPORAL
                      and x.transform.kind is TransformKind.RAW)
        if x_temporal and not y_disc:
            return [Mark.LINE, Mark.AREA, Mark.POINT]
        if x_disc != y_disc:
            return [Mark.BAR, Mark.POINT, Mark.TICK]
        if x_disc and y_disc:
            return [Mark.POINT, Mark.TEXT]
        return [Mark.POINT, Mark.TEXT]
    # single positional axis
    axis = x or y
    if axis is not None and _is_discrete(axis, dataset):
        return [Mark.TICK, Mark.POINT]
    return [Mark.TICK, Mark.POINT]


def enumerate_candidates(node: NodeId, dataset: Dataset, config: EncodingConfig,
                         limit: Optional[int] = None) -> list[VisSpec]:
    """All valid specs over exactly the node's attributes, canonical-deduped.

    Channel assignments are generated in config preference order so that a
    truncating `limit` keeps the strongest encodings. A synthetic count
    encoding is added on a free positional channel when every attribute
    encoding is discrete (counting needs groups to count over).
    """
    attrs = node.attrs
    if len(attrs) > len(config.allowed_channels):
        raise NoValidSpec(f"{len(attrs)} attributes but only "
                          f"{len(config.allowed_channels)} channels allowed")
    count_ok = any(t == COUNT for t in config.allowed_transforms)
    per_attr_transforms = [
        _transform_options(dataset.field_type(a), config.allowed_transforms)
        for a in attrs
    ]
    if any(not opts for opts in per_attr_transforms):
        raise NoValidSpec("an attribute has no permitted transform")

    out: list[VisSpec] = []
    seen: set[tuple] = set()
    for channels in permutations(config.allowed_channels, len(attrs)):
        for transforms in product(*per_attr_transforms):
            base = tuple(Encoding(c, a, t)
                         for c, a, t in zip(channels, attrs, transforms))
            variants = [base]
            if count_ok and all(_is_discrete(e, dataset) for e in base):
                used = {e.channel for e in base}
                for pos in (Channel.Y, Channel.X):
                    if pos not in used and pos in config.allowed_channels:
                        variants.append(base + (Encoding(pos, COUNT_FIELD, COUNT),))
                        break
            for encs in variants:
                for mark in compatible_marks(encs, dataset):
                    if mark not in config.allowed_marks:
                        continue
                    spec = canonicalize(VisSpec(mark, encs))
                    key = canonical_key(spec)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(spec)
                    if limit is not None and len(out) >= limit:
                        return out
    if not out:
        raise NoValidSpec(f"no candidate satisfies the config at node {node!r}")
    return out


# ---------------------------------------------------------------------------
# Scoring

# effectiveness depends only on (canonical spec, dataset, rules); memoize.
_eff_cache: "weakref.WeakKeyDictionary[Dataset, dict]" = weakref.WeakKeyDictionary()


def effectiveness_score(spec: VisSpec, dataset: Dataset,
                        rules: RulesConfig = DEFAULT_RULES) -> Score:
    """Channel-quality weights summed per encoding, minus data-driven penalties."""
    cache = _eff_cache.setdefault(dataset, {})
    key = (canonical_key(spec), rules)
    hit = cache.get(key)
    if hit is not None:
        return hit

    parts: list[tuple[str, float]] = []
    for enc in spec.encodings:
        ftype = (FieldType.QUANTITATIVE if enc.field == COUNT_FIELD
                 else dataset.field_type(enc.field))
        w = rules.weight(ftype, enc.channel)
        parts.append((f"{ftype.value}-on-{enc.channel.value}", w))
        if enc.field == COUNT_FIELD:
            continue
        stats = cached_stats(dataset, enc.field)
        if (enc.channel is Channel.COLOR and ftype is FieldType.NOMINAL
                and stats.cardinality > rules.color_cardinality_limit):
            parts.append(("high-cardinality-color", rules.color_cardinality_penalty))
        if (enc.channel is Channel.SHAPE
                and stats.cardinality > rules.shape_cardinality_limit):
            parts.append(("high-cardinality-shape", rules.shape_cardinality_penalty))
    if spec.mark is Mark.TEXT:
        for enc in spec.encodings:
            if enc.field == COUNT_FIELD:
                continue
            if dataset.field_type(enc.field) is FieldType.NOMINAL:
                if cached_stats(dataset, enc.field).max_text_len > rules.long_text_limit:
                    parts.append(("long-text-mark", rules.long_text_penalty))
                    break
    score = Score.of(parts)
    cache[key] = score
    return score


def perceptual_distance(a: VisSpec, b: VisSpec,
                        rules: RulesConfig = DEFAULT_RULES) -> float:
    """Edit cost between two charts; fields matched by (unique) attribute name."""
    ea = {e.field: e for e in a.encodings}
    eb = {e.field: e for e in b.encodings}
    cost = 0.0
    for f in sorted(set(ea) | set(eb)):  # fixed order keeps fp sums symmetric
        if f not in ea or f not in eb:
            cost += rules.cost_add_field
            continue
        if ea[f].channel != eb[f].channel:
            cost += rules.cost_change_channel
        if ea[f].transform != eb[f].transform:
            cost += rules.cost_change_transform
    if a.mark != b.mark:
        cost += rules.cost_change_mark
    return cost


def dziban_score(spec: VisSpec, anchor: VisSpec, dataset: Dataset, lam: float,
                 rules: RulesConfig = DEFAULT_RULES) -> Score:
    eff = effectiveness_score(spec, dataset, rules)
    dist = perceptual_distance(spec, anchor, rules)
    return Score.of([("effectiveness", eff.value), ("distance-penalty", -lam * dist)])


def _unit_skew(s: float) -> float:
    s = abs(s)
    return s / (1.0 + s)


def statistical_score(spec: VisSpec, dataset: Dataset,
                      features: frozenset[str] = ALL_FEATURES) -> Score:
    """Feature contributions each normalized into [0, 1], summed.

    Skew and outlier contributions take the max over the spec's quantitative
    fields; correlation is |Pearson r| over its first two quantitative fields.
    """
    q_fields = [f for f in sorted(variable_set(spec))
                if dataset.field_type(f) is FieldType.QUANTITATIVE]
    parts: list[tuple[str, float]] = []
    if "skew" in features:
        skews = [_unit_skew(cached_stats(dataset, f).skewness or 0.0) for f in q_fields]
        parts.append(("skew", max(skews, default=0.0)))
    if "outliers" in features:
        rates = [cached_stats(dataset, f).outlier_count / dataset.row_count
                 for f in q_fields] if dataset.row_count else []
        parts.append(("outliers", max(rates, default=0.0)))
    if "correlation" in features:
        parts.append(("correlation", _abs_correlation(dataset, q_fields)))
    return Score.of(parts)


def _abs_correlation(dataset: Dataset, q_fields: list[str]) -> float:
    if len(q_fields) < 2:
        return 0.0
    xs, ys = dataset.column(q_fields[0]), dataset.column(q_fields[1])
    pairs = [(x, y) for x, y in zip(xs, ys) if x is not None and y is not None]
    if len(pairs) < 2:
        return 0.0
    arr = np.asarray(pairs, dtype=float)
    if arr[:, 0].std() == 0 or arr[:, 1].std() == 0:
        return 0.0
    r = float(np.corrcoef(arr[:, 0], arr[:, 1])[0, 1])
    return min(abs(r), 1.0)


def score_spec(spec: VisSpec, oracle: OracleKind, anchor: Optional[VisSpec],
               dataset: Dataset, rules: RulesConfig = DEFAULT_RULES) -> Score:
    if oracle.kind == "effectiveness":
        return effectiveness_score(spec, dataset, rules)
    if oracle.kind == "dziban":
        if anchor is None:  # degrade to pure effectiveness
            return effectiveness_score(spec, dataset, rules)
        return dziban_score(spec, anchor, dataset, oracle.lam, rules)
    if oracle.kind == "statistical":
        return statistical_score(spec, dataset, oracle.features)
    raise ValueError(f"unknown oracle kind {oracle.kind!r}")


def rank(candidates: Sequence[VisSpec], oracle: OracleKind,
         anchor: Optional[VisSpec], dataset: Dataset,
         rules: RulesConfig = DEFAULT_RULES) -> list[tuple[VisSpec, Score]]:
    """Descending by score; ties broken by canonical-form lexicographic order."""
    scored = [(spec, score_spec(spec, oracle, anchor, dataset, rules))
              for spec in candidates]
    scored.sort(key=lambda item: (-item[1].value, canonical_key(item[0])))
    return scored
