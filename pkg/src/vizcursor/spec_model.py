"""Chart specification model: parsing, serialization, and validation.

The spec grammar is a closed subset: four mark types, three encoding
channels (x, y, color), optional faceting, and interval annotations on one
axis. Specs are immutable after parse and safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .errors import SchemaError, SpecSyntaxError
from .formatting import parse_date_token
from .tabular import DataTable, FieldType

DEFAULT_BIN_COUNT = 10


class Mark(str, Enum):
    POINT = "point"
    LINE = "line"
    BAR = "bar"
    AREA = "area"


class Channel(str, Enum):
    X = "x"
    Y = "y"
    COLOR = "color"


class Aggregate(str, Enum):
    NONE = "none"
    COUNT = "count"
    MEAN = "mean"
    SUM = "sum"


@dataclass(frozen=True)
class BinParams:
    max_bins: int = DEFAULT_BIN_COUNT


@dataclass(frozen=True)
class EncodingDef:
    channel: Channel
    field: str
    field_type: FieldType
    bin: BinParams | None = None
    aggregate: Aggregate = Aggregate.NONE

    @property
    def is_interval_scaled(self) -> bool:
        """Whether this channel yields intervals (vs. categories)."""
        return self.field_type in (FieldType.QUANTITATIVE, FieldType.TEMPORAL)


@dataclass(frozen=True)
class AnnotationDef:
    label: str
    target_channel: Channel
    lo: float
    hi: float
    note: str | None = None


@dataclass(frozen=True)
class FacetDef:
    field: str
    field_type: FieldType
    order: tuple[str, ...] | None = None


@dataclass(frozen=True)
class ChartSpec:
    mark: Mark
    encodings: tuple[EncodingDef, ...]
    facet: FacetDef | None = None
    annotations: tuple[AnnotationDef, ...] = ()
    title: str | None = None
    description: str | None = None

    def encoding(self, channel: Channel) -> EncodingDef | None:
        for enc in self.encodings:
            if enc.channel == channel:
                return enc
        return None

    @property
    def channels(self) -> list[Channel]:
        return [enc.channel for enc in self.encodings]


_TOP_KEYS = {"mark", "encoding", "facet", "annotations", "title", "description"}
_ENCODING_KEYS = {"field", "type", "bin", "aggregate"}
_FACET_KEYS = {"field", "type", "order"}
_ANNOTATION_KEYS = {"label", "channel", "range", "note"}
_CHANNEL_ORDER = (Channel.X, Channel.Y, Channel.COLOR)


def _reject_duplicate_keys(pairs):
    seen = set()
    for key, _ in pairs:
        if key in seen:
            raise SchemaError("duplicate key", path=key)
        seen.add(key)
    return dict(pairs)


def parse_chart_spec(text: str) -> ChartSpec:
    """Parse a JSON chart spec document into a validated ChartSpec.

    Unknown keys, marks, and channels are rejected with the offending key
    path; defaults (bin target count, aggregate) are filled in. Duplicate
    keys anywhere in the document are rejected.
    """
    try:
        raw = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(f"malformed spec document: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return chart_spec_from_object(raw)


def chart_spec_from_object(raw: object) -> ChartSpec:
    """Build a ChartSpec from already-parsed JSON data (schema-checked)."""
    if not isinstance(raw, dict):
        raise SchemaError("spec document must be an object")
    _check_keys(raw, _TOP_KEYS, "")
    mark = _parse_enum(raw.get("mark"), Mark, "mark")
    encoding_obj = raw.get("encoding")
    if not isinstance(encoding_obj, dict) or not encoding_obj:
        raise SchemaError("missing or empty encoding object", path="encoding")

    encodings = []
    for channel_name in encoding_obj:
        if channel_name not in [c.value for c in Channel]:
            raise SchemaError(f"unsupported channel {channel_name!r}", path=f"encoding.{channel_name}")
    for channel in _CHANNEL_ORDER:
        if channel.value in encoding_obj:
            encodings.append(_parse_encoding(channel, encoding_obj[channel.value]))
    if not any(e.channel in (Channel.X, Channel.Y) for e in encodings):
        raise SchemaError("at least one of channels x, y must be present", path="encoding")

    facet = _parse_facet(raw.get("facet")) if raw.get("facet") is not None else None
    if facet is not None:
        for enc in encodings:
            if enc.channel in (Channel.X, Channel.Y) and enc.field == facet.field:
                raise SchemaError(
                    f"facet field {facet.field!r} duplicates the {enc.channel.value} channel field",
                    path="facet.field",
                )

    annotations = tuple(
        _parse_annotation(i, item) for i, item in enumerate(_expect_list(raw.get("annotations", []), "annotations"))
    )
    title = _expect_text(raw.get("title"), "title")
    description = _expect_text(raw.get("description"), "description")
    return ChartSpec(
        mark=mark,
        encodings=tuple(encodings),
        facet=facet,
        annotations=annotations,
        title=title,
        description=description,
    )


def _check_keys(obj: dict, allowed: set[str], prefix: str) -> None:
    for key in obj:
        if key not in allowed:
            path = f"{prefix}.{key}" if prefix else key
            raise SchemaError(f"unrecognized key {key!r}", path=path)


def _parse_enum(value, enum_cls, path):
    if not isinstance(value, str):
        raise SchemaError(f"missing or non-text {path}", path=path)
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(m.value for m in enum_cls)
        raise SchemaError(f"unsupported value {value!r} (expected one of: {allowed})", path=path) from None


def _expect_text(value, path):
    if value is None:
        return None
    if not isinstance(value, str):
        raise SchemaError("expected text", path=path)
    return value


def _expect_list(value, path):
    if not isinstance(value, list):
        raise SchemaError("expected an array", path=path)
    return value


def _parse_encoding(channel: Channel, obj) -> EncodingDef:
    path = f"encoding.{channel.value}"
    if not isinstance(obj, dict):
        raise SchemaError("encoding definition must be an object", path=path)
    _check_keys(obj, _ENCODING_KEYS, path)
    field = obj.get("field")
    if not isinstance(field, str) or not field:
        raise SchemaError("missing field name", path=f"{path}.field")
    field_type = _parse_enum(obj.get("type"), FieldType, f"{path}.type")
    bin_params = _parse_bin(obj.get("bin"), f"{path}.bin")
    aggregate = (
        _parse_enum(obj.get("aggregate"), Aggregate, f"{path}.aggregate")
        if obj.get("aggregate") is not None
        else Aggregate.NONE
    )
    return EncodingDef(channel=channel, field=field, field_type=field_type, bin=bin_params, aggregate=aggregate)


def _parse_bin(value, path) -> BinParams | None:
    if value is None or value is False:
        return None
    if value is True:
        return BinParams()
    if isinstance(value, dict):
        _check_keys(value, {"maxbins"}, path)
        max_bins = value.get("maxbins", DEFAULT_BIN_COUNT)
        if not isinstance(max_bins, int) or isinstance(max_bins, bool) or max_bins < 1:
            raise SchemaError("maxbins must be a positive integer", path=f"{path}.maxbins")
        return BinParams(max_bins=max_bins)
    raise SchemaError("bin must be true or an object with maxbins", path=path)


def _parse_facet(obj) -> FacetDef:
    if not isinstance(obj, dict):
        raise SchemaError("facet must be an object", path="facet")
    _check_keys(obj, _FACET_KEYS, "facet")
    field = obj.get("field")
    if not isinstance(field, str) or not field:
        raise SchemaError("missing field name", path="facet.field")
    field_type = _parse_enum(obj.get("type"), FieldType, "facet.type")
    if field_type not in (FieldType.NOMINAL, FieldType.ORDINAL):
        raise SchemaError("facet type must be nominal or ordinal", path="facet.type")
    order = obj.get("order")
    if order is not None:
        order = _expect_list(order, "facet.order")
        if not all(isinstance(v, str) for v in order):
            raise SchemaError("order entries must be text", path="facet.order")
        order = tuple(order)
    return FacetDef(field=field, field_type=field_type, order=order)


def _parse_annotation(index: int, obj) -> AnnotationDef:
    path = f"annotations[{index}]"
    if not isinstance(obj, dict):
        raise SchemaError("annotation must be an object", path=path)
    _check_keys(obj, _ANNOTATION_KEYS, path)
    label = obj.get("label")
    if not isinstance(label, str) or not label:
        raise SchemaError("missing label", path=f"{path}.label")
    channel = _parse_enum(obj.get("channel"), Channel, f"{path}.channel")
    if channel == Channel.COLOR:
        raise SchemaError("annotation channel must be x or y", path=f"{path}.channel")
    rng = obj.get("range")
    if not isinstance(rng, list) or len(rng) != 2:
        raise SchemaError("range must be a two-element array [lo, hi]", path=f"{path}.range")
    lo = _parse_bound(rng[0], f"{path}.range[0]")
    hi = _parse_bound(rng[1], f"{path}.range[1]")
    note = _expect_text(obj.get("note"), f"{path}.note")
    return AnnotationDef(label=label, target_channel=channel, lo=lo, hi=hi, note=note)


def _parse_bound(value, path) -> float:
    if isinstance(value, bool):
        raise SchemaError("range bound must be a number or ISO date", path=path)
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        day = parse_date_token(value)
        if day is not None:
            return day
    raise SchemaError("range bound must be a number or ISO date", path=path)


def serialize_chart_spec(spec: ChartSpec) -> str:
    """Canonical JSON rendering; parse(serialize(parse(t))) == parse(t)."""
    doc: dict = {"mark": spec.mark.value}
    if spec.title is not None:
        doc["title"] = spec.title
    if spec.description is not None:
        doc["description"] = spec.description
    encoding = {}
    for enc in spec.encodings:
        entry: dict = {"field": enc.field, "type": enc.field_type.value}
        if enc.bin is not None:
            entry["bin"] = {"maxbins": enc.bin.max_bins}
        if enc.aggregate != Aggregate.NONE:
            entry["aggregate"] = enc.aggregate.value
        encoding[enc.channel.value] = entry
    doc["encoding"] = encoding
    if spec.facet is not None:
        facet: dict = {"field": spec.facet.field, "type": spec.facet.field_type.value}
        if spec.facet.order is not None:
            facet["order"] = list(spec.facet.order)
        doc["facet"] = facet
    if spec.annotations:
        doc["annotations"] = [
            {"label": a.label, "channel": a.target_channel.value, "range": [a.lo, a.hi]}
            | ({"note": a.note} if a.note is not None else {})
            for a in spec.annotations
        ]
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


@dataclass(frozen=True)
class ValidationIssue:
    severity: str  # "error" | "warning"
    path: str
    message: str


# declared type -> inferred types it may sit on
_TYPE_COMPAT = {
    FieldType.QUANTITATIVE: {FieldType.QUANTITATIVE},
    FieldType.TEMPORAL: {FieldType.TEMPORAL},
    FieldType.NOMINAL: set(FieldType),
    FieldType.ORDINAL: set(FieldType),
}


def validate_spec(spec: ChartSpec, table: DataTable) -> list[ValidationIssue]:
    """Cross-check every encoding, facet, and annotation against the table.

    Issues are returned (never raised); an empty list means the spec is
    consistent with the data.
    """
    issues: list[ValidationIssue] = []

    def error(path, message):
        issues.append(ValidationIssue("error", path, message))

    def warning(path, message):
        issues.append(ValidationIssue("warning", path, message))

    for enc in spec.encodings:
        path = f"encoding.{enc.channel.value}"
        if not table.has_field(enc.field):
            error(f"{path}.field", f"field {enc.field!r} not present in the data")
            continue
        meta = table.field(enc.field)
        if meta.inferred_type not in _TYPE_COMPAT[enc.field_type]:
            error(
                f"{path}.type",
                f"declared {enc.field_type.value} but field {enc.field!r} is {meta.inferred_type.value}",
            )
        if enc.bin is not None and enc.field_type in (FieldType.NOMINAL, FieldType.ORDINAL):
            error(f"{path}.bin", f"bin is only valid for quantitative or temporal fields, not {enc.field_type.value}")
        if enc.aggregate in (Aggregate.MEAN, Aggregate.SUM) and enc.field_type in (
            FieldType.NOMINAL,
            FieldType.ORDINAL,
        ):
            error(f"{path}.aggregate", f"{enc.aggregate.value} needs a quantitative or temporal field")

    if spec.facet is not None:
        if not table.has_field(spec.facet.field):
            error("facet.field", f"field {spec.facet.field!r} not present in the data")
        else:
            meta = table.field(spec.facet.field)
            values = [v for v in table.values(spec.facet.field) if v is not None]
            if not values:
                error("facet.field", f"facet field {spec.facet.field!r} has no non-null values")
            if spec.facet.order is not None:
                from .tabular import format_cell

                labels = {format_cell(v, meta.inferred_type) for v in values}
                for entry in spec.facet.order:
                    if entry not in labels:
                        error("facet.order", f"order entry {entry!r} is not a category of {spec.facet.field!r}")

    for i, annotation in enumerate(spec.annotations):
        path = f"annotations[{i}]"
        if annotation.lo > annotation.hi:
            error(f"{path}.range", f"lo {annotation.lo} exceeds hi {annotation.hi}")
            continue
        enc = spec.encoding(annotation.target_channel)
        if enc is None:
            error(f"{path}.channel", f"annotation targets undeclared channel {annotation.target_channel.value!r}")
            continue
        if not table.has_field(enc.field):
            continue  # already reported on the encoding
        meta = table.field(enc.field)
        if not meta.is_numeric or not meta.domain:
            error(f"{path}.range", f"annotated channel {annotation.target_channel.value!r} is not numeric")
            continue
        lo, hi = meta.domain
        if annotation.hi < lo or annotation.lo > hi:
            error(f"{path}.range", f"range [{annotation.lo}, {annotation.hi}] does not intersect the data domain")
        elif annotation.lo < lo or annotation.hi > hi:
            warning(f"{path}.range", f"range [{annotation.lo}, {annotation.hi}] extends beyond the data domain")

    return issues
