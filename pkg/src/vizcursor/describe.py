"""Spoken descriptions for structure nodes and transitions.

Every utterance is an ordered list of typed tokens rendered from a template
file (token matrix shipped as data so authors can re-word or re-rank what is
spoken). Composition controls token order, verbosity filters the token set
(low is a subset of medium is a subset of high), and the level label is
suppressed while the cursor stays on the same kind of node.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from .formatting import epoch_day_to_iso, format_number
from .selection import summarize
from .spec_model import Channel, ChartSpec
from .structures import AccessNode, AccessStructure, NodeKind
from .tabular import FieldType


class Composition(str, Enum):
    CONTEXT_FIRST = "contextFirst"
    DATA_FIRST = "dataFirst"


class Verbosity(str, Enum):
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"


@dataclass(frozen=True)
class DescriptionConfig:
    composition: Composition = Composition.CONTEXT_FIRST
    verbosity: Verbosity = Verbosity.HIGH
    suppress_repeated_level: bool = True
    number_format: int = 4


@dataclass(frozen=True)
class DescriptionToken:
    kind: str
    text: str
    glue: bool = False      # joins to the previous token with a space
    repeated: bool = False  # branch context unchanged since the last utterance


@dataclass(frozen=True)
class Utterance:
    tokens: tuple[DescriptionToken, ...]

    @property
    def text(self) -> str:
        return render_tokens(self.tokens)


def render_tokens(tokens: tuple[DescriptionToken, ...] | list[DescriptionToken]) -> str:
    """Join tokens: ", " separator, space after sentence-final tokens and
    before glue tokens, "." terminator."""
    if not tokens:
        return ""
    out = tokens[0].text
    for prev, tok in zip(tokens, tokens[1:]):
        if prev.text.endswith((".", "!", "?")) or tok.glue:
            out += " " + tok.text
        else:
            out += ", " + tok.text
    if not out.endswith((".", "!", "?")):
        out += "."
    return out


@dataclass(frozen=True)
class DescribeContext:
    """Transition facts the description depends on."""

    level_changed: bool = True
    previous_branch_context: str | None = None
    boundary: str | None = None  # "start" | "end"
    clamped: bool = False
    notice: str | None = None    # explanation for an invalid command


_DEFAULT_TEMPLATES: dict | None = None


def load_templates(path: str | None = None) -> dict:
    """The default token matrix, optionally overlaid with a custom file.

    Custom files may replace any subset of sections ("tokens" entries merge
    per node key), which is the supported hook for author-curated wording.
    """
    global _DEFAULT_TEMPLATES
    if _DEFAULT_TEMPLATES is None:
        raw = resources.files("vizcursor.templates").joinpath("default_tokens.json").read_text("utf-8")
        _DEFAULT_TEMPLATES = json.loads(raw)
    if path is None:
        return _DEFAULT_TEMPLATES
    with open(path, encoding="utf-8") as fh:
        custom = json.load(fh)
    merged = {k: v for k, v in _DEFAULT_TEMPLATES.items()}
    for key, value in custom.items():
        if key == "tokens":
            merged["tokens"] = {**_DEFAULT_TEMPLATES["tokens"], **value}
        else:
            merged[key] = value
    return merged


class _SkipToken(Exception):
    pass


class _Strict(dict):
    def __missing__(self, key):
        raise _SkipToken(key)


def _fill(template: str, context: dict) -> str | None:
    try:
        text = template.format_map(_Strict(context))
    except _SkipToken:
        return None
    return text if text and text != "None" else None


def describe(
    structure: AccessStructure,
    node: AccessNode,
    ctx: DescribeContext | None = None,
    config: DescriptionConfig | None = None,
    templates: dict | None = None,
) -> Utterance:
    """The utterance for `node` under the given transition context."""
    ctx = ctx or DescribeContext()
    config = config or DescriptionConfig()
    templates = templates or load_templates()

    tokens = build_tokens(structure, node, ctx, templates, sig=config.number_format)
    tokens = verbosity_filter(tokens, config.verbosity, templates)
    if config.suppress_repeated_level and not ctx.level_changed:
        tokens = [t for t in tokens if t.kind != "levelLabel"]

    notices: list[DescriptionToken] = []
    if ctx.notice:
        notices.append(DescriptionToken("boundaryNotice", ctx.notice))
    if ctx.boundary:
        notices.append(DescriptionToken("boundaryNotice", templates["boundary"][ctx.boundary]))
    if ctx.clamped:
        notices.append(DescriptionToken("clampNotice", templates["clamp"]))
    tokens = notices + tokens

    tokens = _order_tokens(tokens, config.composition, templates)
    return Utterance(tokens=tuple(tokens))


def build_tokens(
    structure: AccessStructure,
    node: AccessNode,
    ctx: DescribeContext,
    templates: dict,
    sig: int = 4,
) -> list[DescriptionToken]:
    """The full high-verbosity token list for a node (unordered by composition)."""
    key = _template_key(node)
    try:
        specs = templates["tokens"][key]
    except KeyError:
        raise KeyError(f"no description templates for node kind {key!r}") from None
    context = _node_context(structure, node, sig)
    tokens = []
    for spec in specs:
        text = _fill(spec["template"], context)
        if text is None:
            continue
        repeated = False
        if spec["kind"] == "branchContext":
            repeated = text == ctx.previous_branch_context
        tokens.append(DescriptionToken(spec["kind"], text, glue=spec.get("glue", False), repeated=repeated))
    return tokens


def verbosity_filter(
    tokens: list[DescriptionToken], level: Verbosity | str, templates: dict | None = None
) -> list[DescriptionToken]:
    """Filter a high-verbosity token list down to `level`, preserving order."""
    templates = templates or load_templates()
    allowed: dict[str, str] = {}
    for entry in templates["verbosity"][Verbosity(level).value]:
        kind, _, qualifier = entry.partition(":")
        allowed[kind] = qualifier
    out = []
    for token in tokens:
        qualifier = allowed.get(token.kind)
        if qualifier is None:
            continue
        if qualifier == "unrepeated" and token.repeated:
            continue
        out.append(token)
    return out


def _order_tokens(tokens: list[DescriptionToken], composition: Composition, templates: dict) -> list[DescriptionToken]:
    order = templates["composition"][Composition(composition).value]
    position = {kind: i for i, kind in enumerate(order)}
    units: list[list[DescriptionToken]] = []
    for token in tokens:
        if token.glue and units:
            units[-1].append(token)
        else:
            units.append([token])
    units.sort(key=lambda unit: position.get(unit[0].kind, len(position)))
    return [token for unit in units for token in unit]


def describe_structure_summary(structure: AccessStructure, templates: dict | None = None) -> Utterance:
    """One-utterance overview: title, mark, encodings, domains, and size.

    Serves as the root description and as exportable baseline alt text;
    independent of per-session verbosity settings.
    """
    templates = templates or load_templates()
    root = structure.root
    tokens = build_tokens(structure, root, DescribeContext(), templates)
    tokens = _order_tokens(tokens, Composition.CONTEXT_FIRST, templates)
    return Utterance(tokens=tuple(tokens))


def branch_context_text(structure: AccessStructure, node: AccessNode, sig: int = 4) -> str | None:
    """The wayfinding context token text for a node (None when there is none)."""
    context = _node_context(structure, node, sig)
    for spec in load_templates()["tokens"].get(_template_key(node), []):
        if spec["kind"] == "branchContext":
            return _fill(spec["template"], context)
    return None


def _template_key(node: AccessNode) -> str:
    if node.kind == NodeKind.CHANNEL_BRANCH:
        return f"channelBranch.{node.role}"
    if node.kind == NodeKind.INTERVAL:
        return f"intervalNode.{node.role}"
    if node.kind == NodeKind.CATEGORY:
        role = node.role if node.role in ("x", "y", "legend", "drill") else "drill"
        return f"categoryNode.{role}"
    if node.kind == NodeKind.DATA_SPLIT:
        return f"dataSplitNode.{node.role if node.role in ('binary', 'drill') else 'drill'}"
    return node.kind.value


def _fmt(value, field_type: str | FieldType | None, sig: int) -> str:
    if field_type in (FieldType.TEMPORAL, "temporal"):
        return epoch_day_to_iso(value)
    if isinstance(value, (int, float)):
        return format_number(value, sig)
    return str(value)


def _node_context(structure: AccessStructure, node: AccessNode, sig: int) -> dict:
    table = structure.table
    spec = structure.spec
    meta = node.meta
    context: dict = {"count": node.selection.count, "label": node.label}

    facet = _facet_ancestor(structure, node)
    if facet is not None and node.kind != NodeKind.FACET_BRANCH:
        context["facet_context"] = f"{facet.meta['field']}: {facet.meta['value']}"

    if "index" in meta:
        context["index1"] = meta["index"] + 1
        context["of"] = meta.get("of")

    kind = node.kind
    if kind == NodeKind.ROOT:
        if spec.title:
            context["title"] = spec.title
        context["construction"] = _construction_text(structure, sig)
    elif kind == NodeKind.CHANNEL_BRANCH:
        context.update(meta)
        if node.role == "grid":
            context["range"] = f"{meta['x_field']} by {meta['y_field']}"
        else:
            field_meta = table.field(meta["field"])
            interval_scaled = meta.get("field_type") in ("quantitative", "temporal")
            if interval_scaled and field_meta.domain:
                lo, hi = field_meta.domain
                ft = field_meta.inferred_type
                context["lo"], context["hi"] = _fmt(lo, ft, sig), _fmt(hi, ft, sig)
                context["range"] = f"{meta['field']} from {context['lo']} to {context['hi']}"
            else:
                context["range"] = f"{meta['field']}, {meta.get('level_count', 0)} categories"
            context["stats"] = _stats_text(structure, node, sig)
    elif kind == NodeKind.INTERVAL:
        ft = meta.get("field_type")
        context["field"] = meta["field"]
        context["lo"], context["hi"] = _fmt(meta["lo"], ft, sig), _fmt(meta["hi"], ft, sig)
        context["range"] = f"{meta['field']} from {context['lo']} to {context['hi']}"
        context["stats"] = _stats_text(structure, node, sig)
    elif kind == NodeKind.CATEGORY:
        context["field"] = meta["field"]
        context["field_title"] = str(meta["field"]).capitalize()
        context["category"] = meta["value"]
        if "color" in meta:
            context["encoding"] = meta["color"]
        context["stats"] = _stats_text(structure, node, sig)
        if node.role == "drill":
            parent = structure.parent(node)
            if parent is not None and parent.kind == NodeKind.CATEGORY:
                context["parent_context"] = f"{parent.meta['field']}: {parent.meta['value']}"
    elif kind == NodeKind.GRID_CELL:
        context["col1"] = meta["col"] + 1
        context["row1"] = meta["row"] + 1
        context["n_cols"], context["n_rows"] = meta["n_cols"], meta["n_rows"]
        x_ft = table.field(meta["x_field"]).inferred_type
        y_ft = table.field(meta["y_field"]).inferred_type
        context["range"] = (
            f"x from {_fmt(meta['x_lo'], x_ft, sig)} to {_fmt(meta['x_hi'], x_ft, sig)}, "
            f"y from {_fmt(meta['y_lo'], y_ft, sig)} to {_fmt(meta['y_hi'], y_ft, sig)}"
        )
        context["stats"] = _stats_text(structure, node, sig)
    elif kind == NodeKind.FACET_BRANCH:
        context["field"] = meta["field"]
        context["category"] = meta["value"]
        context["stats"] = _stats_text(structure, node, sig)
    elif kind == NodeKind.ANNOTATION_BRANCH:
        context["n_regions"] = meta["count"]
    elif kind == NodeKind.ANNOTATION_REGION:
        ft = meta.get("field_type")
        lo, hi = _fmt(meta["lo"], ft, sig), _fmt(meta["hi"], ft, sig)
        context["range"] = f"{meta['label']}, {meta['field']} from {lo} to {hi}"
        if meta.get("note"):
            context["note"] = meta["note"]
        context["stats"] = _stats_text(structure, node, sig)
    elif kind == NodeKind.DATA_SPLIT:
        if node.role == "binary":
            ft = meta.get("field_type")
            lo, hi = _fmt(meta["lo"], ft, sig), _fmt(meta["hi"], ft, sig)
            context["range"] = f"{meta['field']} from {lo} to {hi}"
            context["n_values"] = meta["n_values"]
            context["stats"] = _stats_text(structure, node, sig)
        else:
            context["field"] = meta["field"]
            context["n_groups"] = len(node.child_ids)
            context["range"] = f"by {meta['field']}, {len(node.child_ids)} groups"
    elif kind == NodeKind.DATUM:
        context["values"] = _datum_values_text(structure, node, sig)
        parent = structure.parent(node)
        if parent is not None:
            parent_ctx = _parent_context_text(structure, parent, sig)
            if parent_ctx:
                context["parent_context"] = parent_ctx
    elif kind == NodeKind.TABLE_CELL:
        context["row1"] = meta["row"] + 1
        context["col1"] = meta["col"] + 1
        context["n_rows"], context["n_cols"] = meta["n_rows"], meta["n_cols"]
        context["values"] = f"{meta['field']} = {meta['value']}"
    elif kind == NodeKind.LIST_ITEM:
        context["text"] = node.label

    return context


def _facet_ancestor(structure: AccessStructure, node: AccessNode) -> AccessNode | None:
    current = node
    while current.parent_id is not None:
        current = structure.nodes[current.parent_id]
        if current.kind == NodeKind.FACET_BRANCH:
            return current
    return None


def _parent_context_text(structure: AccessStructure, parent: AccessNode, sig: int) -> str | None:
    meta = parent.meta
    if parent.kind == NodeKind.CATEGORY:
        if parent.role == "legend":
            return f"Category: {meta['value']}"
        return f"{meta['field']}: {meta['value']}"
    if parent.kind == NodeKind.INTERVAL:
        ft = meta.get("field_type")
        return f"{meta['field']} from {_fmt(meta['lo'], ft, sig)} to {_fmt(meta['hi'], ft, sig)}"
    if parent.kind == NodeKind.GRID_CELL:
        return f"cell column {meta['col'] + 1}, row {meta['row'] + 1}"
    if parent.kind == NodeKind.ANNOTATION_REGION:
        return str(meta["label"])
    if parent.kind == NodeKind.DATA_SPLIT and parent.role == "binary":
        ft = meta.get("field_type")
        return f"{meta['field']} from {_fmt(meta['lo'], ft, sig)} to {_fmt(meta['hi'], ft, sig)}"
    return None


def _datum_values_text(structure: AccessStructure, node: AccessNode, sig: int) -> str:
    spec = structure.spec
    row_id = node.meta["row_id"]
    row = structure.table.rows[row_id]
    under_legend_category = _has_legend_category_ancestor(structure, node)
    parts = []
    for enc in spec.encodings:
        if enc.channel == Channel.COLOR and under_legend_category:
            continue  # the category context already names it
        value = row[enc.field]
        parts.append(f"{enc.channel.value} = {_fmt(value, enc.field_type, sig) if value is not None else 'empty'}")
    return ", ".join(parts)


def _has_legend_category_ancestor(structure: AccessStructure, node: AccessNode) -> bool:
    current = node
    while current.parent_id is not None:
        current = structure.nodes[current.parent_id]
        if current.kind == NodeKind.CATEGORY and current.role == "legend":
            return True
    return False


def _stats_text(structure: AccessStructure, node: AccessNode, sig: int) -> str | None:
    field_name = _measure_field(structure.spec, structure, node)
    if field_name is None or node.selection.count == 0:
        return None
    summary = summarize(node.selection, structure.table, [field_name])
    stats = summary.numeric.get(field_name)
    if stats is None:
        return None
    ft = structure.table.field(field_name).inferred_type
    return (
        f"{field_name} mean {_fmt(stats.mean, ft, sig)}, "
        f"min {_fmt(stats.minimum, ft, sig)}, max {_fmt(stats.maximum, ft, sig)}"
    )


def _measure_field(spec: ChartSpec, structure: AccessStructure, node: AccessNode) -> str | None:
    x_enc = spec.encoding(Channel.X)
    y_enc = spec.encoding(Channel.Y)
    if node.role == "y":
        candidates = [x_enc, y_enc]
    else:
        candidates = [y_enc, x_enc]
    for enc in candidates:
        if enc is not None and structure.table.has_field(enc.field) and structure.table.field(enc.field).is_numeric:
            return enc.field
    return None


def _construction_text(structure: AccessStructure, sig: int) -> str:
    spec = structure.spec
    table = structure.table
    words = {Channel.X: "X-axis", Channel.Y: "Y-axis", Channel.COLOR: "Legend"}
    parts = [f"{spec.mark.value.capitalize()} mark."]
    for enc in spec.encodings:
        if not table.has_field(enc.field):
            continue
        field_meta = table.field(enc.field)
        if enc.is_interval_scaled and field_meta.domain:
            lo, hi = field_meta.domain
            ft = field_meta.inferred_type
            parts.append(
                f"{words[enc.channel]}: {enc.field} ({enc.field_type.value}) "
                f"from {_fmt(lo, ft, sig)} to {_fmt(hi, ft, sig)}."
            )
        else:
            n = len(categorical_values(table, enc.field))
            parts.append(f"{words[enc.channel]}: {enc.field} ({enc.field_type.value}) with {n} categories.")
    if "grid" in structure.branch_registry:
        grid = structure.nodes[structure.branch_registry["grid"]]
        parts.append(f"Grid of {grid.meta['n_cols']} by {grid.meta['n_rows']} cells.")
    if spec.facet is not None and structure.variant.value == "facetedTree":
        n_facets = structure.root.meta.get("facet_count", 0)
        parts.append(f"{n_facets} views by {spec.facet.field}.")
    if spec.annotations and structure.variant.value in ("annotationTree", "multiBranch"):
        parts.append(f"{len(spec.annotations)} annotated regions.")
    return " ".join(parts)


def categorical_values(table, field_name: str) -> list:
    seen = []
    for value in table.values(field_name):
        if value is not None and value not in seen:
            seen.append(value)
    return seen
