"""Compile a chart spec plus a data table into a traversable structure.

Eight structure variants are supported: flat list and data table baselines,
the encoding tree (one branch per channel plus the x-y grid), annotation
trees, recursive binary trees over a quantitative axis, faceted trees,
nested categorical drill-downs, and multi-branch combinations (encoding +
annotations as sibling branches, or several drill orders side by side).

Structures are immutable after build; any number of sessions may traverse
one structure concurrently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from enum import Enum

from .errors import ConfigError
from .formatting import format_number, sanitize_id_part
from .intervals import Interval, compute_intervals
from .selection import (
    CategoryConstraint,
    NonNullConstraint,
    Selection,
    grid_cells,
    interval_constraint,
    narrow,
    pin_row,
    select,
)
from .spec_model import Channel, ChartSpec, EncodingDef
from .tabular import DataTable, FieldType, categorical_domain, format_cell


class NodeKind(str, Enum):
    ROOT = "root"
    FACET_BRANCH = "facetBranch"
    CHANNEL_BRANCH = "channelBranch"
    INTERVAL = "intervalNode"
    CATEGORY = "categoryNode"
    GRID_CELL = "gridCellNode"
    ANNOTATION_BRANCH = "annotationBranch"
    ANNOTATION_REGION = "annotationRegion"
    DATA_SPLIT = "dataSplitNode"
    DATUM = "datumLeaf"
    TABLE_CELL = "tableCell"
    LIST_ITEM = "listItem"


class Granularity(str, Enum):
    EXISTENCE = "existence"
    OVERVIEW = "overview"
    DETAIL = "detail"


class StructureForm(str, Enum):
    LIST = "list"
    TABLE = "table"
    TREE = "tree"


class Variant(str, Enum):
    FLAT_LIST = "flatList"
    DATA_TABLE = "dataTable"
    ENCODING_TREE = "encodingTree"
    ANNOTATION_TREE = "annotationTree"
    BINARY_TREE = "binaryTree"
    MULTI_BRANCH = "multiBranch"
    FACETED_TREE = "facetedTree"
    NESTED_CATEGORY_TREE = "nestedCategoryTree"


_DETAIL_KINDS = {NodeKind.DATUM, NodeKind.TABLE_CELL}
DEFAULT_BRANCH_ORDER = ("x", "y", "legend", "grid", "annotations")


@dataclass(frozen=True)
class StructureConfig:
    variant: Variant = Variant.ENCODING_TREE
    branch_order: tuple[str, ...] = DEFAULT_BRANCH_ORDER
    binary_leaf_size: int = 1
    drill_orders: tuple[tuple[str, ...], ...] | None = None


@dataclass
class AccessNode:
    """One traversable element; granularity follows kind (root=existence,
    datum/table cells=detail, everything else=overview)."""

    id: str
    kind: NodeKind
    role: str
    label: str
    selection: Selection
    parent_id: str | None
    child_ids: list[str] = dc_field(default_factory=list)
    spatial_coord: tuple[int, int] | None = None  # (col, row), row 0 at bottom
    meta: dict = dc_field(default_factory=dict)

    @property
    def granularity(self) -> Granularity:
        if self.kind == NodeKind.ROOT:
            return Granularity.EXISTENCE
        if self.kind in _DETAIL_KINDS:
            return Granularity.DETAIL
        return Granularity.OVERVIEW


@dataclass
class AccessStructure:
    form: StructureForm
    variant: Variant
    root_id: str
    nodes: dict[str, AccessNode]
    branch_registry: dict[str, str]
    landmark_index: dict[NodeKind, list[str]]
    switch_units: list[tuple[str, tuple[str, ...]]]
    spec: ChartSpec
    table: DataTable
    config: StructureConfig

    def node(self, node_id: str) -> AccessNode:
        return self.nodes[node_id]

    @property
    def root(self) -> AccessNode:
        return self.nodes[self.root_id]

    def parent(self, node: AccessNode) -> AccessNode | None:
        return self.nodes[node.parent_id] if node.parent_id else None

    def children(self, node: AccessNode) -> list[AccessNode]:
        return [self.nodes[cid] for cid in node.child_ids]

    def sibling_ids(self, node: AccessNode) -> list[str]:
        if node.parent_id is None:
            return [node.id]
        return self.nodes[node.parent_id].child_ids

    def depth(self, node: AccessNode) -> int:
        depth = 0
        while node.parent_id is not None:
            node = self.nodes[node.parent_id]
            depth += 1
        return depth

    def top_branch(self, node: AccessNode) -> AccessNode | None:
        """The ancestor (or self) that is a direct child of the root."""
        if node.id == self.root_id:
            return None
        while node.parent_id != self.root_id:
            node = self.nodes[node.parent_id]
        return node

    def index_path(self, node: AccessNode, ancestor: AccessNode) -> list[int]:
        """Child-index path from `ancestor` down to `node`."""
        path: list[int] = []
        while node.id != ancestor.id:
            parent = self.nodes[node.parent_id]
            path.append(parent.child_ids.index(node.id))
            node = parent
        path.reverse()
        return path

    def spatial_lookup(self, parent_id: str, coord: tuple[int, int]) -> str | None:
        for cid in self.nodes[parent_id].child_ids:
            if self.nodes[cid].spatial_coord == coord:
                return cid
        return None


class _Builder:
    def __init__(self, spec: ChartSpec, table: DataTable, config: StructureConfig):
        self.spec = spec
        self.table = table
        self.config = config
        self.nodes: dict[str, AccessNode] = {}
        self.registry: dict[str, str] = {}
        self.switch_units: list[tuple[str, tuple[str, ...]]] = []

    def add(
        self,
        parent: AccessNode | None,
        id_part: str,
        kind: NodeKind,
        role: str,
        label: str,
        selection: Selection,
        spatial_coord: tuple[int, int] | None = None,
        meta: dict | None = None,
    ) -> AccessNode:
        base = id_part if parent is None else f"{parent.id}/{sanitize_id_part(id_part)}"
        node_id = base
        bump = 2
        while node_id in self.nodes:
            node_id = f"{base}-{bump}"
            bump += 1
        node = AccessNode(
            id=node_id,
            kind=kind,
            role=role,
            label=label,
            selection=selection,
            parent_id=parent.id if parent else None,
            spatial_coord=spatial_coord,
            meta=meta or {},
        )
        self.nodes[node_id] = node
        if parent is not None:
            parent.child_ids.append(node_id)
        return node

    # -- shared pieces -------------------------------------------------

    def root(self, extra_meta: dict | None = None) -> AccessNode:
        label = self.spec.title or f"{self.spec.mark.value} chart"
        return self.add(None, "root", NodeKind.ROOT, "root", label, select(self.table, ()), meta=extra_meta)

    def value_sort_key(self, field_name: str | None):
        """Sort key for datum ordering: nulls first, then value, then row id."""
        if field_name is None or not self.table.has_field(field_name):
            return lambda rid: (0, 0, rid)
        meta = self.table.field(field_name)
        if meta.is_numeric:
            value_key = lambda v: v
        else:
            rank = {v: i for i, v in enumerate(meta.domain)}
            value_key = lambda v: rank.get(v, len(rank))
        def key(rid: int):
            v = self.table.rows[rid][field_name]
            if v is None:
                return (0, 0, rid)
            return (1, value_key(v), rid)
        return key

    def datum_label(self, row_id: int) -> str:
        parts = []
        for enc in self.spec.encodings:
            value = self.table.rows[row_id][enc.field]
            parts.append(f"{enc.channel.value} = {format_cell(value, enc.field_type)}")
        return ", ".join(parts)

    def add_datum_leaves(self, parent: AccessNode, order_field: str | None) -> None:
        ordered = sorted(parent.selection.member_row_ids, key=self.value_sort_key(order_field))
        total = len(ordered)
        for index, rid in enumerate(ordered):
            self.add(
                parent,
                f"datum-{rid}",
                NodeKind.DATUM,
                parent.role,
                self.datum_label(rid),
                pin_row(parent.selection, rid),
                meta={"row_id": rid, "index": index, "of": total},
            )

    def axis_levels(self, enc: EncodingDef) -> tuple[str, list]:
        """("interval", [Interval]) or ("category", [raw values]) per declared type."""
        meta = self.table.field(enc.field)
        if enc.is_interval_scaled:
            target = enc.bin.max_bins if enc.bin else 10
            return "interval", compute_intervals(meta, target)
        return "category", categorical_domain(self.table, enc.field)

    def add_interval_children(self, branch: AccessNode, enc: EncodingDef, intervals: list[Interval]) -> None:
        for i, interval in enumerate(intervals):
            node = self.add(
                branch,
                f"interval-{i}",
                NodeKind.INTERVAL,
                branch.role,
                interval.label,
                narrow(self.table, branch.selection, interval_constraint(enc.field, interval)),
                meta={"field": enc.field, "lo": interval.lo, "hi": interval.hi,
                      "index": i, "of": len(intervals), "field_type": enc.field_type.value},
            )
            self.add_datum_leaves(node, enc.field)

    def add_category_children(self, branch: AccessNode, enc: EncodingDef, categories: list) -> None:
        meta = self.table.field(enc.field)
        x_enc = self.spec.encoding(Channel.X)
        order_field = enc.field if branch.role in ("x", "y") else (x_enc.field if x_enc else None)
        for i, category in enumerate(categories):
            label = format_cell(category, meta.inferred_type)
            node_meta = {"field": enc.field, "value": label, "index": i, "of": len(categories)}
            if branch.role == "legend":
                node_meta["color"] = color_for_index(i)
            node = self.add(
                branch,
                f"category-{label}",
                NodeKind.CATEGORY,
                branch.role,
                label,
                narrow(self.table, branch.selection, CategoryConstraint(field=enc.field, values=(category,))),
                meta=node_meta,
            )
            self.add_datum_leaves(node, order_field)

    def channel_branch(self, parent: AccessNode, enc: EncodingDef, base_selection: Selection) -> AccessNode:
        role = "legend" if enc.channel == Channel.COLOR else enc.channel.value
        word = {"x": "X-axis", "y": "Y-axis", "legend": "Legend"}[role]
        branch = self.add(
            parent,
            role,
            NodeKind.CHANNEL_BRANCH,
            role,
            f"{word}: {enc.field}",
            narrow(self.table, base_selection, NonNullConstraint(enc.field)),
            meta={"field": enc.field, "channel": enc.channel.value, "field_type": enc.field_type.value},
        )
        level_kind, levels = self.axis_levels(enc)
        branch.meta["level_count"] = len(levels)
        if level_kind == "interval":
            self.add_interval_children(branch, enc, levels)
        else:
            self.add_category_children(branch, enc, levels)
        return branch

    def grid_branch(self, parent: AccessNode, base_selection: Selection) -> AccessNode | None:
        x_enc = self.spec.encoding(Channel.X)
        y_enc = self.spec.encoding(Channel.Y)
        if x_enc is None or y_enc is None or not (x_enc.is_interval_scaled and y_enc.is_interval_scaled):
            return None
        x_intervals = self.axis_levels(x_enc)[1]
        y_intervals = self.axis_levels(y_enc)[1]
        branch = self.add(
            parent,
            "grid",
            NodeKind.CHANNEL_BRANCH,
            "grid",
            "Grid",
            narrow(
                self.table,
                narrow(self.table, base_selection, NonNullConstraint(x_enc.field)),
                NonNullConstraint(y_enc.field),
            ),
            meta={"x_field": x_enc.field, "y_field": y_enc.field,
                  "n_cols": len(x_intervals), "n_rows": len(y_intervals)},
        )
        cells = grid_cells(self.table, x_enc.field, x_intervals, y_enc.field, y_intervals)
        base_ids = set(base_selection.member_row_ids)
        # document order: screen reading order, top row first, left to right
        for row in range(len(y_intervals) - 1, -1, -1):
            for col in range(len(x_intervals)):
                cell_sel = cells[col][row]
                members = tuple(rid for rid in cell_sel.member_row_ids if rid in base_ids)
                node = self.add(
                    branch,
                    f"cell-{col}-{row}",
                    NodeKind.GRID_CELL,
                    "grid",
                    f"x {x_intervals[col].label}, y {y_intervals[row].label}",
                    Selection(
                        constraints=base_selection.constraints + cell_sel.constraints,
                        member_row_ids=members,
                    ),
                    spatial_coord=(col, row),
                    meta={"col": col, "row": row, "n_cols": len(x_intervals), "n_rows": len(y_intervals),
                          "x_field": x_enc.field, "y_field": y_enc.field,
                          "x_lo": x_intervals[col].lo, "x_hi": x_intervals[col].hi,
                          "y_lo": y_intervals[row].lo, "y_hi": y_intervals[row].hi},
                )
                self.add_datum_leaves(node, x_enc.field)
        return branch

    def encoding_branches(self, parent: AccessNode, base_selection: Selection, include_annotations: bool) -> None:
        for name in self.config.branch_order:
            if name == "x" and self.spec.encoding(Channel.X):
                branch = self.channel_branch(parent, self.spec.encoding(Channel.X), base_selection)
            elif name == "y" and self.spec.encoding(Channel.Y):
                branch = self.channel_branch(parent, self.spec.encoding(Channel.Y), base_selection)
            elif name == "legend" and self.spec.encoding(Channel.COLOR):
                branch = self.channel_branch(parent, self.spec.encoding(Channel.COLOR), base_selection)
            elif name == "grid":
                branch = self.grid_branch(parent, base_selection)
            elif name == "annotations" and include_annotations and self.spec.annotations:
                branch = self.annotation_branch(parent, base_selection)
            else:
                branch = None
            if branch is not None and parent.kind == NodeKind.ROOT:
                self.registry[name] = branch.id

    def annotation_regions(self, parent: AccessNode, base_selection: Selection) -> list[AccessNode]:
        regions = []
        total = len(self.spec.annotations)
        for i, annotation in enumerate(self.spec.annotations):
            enc = self.spec.encoding(annotation.target_channel)
            constraint = interval_constraint(
                enc.field, Interval(annotation.lo, annotation.hi, True, True, "")
            )
            node = self.add(
                parent,
                f"region-{i}",
                NodeKind.ANNOTATION_REGION,
                "annotation",
                annotation.label,
                narrow(self.table, base_selection, constraint),
                meta={"label": annotation.label, "channel": annotation.target_channel.value,
                      "field": enc.field, "lo": annotation.lo, "hi": annotation.hi,
                      "note": annotation.note, "index": i, "of": total,
                      "field_type": enc.field_type.value},
            )
            self.add_datum_leaves(node, enc.field)
            regions.append(node)
        return regions

    def annotation_branch(self, parent: AccessNode, base_selection: Selection) -> AccessNode:
        covered = set()
        for annotation in self.spec.annotations:
            enc = self.spec.encoding(annotation.target_channel)
            c = interval_constraint(enc.field, Interval(annotation.lo, annotation.hi, True, True, ""))
            covered.update(rid for rid in base_selection.member_row_ids if c.matches(self.table.rows[rid][c.field]))
        branch = self.add(
            parent,
            "annotations",
            NodeKind.ANNOTATION_BRANCH,
            "annotations",
            "Annotations",
            Selection(constraints=base_selection.constraints, member_row_ids=tuple(sorted(covered))),
            meta={"count": len(self.spec.annotations)},
        )
        self.annotation_regions(branch, base_selection)
        return branch

    def drill_levels(self, parent: AccessNode, fields: tuple[str, ...], base_selection: Selection) -> None:
        field_name = fields[0]
        meta = self.table.field(field_name)
        categories = categorical_domain(self.table, field_name)
        scoped = narrow(self.table, base_selection, NonNullConstraint(field_name))
        x_enc = self.spec.encoding(Channel.X)
        present = [
            (i, category, narrow(self.table, scoped, CategoryConstraint(field=field_name, values=(category,))))
            for i, category in enumerate(categories)
        ]
        # categories absent within this parent's slice are omitted, not empty
        present = [(i, c, sel) for i, c, sel in present if sel.count > 0]
        for position, (_, category, selection) in enumerate(present):
            label = format_cell(category, meta.inferred_type)
            node = self.add(
                parent,
                f"category-{label}",
                NodeKind.CATEGORY,
                "drill",
                label,
                selection,
                meta={"field": field_name, "value": label, "index": position, "of": len(present)},
            )
            if len(fields) > 1:
                self.drill_levels(node, fields[1:], node.selection)
            else:
                self.add_datum_leaves(node, x_enc.field if x_enc else None)

    # -- variants ------------------------------------------------------

    def build_encoding_tree(self) -> AccessNode:
        root = self.root()
        self.encoding_branches(root, root.selection, include_annotations=False)
        return root

    def build_faceted_tree(self) -> AccessNode:
        facet = self.spec.facet
        if facet is None:
            raise ConfigError("facetedTree requires a facet definition in the spec")
        meta = self.table.field(facet.field)
        categories = categorical_domain(self.table, facet.field, facet.order)
        root = self.root({"facet_field": facet.field, "facet_count": len(categories)})
        for i, category in enumerate(categories):
            label = format_cell(category, meta.inferred_type)
            branch = self.add(
                root,
                f"facet-{label}",
                NodeKind.FACET_BRANCH,
                "facet",
                label,
                select(self.table, (CategoryConstraint(field=facet.field, values=(category,)),)),
                meta={"field": facet.field, "value": label, "index": i, "of": len(categories)},
            )
            self.registry[f"facet:{label}"] = branch.id
            self.encoding_branches(branch, branch.selection, include_annotations=False)
        return root

    def build_annotation_tree(self) -> AccessNode:
        if not self.spec.annotations:
            raise ConfigError("annotationTree requires at least one annotation in the spec")
        root = self.root()
        regions = self.annotation_regions(root, root.selection)
        for region in regions:
            self.registry[f"region:{region.label}"] = region.id
        return root

    def build_binary_tree(self) -> AccessNode:
        x_enc = self.spec.encoding(Channel.X)
        if x_enc is None or not x_enc.is_interval_scaled:
            raise ConfigError("binaryTree requires a quantitative or temporal x channel")
        leaf_size = self.config.binary_leaf_size
        if leaf_size < 1:
            raise ConfigError("binaryLeafSize must be >= 1")
        field_name = x_enc.field
        temporal = x_enc.field_type == FieldType.TEMPORAL
        values = sorted({v for v in self.table.values(field_name) if v is not None})
        root = self.root({"field": field_name, "n_values": len(values)})
        root.selection = narrow(self.table, root.selection, NonNullConstraint(field_name))
        self.nodes[root.id] = root
        if values:
            self._split_span(root, field_name, values, 0, len(values) - 1, leaf_size, temporal)
        return root

    def _span_selection(self, parent_sel: Selection, field_name: str, lo, hi) -> Selection:
        return narrow(self.table, parent_sel, interval_constraint(field_name, Interval(lo, hi, True, True, "")))

    def _split_span(self, parent, field_name, values, i, j, leaf_size, temporal) -> None:
        """Children of `parent` covering distinct-value index range [i, j]."""
        count = j - i + 1
        if count > leaf_size:
            mid = i + count // 2  # left gets the smaller half on odd counts
            self._add_span(parent, field_name, values, i, mid - 1, leaf_size, temporal)
            self._add_span(parent, field_name, values, mid, j, leaf_size, temporal)
        else:
            order = self.value_sort_key(field_name)
            for rid in sorted(parent.selection.member_row_ids, key=order):
                self.add(
                    parent,
                    f"datum-{rid}",
                    NodeKind.DATUM,
                    "binary",
                    self.datum_label(rid),
                    pin_row(parent.selection, rid),
                    meta={"row_id": rid},
                )

    def _add_span(self, parent, field_name, values, i, j, leaf_size, temporal) -> None:
        lo, hi = values[i], values[j]
        selection = self._span_selection(parent.selection, field_name, lo, hi)
        count = j - i + 1
        if count <= leaf_size and selection.count == 1:
            rid = selection.member_row_ids[0]
            self.add(
                parent,
                f"datum-{rid}",
                NodeKind.DATUM,
                "binary",
                self.datum_label(rid),
                selection,
                meta={"row_id": rid},
            )
            return
        from .formatting import epoch_day_to_iso

        fmt = epoch_day_to_iso if temporal else format_number
        node = self.add(
            parent,
            f"span-{i}-{j}",
            NodeKind.DATA_SPLIT,
            "binary",
            f"{fmt(lo)}–{fmt(hi)}",
            selection,
            meta={"field": field_name, "lo": lo, "hi": hi, "n_values": count,
                  "field_type": "temporal" if temporal else "quantitative"},
        )
        self._split_span(node, field_name, values, i, j, leaf_size, temporal)

    def build_nested_category_tree(self) -> AccessNode:
        fields = self._drill_fields(minimum=2, maximum=1)
        root = self.root({"drill": list(fields[0])})
        self.drill_levels(root, fields[0], root.selection)
        return root

    def build_multi_branch(self) -> AccessNode:
        if self.config.drill_orders:
            fields = self._drill_fields(minimum=1, maximum=None)
            if len(fields) < 2:
                raise ConfigError("multiBranch with drill orders needs at least two orders")
            root = self.root()
            for order in fields:
                branch = self.add(
                    root,
                    f"drill-{order[0]}",
                    NodeKind.DATA_SPLIT,
                    "drill",
                    f"By {order[0]}",
                    narrow(self.table, root.selection, NonNullConstraint(order[0])),
                    meta={"field": order[0], "order": list(order)},
                )
                self.registry[f"drill:{order[0]}"] = branch.id
                self.drill_levels(branch, order, branch.selection)
                self.switch_units.append((f"drill:{order[0]}", (branch.id,)))
            return root
        if not self.spec.annotations:
            raise ConfigError("multiBranch requires annotations or drill orders")
        root = self.root()
        self.encoding_branches(root, root.selection, include_annotations=True)
        encoding_ids = tuple(
            self.registry[name] for name in ("x", "y", "legend", "grid") if name in self.registry
        )
        self.switch_units.append(("encodings", encoding_ids))
        self.switch_units.append(("annotations", (self.registry["annotations"],)))
        return root

    def _drill_fields(self, minimum: int, maximum: int | None) -> tuple[tuple[str, ...], ...]:
        orders = self.config.drill_orders
        if not orders:
            raise ConfigError("this variant requires drillOrders")
        if maximum is not None and len(orders) > maximum:
            raise ConfigError(f"expected at most {maximum} drill order(s)")
        for order in orders:
            if len(order) < minimum:
                raise ConfigError(f"drill orders need at least {minimum} field(s)")
            for name in order:
                if not self.table.has_field(name):
                    raise ConfigError(f"drill field {name!r} not present in the data")
                if self.table.field(name).is_numeric:
                    raise ConfigError(f"drill field {name!r} must be categorical")
        return tuple(tuple(order) for order in orders)

    def build_flat_list(self) -> AccessNode:
        root = self.root()
        for enc in self.spec.encodings:
            meta = self.table.field(enc.field)
            word = {Channel.X: "X-axis", Channel.Y: "Y-axis", Channel.COLOR: "Legend"}[enc.channel]
            if enc.is_interval_scaled and meta.domain:
                lo, hi = meta.domain
                text = (
                    f"{word}: {enc.field} ({enc.field_type.value}) from "
                    f"{format_cell(lo, meta.inferred_type)} to {format_cell(hi, meta.inferred_type)}"
                )
            else:
                n = len(categorical_domain(self.table, enc.field))
                text = f"{word}: {enc.field} ({enc.field_type.value}) with {n} categories"
            self.add(
                root,
                f"about-{enc.channel.value}",
                NodeKind.LIST_ITEM,
                "about",
                text,
                narrow(self.table, root.selection, NonNullConstraint(enc.field)),
                meta={"field": enc.field, "channel": enc.channel.value},
            )
        members = root.selection
        for enc in self.spec.encodings:
            members = narrow(self.table, members, NonNullConstraint(enc.field))
        x_enc = self.spec.encoding(Channel.X)
        ordered = sorted(members.member_row_ids, key=self.value_sort_key(x_enc.field if x_enc else None))
        total = len(ordered)
        for index, rid in enumerate(ordered):
            self.add(
                root,
                f"datum-{rid}",
                NodeKind.DATUM,
                "list",
                self.datum_label(rid),
                pin_row(members, rid),
                meta={"row_id": rid, "index": index, "of": total},
            )
        return root

    def build_data_table(self) -> AccessNode:
        root = self.root({"n_rows": len(self.table.rows), "n_cols": len(self.table.fields)})
        n_rows = len(self.table.rows)
        for row_id in self.table.row_ids:
            for col, meta in enumerate(self.table.fields):
                value = self.table.rows[row_id][meta.name]
                self.add(
                    root,
                    f"cell-r{row_id}-c{col}",
                    NodeKind.TABLE_CELL,
                    "table",
                    f"{meta.name}: {format_cell(value, meta.inferred_type)}",
                    pin_row(root.selection, row_id),
                    spatial_coord=(col, n_rows - 1 - row_id),
                    meta={"field": meta.name, "row": row_id, "col": col,
                          "n_rows": n_rows, "n_cols": len(self.table.fields),
                          "value": format_cell(value, meta.inferred_type)},
                )
        return root


_BUILDERS = {
    Variant.ENCODING_TREE: _Builder.build_encoding_tree,
    Variant.FACETED_TREE: _Builder.build_faceted_tree,
    Variant.ANNOTATION_TREE: _Builder.build_annotation_tree,
    Variant.BINARY_TREE: _Builder.build_binary_tree,
    Variant.NESTED_CATEGORY_TREE: _Builder.build_nested_category_tree,
    Variant.MULTI_BRANCH: _Builder.build_multi_branch,
    Variant.FLAT_LIST: _Builder.build_flat_list,
    Variant.DATA_TABLE: _Builder.build_data_table,
}

_FORMS = {
    Variant.FLAT_LIST: StructureForm.LIST,
    Variant.DATA_TABLE: StructureForm.TABLE,
}

PALETTE = ("blue", "orange", "green", "red", "purple", "brown", "pink", "gray", "olive", "cyan")


def color_for_index(index: int) -> str:
    return PALETTE[index % len(PALETTE)]


def build_structure(spec: ChartSpec, table: DataTable, config: StructureConfig | None = None) -> AccessStructure:
    """Compile spec + data into a traversable structure.

    Precondition: validate_spec(spec, table) reported no errors. Variant
    mismatches (e.g. binaryTree without a quantitative x) raise ConfigError.
    """
    config = config or StructureConfig()
    builder = _Builder(spec, table, config)
    build = _BUILDERS[config.variant]
    root = build(builder)
    landmark_index: dict[NodeKind, list[str]] = {}
    for node_id in _dfs_order(builder.nodes, root.id):
        node = builder.nodes[node_id]
        landmark_index.setdefault(node.kind, []).append(node_id)
    ordered_nodes = {nid: builder.nodes[nid] for nid in _dfs_order(builder.nodes, root.id)}
    return AccessStructure(
        form=_FORMS.get(config.variant, StructureForm.TREE),
        variant=config.variant,
        root_id=root.id,
        nodes=ordered_nodes,
        branch_registry=builder.registry,
        landmark_index=landmark_index,
        switch_units=builder.switch_units,
        spec=spec,
        table=table,
        config=config,
    )


def _dfs_order(nodes: dict[str, AccessNode], root_id: str) -> list[str]:
    order: list[str] = []
    stack = [root_id]
    while stack:
        node_id = stack.pop()
        order.append(node_id)
        stack.extend(reversed(nodes[node_id].child_ids))
    return order


def attach_landmarks(structure: AccessStructure, levels: list[NodeKind]) -> dict[NodeKind, list[str]]:
    """Ordered landmark ids (document order) for each requested node kind."""
    return {kind: list(structure.landmark_index.get(kind, [])) for kind in levels}


def dump_structure(structure: AccessStructure) -> str:
    """Canonical serialization of the structure; byte-identical across runs."""
    nodes = []
    for node in structure.nodes.values():
        nodes.append(
            {
                "id": node.id,
                "kind": node.kind.value,
                "role": node.role,
                "label": node.label,
                "parentId": node.parent_id,
                "childIds": node.child_ids,
                "spatialCoord": list(node.spatial_coord) if node.spatial_coord else None,
                "granularity": node.granularity.value,
                "rowIds": list(node.selection.member_row_ids),
            }
        )
    doc = {
        "form": structure.form.value,
        "variant": structure.variant.value,
        "rootId": structure.root_id,
        "branches": structure.branch_registry,
        "nodes": nodes,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"
