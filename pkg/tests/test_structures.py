import json

import pytest

from vizcursor import (
    ConfigError,
    NodeKind,
    StructureConfig,
    Variant,
    attach_landmarks,
    build_structure,
    dump_structure,
    load_data,
    parse_chart_spec,
)
from vizcursor.selection import grid_cells
from vizcursor.structures import Granularity, StructureForm
from vizcursor.intervals import compute_intervals


def kinds_of(structure, ids):
    return [structure.node(i).kind for i in ids]


# --- encoding tree ---------------------------------------------------------

def test_scatter_root_has_four_branches(golden_structure):
    roles = [golden_structure.node(c).role for c in golden_structure.root.child_ids]
    assert roles == ["x", "y", "legend", "grid"]
    assert all(k == NodeKind.CHANNEL_BRANCH for k in kinds_of(golden_structure, golden_structure.root.child_ids))


def test_legend_has_one_category_per_category(golden_structure):
    legend = golden_structure.node(golden_structure.branch_registry["legend"])
    labels = [golden_structure.node(c).label for c in legend.child_ids]
    assert labels == ["A", "X", "O"]  # first-appearance order
    assert all(k == NodeKind.CATEGORY for k in kinds_of(golden_structure, legend.child_ids))


def test_grid_cell_count_matches_interval_product(golden_structure, golden_table):
    x_count = len(compute_intervals(golden_table.field("x"), 10))
    y_count = len(compute_intervals(golden_table.field("y"), 10))
    grid = golden_structure.node(golden_structure.branch_registry["grid"])
    assert len(grid.child_ids) == x_count * y_count


def test_grid_cells_match_grid_cells_op(golden_structure, golden_table):
    xi = compute_intervals(golden_table.field("x"), 10)
    yi = compute_intervals(golden_table.field("y"), 10)
    cells = grid_cells(golden_table, "x", xi, "y", yi)
    grid = golden_structure.node(golden_structure.branch_registry["grid"])
    for cid in grid.child_ids:
        node = golden_structure.node(cid)
        col, row = node.spatial_coord
        assert node.selection.member_row_ids == cells[col][row].member_row_ids


def test_granularity_follows_kind(golden_structure):
    for node in golden_structure.nodes.values():
        if node.kind == NodeKind.ROOT:
            assert node.granularity == Granularity.EXISTENCE
        elif node.kind in (NodeKind.DATUM, NodeKind.TABLE_CELL):
            assert node.granularity == Granularity.DETAIL
        else:
            assert node.granularity == Granularity.OVERVIEW


def test_tree_shape_no_cycles_one_parent(gallery_structures):
    for name, structure in gallery_structures.items():
        seen = set()
        stack = [structure.root_id]
        while stack:
            nid = stack.pop()
            assert nid not in seen, f"{name}: node {nid} reached twice"
            seen.add(nid)
            stack.extend(structure.node(nid).child_ids)
        assert seen == set(structure.nodes), name
        for node in structure.nodes.values():
            for cid in node.child_ids:
                assert structure.node(cid).parent_id == node.id


def test_datum_leaf_ids_are_paths(golden_structure):
    legend = golden_structure.node(golden_structure.branch_registry["legend"])
    category = golden_structure.node(legend.child_ids[2])
    assert category.id == "root/legend/category-O"
    first_leaf = golden_structure.node(category.child_ids[0])
    assert first_leaf.id.startswith("root/legend/category-O/datum-")


def test_axis_leaves_sorted_by_axis_value(golden_structure, golden_table):
    x_branch = golden_structure.node(golden_structure.branch_registry["x"])
    for interval_id in x_branch.child_ids:
        interval = golden_structure.node(interval_id)
        values = [golden_table.rows[golden_structure.node(c).meta["row_id"]]["x"] for c in interval.child_ids]
        assert values == sorted(values)


def test_legend_leaves_sorted_by_x_within_category(golden_structure, golden_table):
    legend = golden_structure.node(golden_structure.branch_registry["legend"])
    for cat_id in legend.child_ids:
        category = golden_structure.node(cat_id)
        values = [golden_table.rows[golden_structure.node(c).meta["row_id"]]["x"] for c in category.child_ids]
        assert values == sorted(values)


# --- faceted tree ----------------------------------------------------------

def test_barley_six_isomorphic_facets(gallery_structures):
    structure = gallery_structures["trellis_barley"]
    facets = structure.root.child_ids
    assert len(facets) == 6
    assert all(k == NodeKind.FACET_BRANCH for k in kinds_of(structure, facets))

    def shape(branch_id):
        branch = structure.node(branch_id)
        return [
            (structure.node(c).kind.value, len(structure.node(c).child_ids))
            for c in branch.child_ids
        ]

    shapes = {json.dumps(shape(f)) for f in facets}
    assert len(shapes) == 1, "facet internal shapes differ"


def test_facet_order_override():
    spec = parse_chart_spec(
        json.dumps(
            {
                "mark": "point",
                "encoding": {"x": {"field": "v", "type": "quantitative"}},
                "facet": {"field": "g", "type": "ordinal", "order": ["late", "early"]},
            }
        )
    )
    table = load_data("v,g\n1,early\n2,late\n3,early\n", "delimited")
    structure = build_structure(spec, table, StructureConfig(variant=Variant.FACETED_TREE))
    assert [structure.node(c).label for c in structure.root.child_ids] == ["late", "early"]


# --- binary tree -----------------------------------------------------------

def synthetic_series(n=16):
    lines = ["x,y"] + [f"{i + 1},{(i * 7) % 13}" for i in range(n)]
    return load_data("\n".join(lines) + "\n", "delimited")


BINARY_SPEC = parse_chart_spec(
    '{"mark": "line", "encoding": {"x": {"field": "x", "type": "quantitative"},'
    ' "y": {"field": "y", "type": "quantitative"}}}'
)


def test_binary_tree_sixteen_points():
    table = synthetic_series(16)
    structure = build_structure(BINARY_SPEC, table, StructureConfig(variant=Variant.BINARY_TREE, binary_leaf_size=1))
    leaves = [n for n in structure.nodes.values() if n.kind == NodeKind.DATUM]
    assert len(leaves) == 16
    depths = {structure.depth(n) for n in leaves}
    assert depths == {4}
    # in-order traversal (document order) sorted by x
    xs = [table.rows[n.meta["row_id"]]["x"] for n in structure.nodes.values() if n.kind == NodeKind.DATUM]
    assert xs == sorted(xs)


def test_binary_tree_span_invariants():
    table = synthetic_series(16)
    structure = build_structure(BINARY_SPEC, table, StructureConfig(variant=Variant.BINARY_TREE, binary_leaf_size=1))
    for node in structure.nodes.values():
        if not node.child_ids:
            continue
        child_members = sorted(
            rid for c in node.child_ids for rid in structure.node(c).selection.member_row_ids
        )
        assert child_members == sorted(node.selection.member_row_ids), node.id
        kids = [structure.node(c) for c in node.child_ids]
        if len(kids) == 2 and all(k.kind in (NodeKind.DATA_SPLIT, NodeKind.DATUM) for k in kids):
            left_max = max(table.rows[r]["x"] for r in kids[0].selection.member_row_ids)
            right_min = min(table.rows[r]["x"] for r in kids[1].selection.member_row_ids)
            assert left_max < right_min


def test_binary_tree_odd_count_left_smaller():
    table = synthetic_series(5)
    structure = build_structure(BINARY_SPEC, table, StructureConfig(variant=Variant.BINARY_TREE, binary_leaf_size=1))
    left, right = [structure.node(c) for c in structure.root.child_ids]
    assert left.selection.count == 2
    assert right.selection.count == 3


def test_binary_tree_duplicate_x_values_share_leaf_parent():
    table = load_data("x,y\n1,1\n1,2\n2,3\n2,4\n", "delimited")
    structure = build_structure(BINARY_SPEC, table, StructureConfig(variant=Variant.BINARY_TREE, binary_leaf_size=1))
    leaves = [n for n in structure.nodes.values() if n.kind == NodeKind.DATUM]
    assert len(leaves) == 4
    for node in structure.nodes.values():
        if node.kind == NodeKind.DATA_SPLIT and node.meta["n_values"] == 1:
            assert len(node.child_ids) == 2


def test_binary_tree_requires_quantitative_x(gallery):
    barley = gallery["trellis_barley"]  # nominal x
    with pytest.raises(ConfigError):
        build_structure(barley.spec, barley.table, StructureConfig(variant=Variant.BINARY_TREE))


# --- annotation tree -------------------------------------------------------

def test_annotation_regions_contain_their_rows(gallery_structures, gallery):
    structure = gallery_structures["annotated_population"]
    table = gallery["annotated_population"].table
    regions = structure.root.child_ids
    assert len(regions) == 3
    for rid in regions:
        region = structure.node(rid)
        lo, hi = region.meta["lo"], region.meta["hi"]
        expected = tuple(r for r in table.row_ids if lo <= table.rows[r]["year"] <= hi)
        assert region.selection.member_row_ids == expected


def test_overlapping_annotations_duplicate_datum():
    spec = parse_chart_spec(
        json.dumps(
            {
                "mark": "line",
                "encoding": {
                    "x": {"field": "x", "type": "quantitative"},
                    "y": {"field": "y", "type": "quantitative"},
                },
                "annotations": [
                    {"label": "left", "channel": "x", "range": [0, 6]},
                    {"label": "right", "channel": "x", "range": [4, 10]},
                ],
            }
        )
    )
    table = load_data("x,y\n1,1\n5,2\n9,3\n", "delimited")
    structure = build_structure(spec, table, StructureConfig(variant=Variant.ANNOTATION_TREE))
    leaves = [n for n in structure.nodes.values() if n.kind == NodeKind.DATUM]
    # row 1 (x=5) sits inside both regions and appears under each
    assert sum(1 for n in leaves if n.meta["row_id"] == 1) == 2


def test_annotation_tree_requires_annotations(golden_spec, golden_table):
    with pytest.raises(ConfigError):
        build_structure(golden_spec, golden_table, StructureConfig(variant=Variant.ANNOTATION_TREE))


# --- nested categories and drill paths --------------------------------------

def test_nested_tree_skips_empty_inner_groups(gallery_structures, gallery):
    structure = gallery_structures["nested_counties"]
    table = gallery["nested_counties"].table
    for state_id in structure.root.child_ids:
        state = structure.node(state_id)
        assert state.kind == NodeKind.CATEGORY
        counties = [structure.node(c) for c in state.child_ids]
        assert all(c.selection.count > 0 for c in counties)
        expected = {
            table.rows[r]["county"] for r in state.selection.member_row_ids
        }
        assert {c.label for c in counties} == expected


def test_dual_drill_paths(gallery_structures):
    structure = gallery_structures["dual_weather"]
    tops = [structure.node(c) for c in structure.root.child_ids]
    assert [t.label for t in tops] == ["By month", "By weather"]
    assert all(t.kind == NodeKind.DATA_SPLIT for t in tops)
    month_first = tops[0]
    months = [structure.node(c) for c in month_first.child_ids]
    assert len(months) == 12
    assert months[0].label == "Jan"


def test_drill_requires_categorical_fields(gallery):
    weather = gallery["dual_weather"]
    with pytest.raises(ConfigError):
        build_structure(
            weather.spec,
            weather.table,
            StructureConfig(variant=Variant.NESTED_CATEGORY_TREE, drill_orders=(("temp_max", "weather"),)),
        )


def test_multibranch_requires_annotations_or_drills(golden_spec, golden_table):
    with pytest.raises(ConfigError):
        build_structure(golden_spec, golden_table, StructureConfig(variant=Variant.MULTI_BRANCH))


def test_multibranch_population_shape(gallery_structures):
    structure = gallery_structures["multibranch_population"]
    roles = [structure.node(c).role for c in structure.root.child_ids]
    assert roles == ["x", "y", "grid", "annotations"]
    assert [u[0] for u in structure.switch_units] == ["encodings", "annotations"]


# --- baselines --------------------------------------------------------------

def test_flat_list_items_then_points(gallery_structures, gallery):
    structure = gallery_structures["list_penguins"]
    assert structure.form == StructureForm.LIST
    children = [structure.node(c) for c in structure.root.child_ids]
    assert [c.kind for c in children[:3]] == [NodeKind.LIST_ITEM] * 3
    data_children = children[3:]
    assert all(c.kind == NodeKind.DATUM for c in data_children)
    table = gallery["list_penguins"].table
    complete = [
        r
        for r in table.row_ids
        if all(table.rows[r][f] is not None for f in ("species", "flipper_length_mm", "body_mass_g"))
    ]
    assert len(data_children) == len(complete)


def test_data_table_cells(gallery_structures, gallery):
    structure = gallery_structures["table_cars"]
    table = gallery["table_cars"].table
    assert structure.form == StructureForm.TABLE
    cells = [structure.node(c) for c in structure.root.child_ids]
    assert len(cells) == len(table.rows) * len(table.fields)
    assert all(c.kind == NodeKind.TABLE_CELL for c in cells)
    # row-major document order; spatial row 0 is the bottom (last) table row
    first = cells[0]
    assert first.meta["row"] == 0 and first.meta["col"] == 0
    assert first.spatial_coord == (0, len(table.rows) - 1)


def test_empty_table_structure_keeps_levels(golden_spec):
    from vizcursor.tabular import DataTable, FieldMeta, FieldType

    table = DataTable(
        fields=(
            FieldMeta("x", FieldType.QUANTITATIVE, (0, 100), 0),
            FieldMeta("y", FieldType.QUANTITATIVE, (0, 10), 0),
            FieldMeta("category", FieldType.NOMINAL, ("A",), 0),
        ),
        rows=(),
    )
    structure = build_structure(golden_spec, table, StructureConfig(variant=Variant.ENCODING_TREE))
    x_branch = structure.node(structure.branch_registry["x"])
    assert len(x_branch.child_ids) > 0  # interval level exists
    for interval_id in x_branch.child_ids:
        assert structure.node(interval_id).child_ids == []


# --- landmarks и dumps -------------------------------------------------------

def test_attach_landmarks_channel_branches(golden_structure):
    found = attach_landmarks(golden_structure, [NodeKind.CHANNEL_BRANCH])
    assert len(found[NodeKind.CHANNEL_BRANCH]) == 4


def test_attach_landmarks_datum_leaves_in_branch_order(golden_structure):
    category = golden_structure.node("root/legend/category-O")
    found = attach_landmarks(golden_structure, [NodeKind.DATUM])
    in_category = [i for i in found[NodeKind.DATUM] if i.startswith("root/legend/category-O/")]
    assert in_category == category.child_ids
    assert len(in_category) == 15


def test_attach_landmarks_facets(gallery_structures):
    facets = attach_landmarks(gallery_structures["trellis_barley"], [NodeKind.FACET_BRANCH])
    assert len(facets[NodeKind.FACET_BRANCH]) == 6


def test_landmark_index_covers_every_node(gallery_structures):
    for name, structure in gallery_structures.items():
        indexed = {nid for ids in structure.landmark_index.values() for nid in ids}
        assert indexed == set(structure.nodes), name


def test_dump_is_parseable_and_complete(golden_structure):
    doc = json.loads(dump_structure(golden_structure))
    assert doc["rootId"] == "root"
    assert doc["variant"] == "encodingTree"
    by_id = {n["id"]: n for n in doc["nodes"]}
    assert set(by_id) == set(golden_structure.nodes)
    node = by_id["root/legend/category-O"]
    assert node["kind"] == "categoryNode"
    assert len(node["rowIds"]) == 15


def test_dump_deterministic_across_builds(golden_spec, golden_table):
    one = dump_structure(build_structure(golden_spec, golden_table))
    two = dump_structure(build_structure(golden_spec, golden_table))
    assert one == two
