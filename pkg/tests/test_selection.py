import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vizcursor import TypeMismatchError, compute_intervals, grid_cells, group_by_category, load_data, summarize
from vizcursor.corpus import gallery_path
from vizcursor.selection import (
    CategoryConstraint,
    IntervalConstraint,
    NonNullConstraint,
    RowIdConstraint,
    Selection,
    select,
)
from vizcursor.tabular import FieldType

from conftest import make_random_table, parse_csv_rows


def brute_members(table, constraints):
    """Independent row-by-row predicate scan."""
    out = []
    for rid in range(len(table.rows)):
        ok = True
        for c in constraints:
            if isinstance(c, IntervalConstraint):
                v = table.rows[rid][c.field]
                if v is None or isinstance(v, str):
                    ok = False
                elif v < c.lo or v > c.hi:
                    ok = False
                elif v == c.lo and not c.closed_low:
                    ok = False
                elif v == c.hi and not c.closed_high:
                    ok = False
            elif isinstance(c, CategoryConstraint):
                if table.rows[rid][c.field] not in c.values:
                    ok = False
            elif isinstance(c, NonNullConstraint):
                if table.rows[rid][c.field] is None:
                    ok = False
            elif isinstance(c, RowIdConstraint):
                if rid not in c.row_ids:
                    ok = False
            if not ok:
                break
        if ok:
            out.append(rid)
    return tuple(out)


def test_selection_matches_brute_force_scan():
    rng = random.Random(77)
    table = make_random_table(rng, n_rows=200)
    for _ in range(100):
        constraints = []
        if rng.random() < 0.8:
            lo = rng.uniform(-60, 140)
            constraints.append(IntervalConstraint("x", lo, lo + rng.uniform(0, 120)))
        if rng.random() < 0.5:
            lo = rng.uniform(0, 30)
            constraints.append(IntervalConstraint("y", lo, lo + rng.uniform(0, 20), closed_high=rng.random() < 0.5))
        if rng.random() < 0.5:
            constraints.append(CategoryConstraint("category", tuple(rng.sample(["alpha", "beta", "gamma", "delta"], 2))))
        if rng.random() < 0.3:
            constraints.append(NonNullConstraint(rng.choice(["x", "y", "category"])))
        selection = select(table, constraints)
        assert selection.member_row_ids == brute_members(table, constraints)


def test_group_by_species_counts():
    path = gallery_path() / "data" / "penguins.csv"
    table = load_data(path.read_text(), "delimited")
    groups = group_by_category(table, table.field("species"))
    assert len(groups) == 3

    raw = parse_csv_rows(path)
    tallies = {}
    for row in raw:
        if row["species"].strip():
            tallies[row["species"]] = tallies.get(row["species"], 0) + 1
    assert {cat: sel.count for cat, sel in groups} == tallies
    assert sum(sel.count for _, sel in groups) == sum(tallies.values())


def test_barley_site_groups():
    table = load_data((gallery_path() / "data" / "barley.csv").read_text(), "delimited")
    groups = group_by_category(table, table.field("site"))
    assert len(groups) == 6


def test_single_distinct_value_single_group():
    table = load_data("c,v\nonly,1\nonly,2\nonly,3\n", "delimited")
    groups = group_by_category(table, table.field("c"))
    assert len(groups) == 1
    assert groups[0][1].count == 3


def test_group_by_quantitative_raises():
    table = load_data("v,w\n1,a\n2,b\n", "delimited")
    with pytest.raises(TypeMismatchError):
        group_by_category(table, table.field("v"))


def test_group_by_numeric_with_categorical_view():
    table = load_data("year,v\n1931,a\n1932,b\n1931,c\n", "delimited")
    groups = group_by_category(table, table.field("year"), as_type=FieldType.NOMINAL)
    assert [cat for cat, _ in groups] == [1931, 1932]
    assert [sel.count for _, sel in groups] == [2, 1]


def test_partition_property_random_tables():
    rng = random.Random(31)
    for _ in range(10):
        table = make_random_table(rng, n_rows=120)
        groups = group_by_category(table, table.field("category"))
        seen = set()
        for _, sel in groups:
            members = set(sel.member_row_ids)
            assert not members & seen, "groups overlap"
            seen |= members
        non_null = {rid for rid in table.row_ids if table.rows[rid]["category"] is not None}
        assert seen == non_null


def grid_fixture(n_points=100, seed=5):
    rng = random.Random(seed)
    lines = ["x,y"]
    for _ in range(n_points):
        lines.append(f"{rng.uniform(0, 100):.3f},{rng.uniform(0, 100):.3f}")
    return load_data("\n".join(lines) + "\n", "delimited")


def test_grid_cells_membership_sums():
    table = grid_fixture()
    xi = compute_intervals(table.field("x"), 10)
    yi = compute_intervals(table.field("y"), 10)
    cells = grid_cells(table, "x", xi, "y", yi)
    assert sum(cell.count for col in cells for cell in col) == 100

    # brute-force point-in-cell check
    for ci, col in enumerate(cells):
        for ri, cell in enumerate(col):
            expected = tuple(
                rid
                for rid in table.row_ids
                if xi[ci].contains(table.rows[rid]["x"]) and yi[ri].contains(table.rows[rid]["y"])
            )
            assert cell.member_row_ids == expected


def test_grid_boundary_conventions():
    table = load_data("x,y\n0,0\n10,10\n100,100\n55,55\n", "delimited")
    xi = compute_intervals(table.field("x"), 10)
    yi = compute_intervals(table.field("y"), 10)
    cells = grid_cells(table, "x", xi, "y", yi)
    # interior boundary datum (10,10) goes to the higher interval on both axes
    assert 1 in cells[1][1].member_row_ids
    assert 1 not in cells[0][0].member_row_ids
    # domain max datum (100,100) lands in the final (closed) cell
    assert 2 in cells[-1][-1].member_row_ids


def test_summarize_basic():
    table = load_data("y\n2\n4\n6\n", "delimited")
    sel = select(table, ())
    summary = summarize(sel, table, ["y"])
    stats = summary.numeric["y"]
    assert (stats.minimum, stats.maximum, stats.mean, summary.count) == (2, 6, 4, 3)


def test_summarize_empty_selection():
    table = load_data("y\n2\n4\n", "delimited")
    empty = Selection(constraints=(), member_row_ids=())
    summary = summarize(empty, table)
    assert summary.count == 0
    assert summary.numeric == {}
    assert summary.categories == {}


def test_summarize_barley_matches_independent_recomputation():
    path = gallery_path() / "data" / "barley.csv"
    table = load_data(path.read_text(), "delimited")
    summary = summarize(select(table, ()), table, ["yield", "site"])

    raw = parse_csv_rows(path)
    values = [float(r["yield"]) for r in raw]
    stats = summary.numeric["yield"]
    assert stats.count == len(values)
    assert stats.minimum == min(values)
    assert stats.maximum == max(values)
    assert abs(stats.mean - sum(values) / len(values)) < 1e-9

    site_counts = {}
    for r in raw:
        site_counts[r["site"]] = site_counts.get(r["site"], 0) + 1
    assert summary.categories["site"] == site_counts


def test_summary_counts_add_over_disjoint_selections():
    table = make_random_table(random.Random(13), n_rows=150)
    groups = group_by_category(table, table.field("category"))
    total = sum(summarize(sel, table).count for _, sel in groups)
    union_members = tuple(sorted(rid for _, sel in groups for rid in sel.member_row_ids))
    union = Selection(constraints=(), member_row_ids=union_members)
    assert summarize(union, table).count == total


def test_summarize_reports_per_field_null_counts():
    table = load_data("a,b\n1,\n2,5\n,7\n", "delimited")
    summary = summarize(select(table, ()), table)
    assert summary.count == 3
    assert summary.numeric["a"].count == 2  # one null excluded
    assert summary.numeric["b"].count == 2


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_interval_groups_partition_numeric_rows(seed):
    table = make_random_table(random.Random(seed), n_rows=60)
    intervals = compute_intervals(table.field("x"), 7)
    members = []
    for iv in intervals:
        sel = select(table, (IntervalConstraint("x", iv.lo, iv.hi, iv.closed_low, iv.closed_high),))
        members.extend(sel.member_row_ids)
    non_null = [rid for rid in table.row_ids if table.rows[rid]["x"] is not None]
    assert sorted(members) == non_null
    assert len(members) == len(set(members))
