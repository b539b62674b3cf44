"""Shared fixtures: gallery examples, crafted datasets, random tables."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from vizcursor import (
    StructureConfig,
    Variant,
    build_structure,
    load_data,
    parse_chart_spec,
)
from vizcursor.corpus import load_all

TESTS_DIR = Path(__file__).parent
DATA_DIR = TESTS_DIR / "data"
GOLDENS_DIR = TESTS_DIR / "goldens"


@pytest.fixture(scope="session")
def gallery():
    """All bundled examples, keyed by name."""
    return {example.name: example for example in load_all()}


@pytest.fixture(scope="session")
def gallery_structures(gallery):
    return {
        name: build_structure(example.spec, example.table, example.config)
        for name, example in gallery.items()
    }


GOLDEN_SPEC = """
{
  "mark": "point",
  "encoding": {
    "x": {"field": "x", "type": "quantitative"},
    "y": {"field": "y", "type": "quantitative"},
    "color": {"field": "category", "type": "nominal"}
  }
}
"""


@pytest.fixture(scope="session")
def golden_table():
    return load_data((DATA_DIR / "golden_scatter.csv").read_text(), "delimited")


@pytest.fixture(scope="session")
def golden_spec():
    return parse_chart_spec(GOLDEN_SPEC)


@pytest.fixture(scope="session")
def golden_structure(golden_spec, golden_table):
    return build_structure(golden_spec, golden_table, StructureConfig(variant=Variant.ENCODING_TREE))


def make_random_table(rng: random.Random, n_rows: int = 200, null_share: float = 0.05):
    """A synthetic table with two numeric and one categorical column."""
    rows = []
    cats = ["alpha", "beta", "gamma", "delta"]
    for _ in range(n_rows):
        x = round(rng.uniform(-50, 150), 2) if rng.random() > null_share else ""
        y = round(rng.uniform(0, 40), 2) if rng.random() > null_share else ""
        c = rng.choice(cats) if rng.random() > null_share else ""
        rows.append(f"{x},{y},{c}")
    text = "x,y,category\n" + "\n".join(rows) + "\n"
    return load_data(text, "delimited")


def parse_csv_rows(path: Path) -> list[dict]:
    """Independent CSV read used by brute-force oracles (no vizcursor code)."""
    import csv

    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))
