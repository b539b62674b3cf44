"""Access to the bundled example gallery (specs, datasets, manifest)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .spec_model import ChartSpec, parse_chart_spec
from .structures import StructureConfig, Variant
from .tabular import DataTable, load_data


def gallery_path() -> Path:
    return Path(str(resources.files("vizcursor").joinpath("gallery")))


def load_manifest(corpus_dir: str | Path | None = None) -> list[dict]:
    root = Path(corpus_dir) if corpus_dir else gallery_path()
    with open(root / "manifest.json", encoding="utf-8") as fh:
        return json.load(fh)["examples"]


@dataclass(frozen=True)
class GalleryExample:
    name: str
    title: str
    spec_text: str
    data_text: str
    spec: ChartSpec
    table: DataTable
    config: StructureConfig


def config_from_entry(entry: dict) -> StructureConfig:
    drills = entry.get("drillOrders")
    return StructureConfig(
        variant=Variant(entry["variant"]),
        binary_leaf_size=entry.get("binaryLeafSize", 1),
        drill_orders=tuple(tuple(order) for order in drills) if drills else None,
    )


def load_example(name: str, corpus_dir: str | Path | None = None) -> GalleryExample:
    root = Path(corpus_dir) if corpus_dir else gallery_path()
    for entry in load_manifest(root):
        if entry["name"] == name:
            spec_text = (root / entry["spec"]).read_text("utf-8")
            data_text = (root / entry["data"]).read_text("utf-8")
            return GalleryExample(
                name=name,
                title=entry.get("title", name),
                spec_text=spec_text,
                data_text=data_text,
                spec=parse_chart_spec(spec_text),
                table=load_data(data_text, "delimited"),
                config=config_from_entry(entry),
            )
    raise KeyError(f"no gallery example named {name!r}")


def load_all(corpus_dir: str | Path | None = None) -> list[GalleryExample]:
    return [load_example(entry["name"], corpus_dir) for entry in load_manifest(corpus_dir)]
