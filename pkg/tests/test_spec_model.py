import json

import pytest

from vizcursor import (
    Mark,
    SchemaError,
    SpecSyntaxError,
    load_data,
    parse_chart_spec,
    serialize_chart_spec,
    validate_spec,
)
from vizcursor.spec_model import Aggregate

SCATTER = """
{
  "mark": "point",
  "encoding": {
    "x": {"field": "flipper", "type": "quantitative"},
    "y": {"field": "mass", "type": "quantitative"},
    "color": {"field": "species", "type": "nominal"}
  }
}
"""


def test_scatter_spec_parses_three_encodings():
    spec = parse_chart_spec(SCATTER)
    assert spec.mark == Mark.POINT
    assert [e.channel.value for e in spec.encodings] == ["x", "y", "color"]


def test_minimal_spec_single_channel():
    spec = parse_chart_spec('{"mark": "point", "encoding": {"x": {"field": "v", "type": "quantitative"}}}')
    assert len(spec.encodings) == 1


def test_unsupported_channel_named_in_error():
    bad = '{"mark": "point", "encoding": {"x": {"field": "v", "type": "quantitative"}, "size": {"field": "w", "type": "quantitative"}}}'
    with pytest.raises(SchemaError) as exc:
        parse_chart_spec(bad)
    assert "size" in str(exc.value)


def test_unknown_top_level_key_rejected():
    with pytest.raises(SchemaError) as exc:
        parse_chart_spec('{"mark": "point", "encoding": {"x": {"field": "v", "type": "quantitative"}}, "transform": []}')
    assert "transform" in str(exc.value)


def test_missing_x_and_y_rejected():
    with pytest.raises(SchemaError):
        parse_chart_spec('{"mark": "point", "encoding": {"color": {"field": "c", "type": "nominal"}}}')


def test_duplicate_channel_rejected():
    text = '{"mark": "point", "encoding": {"x": {"field": "a", "type": "quantitative"}, "x": {"field": "b", "type": "quantitative"}}}'
    with pytest.raises(SchemaError):
        parse_chart_spec(text)


def test_facet_field_must_differ_from_axes():
    text = json.dumps(
        {
            "mark": "point",
            "encoding": {"x": {"field": "v", "type": "quantitative"}},
            "facet": {"field": "v", "type": "nominal"},
        }
    )
    with pytest.raises(SchemaError):
        parse_chart_spec(text)


def test_facet_type_must_be_categorical():
    text = json.dumps(
        {
            "mark": "point",
            "encoding": {"x": {"field": "v", "type": "quantitative"}},
            "facet": {"field": "s", "type": "quantitative"},
        }
    )
    with pytest.raises(SchemaError):
        parse_chart_spec(text)


def test_malformed_document_reports_position():
    with pytest.raises(SpecSyntaxError) as exc:
        parse_chart_spec('{"mark": "point",,}')
    assert exc.value.line == 1
    assert exc.value.column is not None


def test_unknown_mark_rejected():
    with pytest.raises(SchemaError):
        parse_chart_spec('{"mark": "boxplot", "encoding": {"x": {"field": "v", "type": "quantitative"}}}')


@pytest.mark.parametrize(
    "bin_value,expected",
    [("true", 10), ('{"maxbins": 5}', 5), ("{}", 10)],
)
def test_bin_defaults(bin_value, expected):
    spec = parse_chart_spec(
        '{"mark": "point", "encoding": {"x": {"field": "v", "type": "quantitative", "bin": %s}}}' % bin_value
    )
    assert spec.encodings[0].bin.max_bins == expected


def test_aggregate_default_none():
    spec = parse_chart_spec(SCATTER)
    assert all(e.aggregate == Aggregate.NONE for e in spec.encodings)


def test_annotation_iso_dates_become_epoch_days():
    text = json.dumps(
        {
            "mark": "line",
            "encoding": {"x": {"field": "day", "type": "temporal"}, "y": {"field": "v", "type": "quantitative"}},
            "annotations": [{"label": "era", "channel": "x", "range": ["1970-01-01", "1970-01-11"]}],
        }
    )
    spec = parse_chart_spec(text)
    assert (spec.annotations[0].lo, spec.annotations[0].hi) == (0, 10)


def test_parse_serialize_parse_is_idempotent(gallery):
    for example in gallery.values():
        first = parse_chart_spec(example.spec_text)
        second = parse_chart_spec(serialize_chart_spec(first))
        assert first == second, example.name
    crafted = parse_chart_spec(SCATTER)
    assert parse_chart_spec(serialize_chart_spec(crafted)) == crafted


# --- validation -----------------------------------------------------------

TABLE = load_data("mpg2,hp,species,day\n10,100,cat,2013-01-01\n20,200,dog,2013-05-01\n", "delimited")


def make_spec(**overrides):
    doc = {
        "mark": "point",
        "encoding": {
            "x": {"field": "hp", "type": "quantitative"},
            "y": {"field": "mpg2", "type": "quantitative"},
        },
    }
    doc.update(overrides)
    return parse_chart_spec(json.dumps(doc))


def test_missing_field_reported():
    spec = make_spec(encoding={"x": {"field": "mpg", "type": "quantitative"}})
    issues = validate_spec(spec, TABLE)
    assert len(issues) == 1
    assert issues[0].severity == "error"
    assert "mpg" in issues[0].message


def test_annotation_lo_exceeds_hi():
    spec = make_spec(annotations=[{"label": "bad", "channel": "x", "range": [1950, 1900]}])
    issues = validate_spec(spec, TABLE)
    assert any("exceeds" in i.message and i.severity == "error" for i in issues)


def test_invalid_spec_corpus_every_violation_caught():
    """Ten invalid specs; each must be rejected at parse or by validation."""
    corpus = [
        # (spec document, parse-time?)
        ({"mark": "point", "encoding": {"x": {"field": "hp", "type": "nominal", "bin": True}}}, False),
        ({"mark": "point", "encoding": {"x": {"field": "hp", "type": "quantitative"}},
          "annotations": [{"label": "b", "channel": "x", "range": [1950, 1900]}]}, False),
        ({"mark": "point", "encoding": {"x": {"field": "hp", "type": "quantitative"}},
          "annotations": [{"label": "b", "channel": "x", "range": [9000, 9999]}]}, False),
        ({"mark": "point", "encoding": {"x": {"field": "hp", "type": "quantitative"}},
          "annotations": [{"label": "b", "channel": "y", "range": [0, 1]}]}, False),
        ({"mark": "point", "encoding": {"x": {"field": "absent", "type": "quantitative"}}}, False),
        ({"mark": "point", "encoding": {"x": {"field": "species", "type": "quantitative"}}}, False),
        ({"mark": "point", "encoding": {"x": {"field": "species", "type": "nominal", "aggregate": "mean"},
                                         "y": {"field": "hp", "type": "quantitative"}}}, False),
        ({"mark": "point", "encoding": {"x": {"field": "hp", "type": "quantitative"}},
          "facet": {"field": "nowhere", "type": "nominal"}}, False),
        ({"mark": "point", "encoding": {"x": {"field": "hp", "type": "quantitative"}},
          "facet": {"field": "species", "type": "nominal", "order": ["cat", "unicorn"]}}, False),
        ({"mark": "point", "encoding": {"color": {"field": "species", "type": "nominal"}}}, True),
        ({"mark": "point", "encoding": {"x": {"field": "hp", "type": "quantitative"}},
          "facet": {"field": "hp", "type": "nominal"}}, True),
    ]
    assert len(corpus) >= 10
    for doc, parse_time in corpus:
        text = json.dumps(doc)
        if parse_time:
            with pytest.raises(SchemaError):
                parse_chart_spec(text)
        else:
            issues = validate_spec(parse_chart_spec(text), TABLE)
            assert any(i.severity == "error" for i in issues), doc


def test_annotation_partially_outside_domain_warns():
    spec = make_spec(annotations=[{"label": "wide", "channel": "x", "range": [50, 500]}])
    issues = validate_spec(spec, TABLE)
    assert len(issues) == 1
    assert issues[0].severity == "warning"


def test_declared_ordinal_accepts_numeric_column():
    spec = make_spec(encoding={"x": {"field": "hp", "type": "ordinal"}})
    assert validate_spec(spec, TABLE) == []


def test_temporal_declaration_requires_temporal_column():
    spec = make_spec(encoding={"x": {"field": "hp", "type": "temporal"}})
    assert any(i.severity == "error" for i in validate_spec(spec, TABLE))
    spec = make_spec(encoding={"x": {"field": "day", "type": "temporal"}})
    assert validate_spec(spec, TABLE) == []


def test_gallery_specs_validate_clean(gallery):
    for name, example in gallery.items():
        assert validate_spec(example.spec, example.table) == [], name
