"""vizcursor: screen-reader-traversable structures for charts.

Pipeline: parse a chart spec, load tabular data, compile both into an
access structure (list, table, or tree), then drive a cursor over it with
structural/lateral/spatial/targeted commands, narrating each step.
"""

from .describe import (
    Composition,
    DescribeContext,
    DescriptionConfig,
    DescriptionToken,
    Utterance,
    Verbosity,
    describe,
    describe_structure_summary,
    load_templates,
    verbosity_filter,
)
from .errors import (
    ConfigError,
    EmptyDataError,
    ParseError,
    SchemaError,
    SpecSyntaxError,
    TypeMismatchError,
    VizCursorError,
)
from .intervals import Interval, compute_intervals
from .navigation import (
    NavCommand,
    NavResult,
    NavStatus,
    SessionState,
    Verb,
    apply_command,
    create_session,
    equivalent_node,
    spatial_neighbor,
)
from .selection import Selection, Summary, grid_cells, group_by_category, summarize
from .spec_model import (
    AnnotationDef,
    ChartSpec,
    EncodingDef,
    FacetDef,
    Mark,
    ValidationIssue,
    parse_chart_spec,
    serialize_chart_spec,
    validate_spec,
)
from .structures import (
    AccessNode,
    AccessStructure,
    NodeKind,
    StructureConfig,
    Variant,
    attach_landmarks,
    build_structure,
    dump_structure,
)
from .tabular import DataTable, FieldMeta, FieldType, load_data

__version__ = "0.1.0"

__all__ = [
    "AccessNode",
    "AccessStructure",
    "AnnotationDef",
    "ChartSpec",
    "Composition",
    "ConfigError",
    "DataTable",
    "DescribeContext",
    "DescriptionConfig",
    "DescriptionToken",
    "EmptyDataError",
    "EncodingDef",
    "FacetDef",
    "FieldMeta",
    "FieldType",
    "Interval",
    "Mark",
    "NavCommand",
    "NavResult",
    "NavStatus",
    "NodeKind",
    "ParseError",
    "SchemaError",
    "Selection",
    "SessionState",
    "SpecSyntaxError",
    "StructureConfig",
    "Summary",
    "TypeMismatchError",
    "Utterance",
    "ValidationIssue",
    "Variant",
    "Verb",
    "Verbosity",
    "VizCursorError",
    "apply_command",
    "attach_landmarks",
    "build_structure",
    "compute_intervals",
    "create_session",
    "describe",
    "describe_structure_summary",
    "dump_structure",
    "equivalent_node",
    "grid_cells",
    "group_by_category",
    "load_data",
    "load_templates",
    "parse_chart_spec",
    "serialize_chart_spec",
    "spatial_neighbor",
    "summarize",
    "validate_spec",
    "verbosity_filter",
]
