"""Command line entry points: batch build, interactive navigation, service.

Keybinding contract (shared with the web frontend):
  arrows        structural moves (up/down = level, left/right = siblings)
  shift+left/right   lateral moves across sibling branches
  w / a / s / d      spatial moves (screen directions / axis values)
  Home / End    first / last sibling
  Escape        back to the root
  Tab           landmark menu (targeted jump)
  b             switch to the co-equal branch (multi-branch structures)
  ?             help, q  quit
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import load_manifest
from .describe import Composition, DescriptionConfig, Verbosity, describe_structure_summary
from .errors import ConfigError, EmptyDataError, ParseError, SchemaError, SpecSyntaxError
from .navigation import NavCommand, Verb, apply_command, create_session
from .spec_model import parse_chart_spec, validate_spec
from .structures import NodeKind, StructureConfig, Variant, build_structure, dump_structure
from .tabular import load_data

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISSING_FILE = 2
EXIT_CONFIG = 3

KEY_TO_VERB = {
    "up": Verb.UP,
    "down": Verb.DOWN,
    "left": Verb.LEFT,
    "right": Verb.RIGHT,
    "shift+left": Verb.LATERAL_PREV,
    "shift+right": Verb.LATERAL_NEXT,
    "w": Verb.SPATIAL_UP,
    "a": Verb.SPATIAL_LEFT,
    "s": Verb.SPATIAL_DOWN,
    "d": Verb.SPATIAL_RIGHT,
    "home": Verb.HOME,
    "end": Verb.END,
    "escape": Verb.TO_ROOT,
    "b": Verb.SWITCH_BRANCH,
}

HELP_TEXT = """\
Keys: arrows move structurally (up/down a level, left/right between siblings).
Shift+Left / Shift+Right move laterally to the same spot in the adjacent branch.
w/a/s/d move spatially (grid cells by screen direction, points by axis value).
Home/End jump to the first/last sibling. Escape returns to the root.
Tab opens the landmark menu for a targeted jump; b switches branches.
? shows this help. q quits."""


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="vizcursor", description="Navigable chart structures for screen readers")
    sub = parser.add_subparsers(dest="command", required=True)

    build_cmd = sub.add_parser("build", help="compile a spec + dataset and print the structure dump")
    _input_args(build_cmd)
    build_cmd.add_argument("--dump-format", choices=["json", "text"], default="json")

    nav_cmd = sub.add_parser("navigate", help="interactive terminal navigation session")
    _input_args(nav_cmd)
    nav_cmd.add_argument("--composition", choices=[c.value for c in Composition], default="contextFirst")
    nav_cmd.add_argument("--verbosity", choices=[v.value for v in Verbosity], default="high")

    serve_cmd = sub.add_parser("serve", help="run the HTTP session service")
    serve_cmd.add_argument("--port", type=int, default=8456)
    serve_cmd.add_argument("--host", default="127.0.0.1")
    serve_cmd.add_argument("--corpus", help="directory with a manifest.json example corpus")
    serve_cmd.add_argument("--static", help="directory with the frontend bundle to serve at /")
    serve_cmd.add_argument("--idle-timeout", type=float, default=1800.0, help="session idle eviction, seconds")

    sub.add_parser("examples", help="list the bundled example gallery")

    args = parser.parse_args(argv)
    if args.command == "build":
        return _run_build(args)
    if args.command == "navigate":
        return _run_navigate(args)
    if args.command == "serve":
        return _run_serve(args)
    if args.command == "examples":
        return _run_examples()
    return EXIT_OK


def _input_args(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--spec", required=True, help="chart spec file (JSON)")
    cmd.add_argument("--data", required=True, help="dataset file (CSV or JSON array)")
    cmd.add_argument("--data-format", choices=["delimited", "structured"], default=None)
    cmd.add_argument("--variant", choices=[v.value for v in Variant], default="encodingTree")
    cmd.add_argument(
        "--drill",
        action="append",
        metavar="FIELD,FIELD",
        help="drill order, comma-separated (repeat for multiple branches)",
    )
    cmd.add_argument("--leaf-size", type=int, default=1, help="binary tree leaf size")


def _load_inputs(args):
    spec_path, data_path = Path(args.spec), Path(args.data)
    for path in (spec_path, data_path):
        if not path.is_file():
            print(f"error: no such file: {path}", file=sys.stderr)
            raise SystemExit(EXIT_MISSING_FILE)
    try:
        spec = parse_chart_spec(spec_path.read_text("utf-8"))
        data_format = args.data_format or ("structured" if data_path.suffix == ".json" else "delimited")
        table = load_data(data_path.read_text("utf-8"), data_format)
    except (SpecSyntaxError, SchemaError, ParseError, EmptyDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID) from exc

    issues = validate_spec(spec, table)
    errors = [i for i in issues if i.severity == "error"]
    if errors:
        first = errors[0]
        print(f"error: {first.path}: {first.message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)
    for issue in issues:
        print(f"warning: {issue.path}: {issue.message}", file=sys.stderr)

    config = StructureConfig(
        variant=Variant(args.variant),
        binary_leaf_size=args.leaf_size,
        drill_orders=tuple(tuple(d.split(",")) for d in args.drill) if args.drill else None,
    )
    try:
        structure = build_structure(spec, table, config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG) from exc
    return structure


def _run_build(args) -> int:
    structure = _load_inputs(args)
    summary = describe_structure_summary(structure)
    print(summary.text)
    if args.dump_format == "json":
        sys.stdout.write(dump_structure(structure))
    else:
        _print_tree(structure)
    return EXIT_OK


def _print_tree(structure) -> None:
    def walk(node_id: str, depth: int) -> None:
        node = structure.node(node_id)
        count = node.selection.count
        print(f"{'  ' * depth}{node.label}  [{node.kind.value}, {count} rows]")
        for child_id in node.child_ids:
            walk(child_id, depth + 1)

    walk(structure.root_id, 0)


def _run_examples() -> int:
    for entry in load_manifest():
        drills = f" drill={entry['drillOrders']}" if entry.get("drillOrders") else ""
        print(f"{entry['name']:24s} {entry['variant']:20s}{drills}  {entry.get('title', '')}")
    return EXIT_OK


def _run_serve(args) -> int:
    from .service import make_server

    server, _ = make_server(
        port=args.port,
        host=args.host,
        corpus_dir=args.corpus,
        static_dir=args.static,
        idle_seconds=args.idle_timeout,
    )
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port}/ (Ctrl-C to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return EXIT_OK


def _run_navigate(args) -> int:
    structure = _load_inputs(args)
    config = DescriptionConfig(composition=Composition(args.composition), verbosity=Verbosity(args.verbosity))
    state = create_session(structure, config)
    print(describe_structure_summary(structure).text)
    _status(structure, state)

    interactive = sys.stdin.isatty()
    reader = _read_keys_tty if interactive else _read_keys_lines
    if interactive:
        print("(arrow keys to move, ? for help, q to quit)")
    for token in reader():
        if token == "q":
            return EXIT_OK
        if token == "?":
            print(HELP_TEXT)
            continue
        if token == "tab":
            _landmark_menu(structure, state, interactive)
            continue
        if token.startswith("jump "):
            cmd = NavCommand(Verb.JUMP, target=token[5:].strip())
        elif token in KEY_TO_VERB:
            cmd = NavCommand(KEY_TO_VERB[token])
        else:
            print(f"(unknown input: {token!r}; ? for help)")
            continue
        result = apply_command(state, cmd)
        print(result.utterance.text)
        _status(structure, state)
    return EXIT_OK


def _status(structure, state) -> None:
    node = structure.node(state.cursor)
    path = []
    while True:
        path.append(node.label)
        if node.parent_id is None:
            break
        node = structure.node(node.parent_id)
    line = " > ".join(reversed(path))
    print(f"@ {state.cursor}  ({line})")


def _landmark_menu(structure, state, interactive: bool) -> None:
    kinds = [k for k in structure.landmark_index if k not in (NodeKind.ROOT,)]
    entries = []
    for kind in kinds:
        for node_id in structure.landmark_index[kind]:
            entries.append((node_id, structure.node(node_id).label, kind.value))
    if not interactive:
        for node_id, label, kind in entries:
            print(f"  {node_id}  [{kind}] {label}")
        print("(enter: jump <id>)")
        return
    page = entries[:40]
    for i, (node_id, label, kind) in enumerate(page, start=1):
        print(f"  {i:3d}. [{kind}] {label}  ({node_id})")
    if len(entries) > len(page):
        print(f"  ... {len(entries) - len(page)} more; use jump <id>")
    choice = input("landmark number (empty to cancel): ").strip()
    if not choice:
        return
    try:
        node_id = page[int(choice) - 1][0]
    except (ValueError, IndexError):
        print("(no such entry)")
        return
    result = apply_command(state, NavCommand(Verb.JUMP, target=node_id))
    print(result.utterance.text)
    _status(structure, state)


def _read_keys_lines():
    """Replay mode: newline-separated key tokens on a non-tty stdin."""
    for line in sys.stdin:
        token = line.strip()
        if token:
            yield token.lower() if not token.lower().startswith("jump ") else "jump " + token[5:].strip()


_CSI_MAP = {
    "[A": "up",
    "[B": "down",
    "[C": "right",
    "[D": "left",
    "[1;2C": "shift+right",
    "[1;2D": "shift+left",
    "[H": "home",
    "[F": "end",
    "[1~": "home",
    "[4~": "end",
    "OH": "home",
    "OF": "end",
}


def _read_keys_tty():  # pragma: no cover - requires a real terminal
    import select
    import termios
    import tty

    fd = sys.stdin.fileno()
    old = termios.tcgetattr(fd)
    try:
        tty.setcbreak(fd)
        while True:
            ch = sys.stdin.read(1)
            if ch in ("q", "\x03", "\x04"):
                yield "q"
                return
            if ch == "\x1b":
                seq = ""
                while select.select([fd], [], [], 0.05)[0] and len(seq) < 8:
                    seq += sys.stdin.read(1)
                    if seq in _CSI_MAP:
                        break
                yield _CSI_MAP.get(seq, "escape")
            elif ch == "\t":
                yield "tab"
            elif ch in ("w", "a", "s", "d", "b", "?"):
                yield ch
            elif ch in ("\r", "\n"):
                continue
    finally:
        termios.tcsetattr(fd, termios.TCSADRAIN, old)


if __name__ == "__main__":
    sys.exit(main())
