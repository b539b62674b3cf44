"""Session-oriented HTTP service exposing the pipeline to clients.

Protocol (JSON bodies):
  POST   /sessions                    create a session from spec+data or a corpus example
  POST   /sessions/{id}/commands      apply one navigation command
  GET    /sessions/{id}/landmarks     ordered landmark list, ?kind=a,b filters
  DELETE /sessions/{id}               drop a session
  GET    /corpus                      bundled example manifest
  GET    /corpus/{name}               one example: spec object + data rows + variant
  GET    /healthz                     liveness probe
  GET    /...                         static frontend files, when a static dir is configured

Sessions live in memory with idle eviction (default 30 minutes). Commands
to one session are serialized behind a per-session lock; distinct sessions
run concurrently over shared immutable structures.
"""

from __future__ import annotations

import json
import mimetypes
import threading
import time
import uuid
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import corpus
from .describe import Composition, DescriptionConfig, Verbosity, describe_structure_summary
from .errors import ConfigError, EmptyDataError, ParseError, SchemaError, SpecSyntaxError
from .navigation import NavCommand, SessionState, Verb, apply_command, create_session
from .spec_model import ChartSpec, chart_spec_from_object, validate_spec
from .structures import AccessStructure, NodeKind, StructureConfig, Variant, build_structure, dump_structure
from .tabular import load_data

DEFAULT_IDLE_SECONDS = 30 * 60


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str, details=None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details


@dataclass
class SessionRecord:
    session_id: str
    spec: ChartSpec
    structure: AccessStructure
    state: SessionState
    config: DescriptionConfig
    created_at: float
    last_access: float
    lock: threading.Lock


class SessionService:
    """Transport-independent core; the HTTP handler is a thin shell over it."""

    def __init__(
        self,
        corpus_dir: str | Path | None = None,
        static_dir: str | Path | None = None,
        idle_seconds: float = DEFAULT_IDLE_SECONDS,
        clock=time.monotonic,
    ):
        self.corpus_dir = Path(corpus_dir) if corpus_dir else corpus.gallery_path()
        self.static_dir = Path(static_dir) if static_dir else None
        self.idle_seconds = idle_seconds
        self.clock = clock
        self.sessions: dict[str, SessionRecord] = {}
        self.registry_lock = threading.Lock()

    # -- session lifecycle ----------------------------------------------

    def create(self, payload: dict) -> dict:
        if not isinstance(payload, dict):
            raise ServiceError(400, "BAD_REQUEST", "request body must be a JSON object")
        try:
            spec, table, config = self._resolve_inputs(payload)
        except (SchemaError, SpecSyntaxError) as exc:
            raise ServiceError(400, "SCHEMA_ERROR", str(exc)) from exc
        except (ParseError, EmptyDataError) as exc:
            raise ServiceError(400, "DATA_ERROR", str(exc)) from exc
        except ConfigError as exc:
            raise ServiceError(400, "CONFIG_ERROR", str(exc)) from exc

        issues = validate_spec(spec, table)
        errors = [i for i in issues if i.severity == "error"]
        if errors:
            raise ServiceError(
                400,
                "VALIDATION_FAILED",
                errors[0].message,
                details=[{"severity": i.severity, "path": i.path, "message": i.message} for i in issues],
            )
        try:
            structure = build_structure(spec, table, config)
        except ConfigError as exc:
            raise ServiceError(400, "CONFIG_ERROR", str(exc)) from exc

        description_config = _description_config(payload.get("descriptionConfig"))
        state = create_session(structure, description_config)
        now = self.clock()
        record = SessionRecord(
            session_id=uuid.uuid4().hex,
            spec=spec,
            structure=structure,
            state=state,
            config=description_config,
            created_at=now,
            last_access=now,
            lock=threading.Lock(),
        )
        with self.registry_lock:
            self._evict_idle()
            self.sessions[record.session_id] = record
        return {
            "sessionId": record.session_id,
            "summaryUtterance": describe_structure_summary(structure).text,
            "structureDump": json.loads(dump_structure(structure)),
        }

    def _resolve_inputs(self, payload: dict) -> tuple[ChartSpec, object, StructureConfig]:
        if "example" in payload:
            example = self._load_example(payload["example"])
            spec, table, config = example.spec, example.table, example.config
        else:
            spec_value = payload.get("spec")
            if spec_value is None:
                raise ServiceError(400, "BAD_REQUEST", "missing spec (or example name)")
            if isinstance(spec_value, str):
                from .spec_model import parse_chart_spec

                spec = parse_chart_spec(spec_value)
            else:
                spec = chart_spec_from_object(spec_value)
            data_value = payload.get("data")
            if data_value is None:
                raise ServiceError(400, "BAD_REQUEST", "missing data")
            if isinstance(data_value, list):
                table = load_data(json.dumps(data_value), "structured")
            elif isinstance(data_value, str):
                table = load_data(data_value, payload.get("dataFormat", "delimited"))
            else:
                raise ServiceError(400, "BAD_REQUEST", "data must be delimited text or an array of records")
            config = StructureConfig(
                variant=_parse_variant(payload.get("variant", "encodingTree")),
                binary_leaf_size=payload.get("binaryLeafSize", 1),
                drill_orders=_parse_drills(payload.get("drillOrders")),
            )
        if "variant" in payload and "example" in payload:
            config = StructureConfig(
                variant=_parse_variant(payload["variant"]),
                binary_leaf_size=payload.get("binaryLeafSize", config.binary_leaf_size),
                drill_orders=_parse_drills(payload.get("drillOrders")) or config.drill_orders,
            )
        return spec, table, config

    def _load_example(self, name):
        try:
            return corpus.load_example(str(name), self.corpus_dir)
        except KeyError as exc:
            raise ServiceError(404, "NOT_FOUND", f"no corpus example named {name!r}") from exc

    def _get(self, session_id: str) -> SessionRecord:
        with self.registry_lock:
            self._evict_idle()
            record = self.sessions.get(session_id)
            if record is None:
                raise ServiceError(410, "SESSION_GONE", f"session {session_id!r} does not exist or was evicted")
            record.last_access = self.clock()
            return record

    def _evict_idle(self) -> None:
        now = self.clock()
        for sid in [s for s, r in self.sessions.items() if now - r.last_access > self.idle_seconds]:
            del self.sessions[sid]

    # -- operations ------------------------------------------------------

    def command(self, session_id: str, payload: dict) -> dict:
        record = self._get(session_id)
        if not isinstance(payload, dict):
            raise ServiceError(400, "BAD_REQUEST", "request body must be a JSON object")
        try:
            verb = Verb(payload.get("verb"))
        except ValueError:
            raise ServiceError(400, "BAD_REQUEST", f"unknown verb {payload.get('verb')!r}") from None
        try:
            cmd = NavCommand(verb=verb, target=payload.get("target"))
        except ValueError as exc:
            raise ServiceError(400, "BAD_REQUEST", str(exc)) from exc
        with record.lock:
            result = apply_command(record.state, cmd)
            cursor = record.structure.node(result.new_cursor)
            path = _id_path(record.structure, cursor.id)
        return {
            "status": result.status.value,
            "cursorId": result.new_cursor,
            "cursorPath": path,
            "utterance": result.utterance.text,
            "highlightRowIds": list(result.highlight_row_ids),
            "levelChanged": result.level_changed,
            "clamped": result.clamped,
            "invalidCode": result.invalid_code,
        }

    def landmarks(self, session_id: str, kinds: list[str] | None) -> dict:
        record = self._get(session_id)
        structure = record.structure
        if kinds:
            try:
                wanted = [NodeKind(k) for k in kinds]
            except ValueError as exc:
                raise ServiceError(400, "BAD_REQUEST", f"unknown node kind: {exc}") from None
        else:
            wanted = list(structure.landmark_index.keys())
        out = []
        for kind in wanted:
            for node_id in structure.landmark_index.get(kind, []):
                node = structure.node(node_id)
                out.append({"id": node_id, "label": node.label, "kind": kind.value})
        return {"landmarks": out}

    def delete(self, session_id: str) -> dict:
        with self.registry_lock:
            if session_id not in self.sessions:
                raise ServiceError(410, "SESSION_GONE", f"session {session_id!r} does not exist or was evicted")
            del self.sessions[session_id]
        return {"deleted": True}

    def corpus_listing(self) -> dict:
        return {"examples": corpus.load_manifest(self.corpus_dir)}

    def corpus_example(self, name: str) -> dict:
        example = self._load_example(name)
        rows = [
            {meta.name: row[meta.name] for meta in example.table.fields}
            for row in example.table.rows
        ]
        entry = next(e for e in corpus.load_manifest(self.corpus_dir) if e["name"] == name)
        return {
            "name": example.name,
            "title": example.title,
            "spec": json.loads(example.spec_text),
            "data": rows,
            "variant": entry["variant"],
            "drillOrders": entry.get("drillOrders"),
            "binaryLeafSize": entry.get("binaryLeafSize", 1),
        }


def _description_config(payload) -> DescriptionConfig:
    if payload is None:
        return DescriptionConfig()
    if not isinstance(payload, dict):
        raise ServiceError(400, "BAD_REQUEST", "descriptionConfig must be an object")
    try:
        return DescriptionConfig(
            composition=Composition(payload.get("composition", "contextFirst")),
            verbosity=Verbosity(payload.get("verbosity", "high")),
            suppress_repeated_level=bool(payload.get("suppressRepeatedLevel", True)),
            number_format=int(payload.get("numberFormat", 4)),
        )
    except ValueError as exc:
        raise ServiceError(400, "BAD_REQUEST", f"bad descriptionConfig: {exc}") from None


def _parse_variant(value) -> Variant:
    try:
        return Variant(value)
    except ValueError:
        raise ServiceError(400, "BAD_REQUEST", f"unknown variant {value!r}") from None


def _parse_drills(value):
    if value is None:
        return None
    if not isinstance(value, list) or not all(isinstance(order, list) for order in value):
        raise ServiceError(400, "BAD_REQUEST", "drillOrders must be an array of field-name arrays")
    return tuple(tuple(str(f) for f in order) for order in value)


def _id_path(structure: AccessStructure, node_id: str) -> list[str]:
    path = []
    node = structure.node(node_id)
    while True:
        path.append(node.id)
        if node.parent_id is None:
            break
        node = structure.node(node.parent_id)
    path.reverse()
    return path


def make_handler(service: SessionService):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, *args):  # tests and demos stay quiet
            pass

        def _send(self, status: int, payload: dict) -> None:
            body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _error(self, exc: ServiceError) -> None:
            payload = {"error": {"code": exc.code, "message": exc.message}}
            if exc.details is not None:
                payload["error"]["details"] = exc.details
            self._send(exc.status, payload)

        def _body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            if not raw:
                return {}
            try:
                return json.loads(raw.decode("utf-8"))
            except (json.JSONDecodeError, UnicodeDecodeError) as exc:
                raise ServiceError(400, "BAD_REQUEST", f"malformed JSON body: {exc}") from exc

        def _route(self, method: str) -> None:
            url = urlparse(self.path)
            parts = [p for p in url.path.split("/") if p]
            try:
                if method == "POST" and parts == ["sessions"]:
                    self._send(201, service.create(self._body()))
                elif method == "POST" and len(parts) == 3 and parts[0] == "sessions" and parts[2] == "commands":
                    self._send(200, service.command(parts[1], self._body()))
                elif method == "GET" and len(parts) == 3 and parts[0] == "sessions" and parts[2] == "landmarks":
                    kinds_param = parse_qs(url.query).get("kind", [])
                    kinds = [k for chunk in kinds_param for k in chunk.split(",") if k]
                    self._send(200, service.landmarks(parts[1], kinds or None))
                elif method == "DELETE" and len(parts) == 2 and parts[0] == "sessions":
                    self._send(200, service.delete(parts[1]))
                elif method == "GET" and parts == ["corpus"]:
                    self._send(200, service.corpus_listing())
                elif method == "GET" and len(parts) == 2 and parts[0] == "corpus":
                    self._send(200, service.corpus_example(parts[1]))
                elif method == "GET" and parts == ["healthz"]:
                    self._send(200, {"ok": True})
                elif method == "GET":
                    self._static(url.path)
                else:
                    raise ServiceError(404, "NOT_FOUND", f"no route for {method} {url.path}")
            except ServiceError as exc:
                self._error(exc)
            except Exception as exc:  # defensive: never crash the server thread
                self._error(ServiceError(500, "INTERNAL", f"{type(exc).__name__}: {exc}"))

        def _static(self, path: str) -> None:
            if service.static_dir is None:
                raise ServiceError(404, "NOT_FOUND", f"no route for GET {path}")
            relative = path.lstrip("/") or "index.html"
            target = (service.static_dir / relative).resolve()
            if not str(target).startswith(str(service.static_dir.resolve())) or not target.is_file():
                raise ServiceError(404, "NOT_FOUND", f"no file at {path}")
            body = target.read_bytes()
            ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            self._route("GET")

        def do_POST(self):
            self._route("POST")

        def do_DELETE(self):
            self._route("DELETE")

    return Handler


def make_server(
    port: int = 0,
    corpus_dir: str | Path | None = None,
    static_dir: str | Path | None = None,
    idle_seconds: float = DEFAULT_IDLE_SECONDS,
    host: str = "127.0.0.1",
) -> tuple[ThreadingHTTPServer, SessionService]:
    """Bind the service; port 0 picks a free port. Call serve_forever() to run."""
    service = SessionService(corpus_dir=corpus_dir, static_dir=static_dir, idle_seconds=idle_seconds)
    server = ThreadingHTTPServer((host, port), make_handler(service))
    return server, service
