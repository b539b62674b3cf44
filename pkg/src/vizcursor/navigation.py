"""Cursor management and navigation commands over an access structure.

Commands come in four families: structural (up/down/left/right, home/end),
lateral (same relative path under the previous/next sibling branch),
spatial (screen-direction moves over grid/table cells, or by axis value over
datum leaves), and targeted (jump straight to a named node). Boundary hits
never move the cursor; invalid commands never crash — both come back as
statuses with an explanatory utterance.

A session is single-writer: commands apply strictly sequentially. Distinct
sessions over one shared structure are independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum

from .describe import (
    DescribeContext,
    DescriptionConfig,
    Utterance,
    branch_context_text,
    describe,
    load_templates,
)
from .errors import TypeMismatchError
from .spec_model import Channel
from .structures import AccessNode, AccessStructure, NodeKind


class Verb(str, Enum):
    UP = "up"
    DOWN = "down"
    LEFT = "left"
    RIGHT = "right"
    LATERAL_PREV = "lateralPrev"
    LATERAL_NEXT = "lateralNext"
    SPATIAL_UP = "spatialUp"
    SPATIAL_DOWN = "spatialDown"
    SPATIAL_LEFT = "spatialLeft"
    SPATIAL_RIGHT = "spatialRight"
    HOME = "home"
    END = "end"
    JUMP = "jump"
    SWITCH_BRANCH = "switchBranch"
    TO_ROOT = "toRoot"


SPATIAL_VERBS = {Verb.SPATIAL_UP, Verb.SPATIAL_DOWN, Verb.SPATIAL_LEFT, Verb.SPATIAL_RIGHT}

# which edge a boundary hit announces, per verb
_BOUNDARY_POLARITY = {
    Verb.UP: "start",
    Verb.LEFT: "start",
    Verb.HOME: "start",
    Verb.LATERAL_PREV: "start",
    Verb.SPATIAL_LEFT: "start",
    Verb.SPATIAL_DOWN: "start",
    Verb.DOWN: "end",
    Verb.RIGHT: "end",
    Verb.END: "end",
    Verb.LATERAL_NEXT: "end",
    Verb.SPATIAL_RIGHT: "end",
    Verb.SPATIAL_UP: "end",
    Verb.TO_ROOT: "start",
    Verb.JUMP: "start",
    Verb.SWITCH_BRANCH: "start",
}


@dataclass(frozen=True)
class NavCommand:
    verb: Verb
    target: str | None = None

    def __post_init__(self):
        if self.verb == Verb.JUMP and not self.target:
            raise ValueError("jump requires a target node id")
        if self.verb != Verb.JUMP and self.target is not None:
            raise ValueError(f"{self.verb.value} does not take a target")


class NavStatus(str, Enum):
    MOVED = "moved"
    BOUNDARY = "boundary"
    INVALID = "invalid"


@dataclass(frozen=True)
class NavResult:
    status: NavStatus
    new_cursor: str
    level_changed: bool
    utterance: Utterance
    highlight_row_ids: tuple[int, ...]
    clamped: bool = False
    invalid_code: str | None = None


@dataclass
class SessionState:
    structure: AccessStructure
    config: DescriptionConfig
    templates: dict
    cursor: str
    previous_node: str | None = None
    last_announced_level: NodeKind = NodeKind.ROOT
    last_branch_context: str | None = None
    last_child: dict[str, str] = dc_field(default_factory=dict)
    command_log: list = dc_field(default_factory=list)


def create_session(
    structure: AccessStructure,
    config: DescriptionConfig | None = None,
    templates: dict | None = None,
) -> SessionState:
    """A fresh session with the cursor at the root."""
    return SessionState(
        structure=structure,
        config=config or DescriptionConfig(),
        templates=templates or load_templates(),
        cursor=structure.root_id,
    )


@dataclass(frozen=True)
class _Move:
    target: str | None = None
    boundary: bool = False
    invalid_code: str | None = None
    clamped: bool = False


def apply_command(state: SessionState, cmd: NavCommand) -> NavResult:
    """Execute one navigation command and narrate the outcome."""
    structure = state.structure
    node = structure.node(state.cursor)
    move = _dispatch(state, node, cmd)

    if move.invalid_code is not None:
        result = _announce(
            state,
            node,
            NavStatus.INVALID,
            level_changed=False,
            notice=state.templates["invalid"][move.invalid_code],
            invalid_code=move.invalid_code,
        )
    elif move.boundary or move.target is None:
        result = _announce(
            state,
            node,
            NavStatus.BOUNDARY,
            level_changed=False,
            boundary=_BOUNDARY_POLARITY[cmd.verb],
        )
    else:
        target = structure.node(move.target)
        level_changed = target.kind != node.kind
        state.previous_node = node.id
        state.cursor = target.id
        if target.parent_id is not None:
            state.last_child[target.parent_id] = target.id
        result = _announce(state, target, NavStatus.MOVED, level_changed=level_changed, clamped=move.clamped)

    state.command_log.append((cmd, result))
    return result


def _announce(
    state: SessionState,
    node: AccessNode,
    status: NavStatus,
    level_changed: bool,
    boundary: str | None = None,
    clamped: bool = False,
    notice: str | None = None,
    invalid_code: str | None = None,
) -> NavResult:
    ctx = DescribeContext(
        level_changed=level_changed,
        previous_branch_context=state.last_branch_context,
        boundary=boundary,
        clamped=clamped,
        notice=notice,
    )
    utterance = describe(state.structure, node, ctx, state.config, state.templates)
    state.last_announced_level = node.kind
    state.last_branch_context = branch_context_text(state.structure, node, state.config.number_format)
    return NavResult(
        status=status,
        new_cursor=node.id,
        level_changed=level_changed if status == NavStatus.MOVED else False,
        utterance=utterance,
        highlight_row_ids=tuple(sorted(node.selection.member_row_ids)),
        clamped=clamped,
        invalid_code=invalid_code,
    )


def _dispatch(state: SessionState, node: AccessNode, cmd: NavCommand) -> _Move:
    structure = state.structure
    verb = cmd.verb
    if verb == Verb.UP:
        return _Move(target=node.parent_id, boundary=node.parent_id is None)
    if verb == Verb.DOWN:
        if not node.child_ids:
            return _Move(boundary=True)
        remembered = state.last_child.get(node.id)
        if remembered in node.child_ids:
            return _Move(target=remembered)
        return _Move(target=node.child_ids[0])
    if verb in (Verb.LEFT, Verb.RIGHT):
        siblings = structure.sibling_ids(node)
        index = siblings.index(node.id)
        index += -1 if verb == Verb.LEFT else 1
        if index < 0 or index >= len(siblings):
            return _Move(boundary=True)
        return _Move(target=siblings[index])
    if verb in (Verb.HOME, Verb.END):
        siblings = structure.sibling_ids(node)
        target = siblings[0] if verb == Verb.HOME else siblings[-1]
        if target == node.id:
            return _Move(boundary=True)
        return _Move(target=target)
    if verb in (Verb.LATERAL_PREV, Verb.LATERAL_NEXT):
        return _lateral(structure, node, -1 if verb == Verb.LATERAL_PREV else 1)
    if verb in SPATIAL_VERBS:
        return _spatial(structure, node, verb)
    if verb == Verb.JUMP:
        if cmd.target not in structure.nodes:
            return _Move(invalid_code="UNKNOWN_TARGET")
        return _Move(target=cmd.target)
    if verb == Verb.SWITCH_BRANCH:
        return _switch_branch(structure, node)
    if verb == Verb.TO_ROOT:
        if node.id == structure.root_id:
            return _Move(boundary=True)
        return _Move(target=structure.root_id)
    raise ValueError(f"unhandled verb {verb!r}")


def _lateral(structure: AccessStructure, node: AccessNode, step: int) -> _Move:
    if node.id == structure.root_id:
        return _Move(boundary=True)
    top = structure.top_branch(node)
    branches = structure.root.child_ids
    index = branches.index(top.id) + step
    if index < 0 or index >= len(branches):
        return _Move(boundary=True)
    target_id, clamped = equivalent_node(structure, node.id, branches[index])
    return _Move(target=target_id, clamped=clamped)


def equivalent_node(structure: AccessStructure, node_id: str, target_branch_id: str) -> tuple[str, bool]:
    """The node at the same child-index path under `target_branch_id`.

    Where the path does not exist (ragged branches), returns the deepest
    existing prefix node with clamped=True.
    """
    node = structure.node(node_id)
    target_branch = structure.node(target_branch_id)
    target_depth = structure.depth(target_branch)
    source_branch = node
    while structure.depth(source_branch) > target_depth:
        source_branch = structure.node(source_branch.parent_id)
    path = structure.index_path(node, source_branch)
    current = target_branch
    for index in path:
        if index >= len(current.child_ids):
            return current.id, True
        current = structure.node(current.child_ids[index])
    return current.id, False


def _spatial(structure: AccessStructure, node: AccessNode, verb: Verb) -> _Move:
    if node.spatial_coord is not None:
        target = spatial_neighbor(structure, node.id, verb)
        return _Move(target=target, boundary=target is None)
    if node.kind != NodeKind.DATUM:
        return _Move(invalid_code="INVALID_VERB")
    axis = Channel.X if verb in (Verb.SPATIAL_LEFT, Verb.SPATIAL_RIGHT) else Channel.Y
    enc = structure.spec.encoding(axis)
    if enc is None or not structure.table.has_field(enc.field):
        return _Move(invalid_code="INVALID_VERB")
    if structure.table.rows[node.meta["row_id"]][enc.field] is None:
        return _Move(invalid_code="INVALID_VERB")
    target = spatial_neighbor(structure, node.id, verb)
    return _Move(target=target, boundary=target is None)


def spatial_neighbor(structure: AccessStructure, node_id: str, direction: Verb | str) -> str | None:
    """Screen-direction neighbor; None at the edge of the grid or value range.

    Grid and table cells move by (col, row) with row 0 at the bottom, so
    spatialUp means larger y. Datum leaves move to the sibling with the next
    lower/higher value on the relevant axis, ties broken by ascending row id.
    """
    direction = Verb(direction)
    node = structure.node(node_id)
    if node.spatial_coord is not None:
        col, row = node.spatial_coord
        dc, dr = {
            Verb.SPATIAL_LEFT: (-1, 0),
            Verb.SPATIAL_RIGHT: (1, 0),
            Verb.SPATIAL_UP: (0, 1),
            Verb.SPATIAL_DOWN: (0, -1),
        }[direction]
        return structure.spatial_lookup(node.parent_id, (col + dc, row + dr))
    if node.kind != NodeKind.DATUM:
        raise TypeMismatchError(f"node {node_id!r} supports no spatial moves")
    axis = Channel.X if direction in (Verb.SPATIAL_LEFT, Verb.SPATIAL_RIGHT) else Channel.Y
    enc = structure.spec.encoding(axis)
    if enc is None:
        raise TypeMismatchError(f"no {axis.value} encoding for spatial moves")
    table = structure.table
    field = enc.field
    me = (table.rows[node.meta["row_id"]][field], node.meta["row_id"])
    if me[0] is None:
        raise TypeMismatchError("datum has no value on the spatial axis")
    forward = direction in (Verb.SPATIAL_RIGHT, Verb.SPATIAL_UP)
    best: tuple | None = None
    for sibling_id in structure.sibling_ids(node):
        sibling = structure.node(sibling_id)
        if sibling.kind != NodeKind.DATUM or sibling_id == node_id:
            continue
        rid = sibling.meta["row_id"]
        value = table.rows[rid][field]
        if value is None:
            continue
        candidate = (value, rid)
        if forward and candidate > me and (best is None or candidate < best):
            best = candidate
        if not forward and candidate < me and (best is None or candidate > best):
            best = candidate
    if best is None:
        return None
    for sibling_id in structure.sibling_ids(node):
        sibling = structure.node(sibling_id)
        if sibling.kind == NodeKind.DATUM and sibling.meta["row_id"] == best[1]:
            return sibling_id
    return None


def _switch_branch(structure: AccessStructure, node: AccessNode) -> _Move:
    units = structure.switch_units
    if not units or node.id == structure.root_id:
        return _Move(invalid_code="NOT_APPLICABLE")
    top = structure.top_branch(node)
    unit_index = None
    for i, (_, branch_ids) in enumerate(units):
        if top.id in branch_ids:
            unit_index = i
            break
    if unit_index is None:
        return _Move(invalid_code="NOT_APPLICABLE")
    target_unit = units[(unit_index + 1) % len(units)]
    target_branch = structure.node(target_unit[1][0])

    if node.kind == NodeKind.DATUM:
        rid = node.meta["row_id"]
        for branch_id in target_unit[1]:
            found = _find_datum(structure, branch_id, rid)
            if found is not None:
                return _Move(target=found)
        parent = structure.node(node.parent_id)
        target_id, _ = _overlap_map(structure, parent, top, target_branch)
        return _Move(target=target_id, clamped=True)

    target_id, clamped = _overlap_map(structure, node, top, target_branch)
    return _Move(target=target_id, clamped=clamped)


def _find_datum(structure: AccessStructure, branch_id: str, row_id: int) -> str | None:
    stack = [branch_id]
    while stack:
        current = stack.pop(0)
        node = structure.node(current)
        if node.kind == NodeKind.DATUM and node.meta["row_id"] == row_id:
            return current
        stack.extend(node.child_ids)
    return None


def _overlap_map(
    structure: AccessStructure, node: AccessNode, source_branch: AccessNode, target_branch: AccessNode
) -> tuple[str, bool]:
    """Best-overlap node at the same relative depth under the target branch."""
    relative_depth = structure.depth(node) - structure.depth(source_branch)
    clamped = False
    while relative_depth > 0:
        level = _level_nodes(structure, target_branch, relative_depth)
        if level:
            members = set(node.selection.member_row_ids)
            best_id, best_overlap = None, -1
            for candidate_id in level:
                overlap = len(members.intersection(structure.node(candidate_id).selection.member_row_ids))
                if overlap > best_overlap:
                    best_id, best_overlap = candidate_id, overlap
            return best_id, clamped
        relative_depth -= 1
        clamped = True
    return target_branch.id, clamped


def _level_nodes(structure: AccessStructure, branch: AccessNode, depth: int) -> list[str]:
    level = [branch.id]
    for _ in range(depth):
        level = [cid for nid in level for cid in structure.node(nid).child_ids]
    return level
