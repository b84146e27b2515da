"""Interaction state machine: reorder, hide, drill, back.

A Session owns one dataset and the mutable view state. Internally it keeps
`sequence`, the side order of every dimension that is not drilled away;
hidden dimensions stay in the sequence (so unhiding restores their exact
slot, and the outer polygon keeps its side count) but are skipped when the
tree is cut. Every successful command bumps the revision and yields a fresh
LayoutDocument plus a TransitionPlan for the marbles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .dataset import CategoryPath, Dataset
from .encoding import (
    hue_for_dimension,
    lightness_for_value,
    stroke_width_for_depth,
)
from .layout import (
    EmptySelectionError as _LayoutEmptySelection,
    LayoutConfig,
    LayoutNode,
    SideAssignment,
    assign_sides,
    build_tree,
    node_summary,
    sides_for,
)
from .marbles import SimConstants, TransitionPlan, assign_targets


class SessionError(Exception):
    """Base for command failures; `code` is the protocol error string."""

    code = "session-error"
    http_status = 400


class InvalidPositionError(SessionError):
    code = "invalid-position"
    http_status = 400


class UnknownDimensionError(SessionError):
    code = "unknown-dimension"
    http_status = 404


class LastVisibleDimensionError(SessionError):
    code = "last-visible-dimension"
    http_status = 409


class UnknownNodeError(SessionError):
    code = "unknown-node"
    http_status = 404


class EmptyStackError(SessionError):
    code = "empty-stack"
    http_status = 409


class EmptySelectionError(SessionError):
    code = "empty-selection"
    http_status = 409


@dataclass(frozen=True)
class SessionState:
    """Immutable snapshot of the view state."""

    order: tuple[int, ...]            # visible dimensions, side order
    hidden: frozenset[int]
    drill_stack: tuple[CategoryPath, ...]
    seed: int
    revision: int


@dataclass(frozen=True)
class LegendEntry:
    dimension: int
    name: str
    hidden: bool
    hue: Optional[float]              # None while hidden
    stroke_width: Optional[float]
    values: tuple[tuple[str, float], ...]   # (value name, lightness)

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "name": self.name,
            "hidden": self.hidden,
            "hue": self.hue,
            "strokeWidth": self.stroke_width,
            "values": [
                {"name": name, "lightness": lightness}
                for name, lightness in self.values
            ],
        }


def _node_dict(ds: Dataset, node: LayoutNode) -> dict:
    if node.path.entries:
        dim, vidx = node.path.entries[-1]
        dim_name = ds.dimensions[dim].name
        value = ds.dimensions[dim].values[vidx]
    else:
        dim, value = None, None
    return {
        "id": node.id,
        "orderPos": node.dim_order_pos,
        "dimension": dim,
        "value": value,
        "valueIndex": node.value_index,
        "count": node.count,
        "fraction": node.fraction,
        "polygon": [[v.x, v.y] for v in node.polygon.vertices],
        "style": {
            "hue": node.style.hue,
            "saturation": node.style.saturation,
            "lightness": node.style.lightness,
            "strokeWidth": node.style.stroke_width,
        },
        "edges": [
            [[a.x, a.y], [b.x, b.y]] for a, b in node.own_edges
        ],
        "marbles": [
            {
                "id": m.id,
                "x": m.position.x,
                "y": m.position.y,
                "r": m.radius,
                "group": m.group_index,
            }
            for m in node.marbles
        ],
        "children": [_node_dict(ds, c) for c in node.children],
    }


@dataclass(frozen=True)
class LayoutDocument:
    """Self-contained snapshot a client can render and hit-test alone."""

    revision: int
    sides: int
    seed: int
    legend: tuple[LegendEntry, ...]
    breadcrumb: tuple[tuple[str, str], ...]
    root: LayoutNode
    assignment: SideAssignment
    dataset: Dataset

    def to_dict(self) -> dict:
        return {
            "revision": self.revision,
            "sides": self.sides,
            "seed": self.seed,
            "legend": [entry.to_dict() for entry in self.legend],
            "breadcrumb": [
                {"dimension": d, "value": v} for d, v in self.breadcrumb
            ],
            "tree": _node_dict(self.dataset, self.root),
        }

    def marble_index(self) -> tuple[tuple[int, object], ...]:
        return tuple(
            (m.id, m.position)
            for leaf in self.root.leaves()
            for m in leaf.marbles
        )


def transition(before: LayoutDocument, after: LayoutDocument,
               constants: SimConstants = SimConstants()) -> TransitionPlan:
    """Marble continuity between two documents: matches plus fade sets."""
    old = before.marble_index()
    new = after.marble_index()
    matching = assign_targets([p for _, p in old], [p for _, p in new])
    return TransitionPlan(
        matches=tuple((old[i][0], new[j][0]) for i, j in matching.matches),
        fade_in=tuple(new[j][0] for j in matching.fade_in),
        fade_out=tuple(old[i][0] for i in matching.fade_out),
        constants=constants,
    )


class Session:
    """One dataset, one serialized command stream, one live document."""

    def __init__(
        self,
        ds: Dataset,
        seed: int = 0,
        order: Optional[Sequence[int]] = None,
        hidden: Iterable[int] = (),
        drill: Sequence[tuple[int, int]] = (),
        cfg: LayoutConfig = LayoutConfig(),
    ):
        self._ds = ds
        self._seed = seed
        self._cfg = cfg
        n = len(ds.dimensions)
        sequence = tuple(order) if order is not None else tuple(range(n))
        if sorted(sequence) != list(range(n)):
            raise InvalidPositionError(
                "order must be a permutation of all dimension indices"
            )
        self._hidden = frozenset(hidden)
        for d in self._hidden:
            if not 0 <= d < n:
                raise UnknownDimensionError(f"no dimension {d}")
        self._stack: list[tuple[CategoryPath, tuple[int, ...]]] = []
        if drill:
            pairs = tuple(drill)
            drilled = {d for d, _ in pairs}
            if len(drilled) != len(pairs):
                raise InvalidPositionError("drill fixes a dimension twice")
            if drilled & self._hidden:
                raise InvalidPositionError("cannot drill a hidden dimension")
            after = tuple(d for d in sequence if d not in drilled)
            self._stack.append((CategoryPath(pairs), sequence))
            sequence = after
        self._sequence = sequence
        self._revision = 0
        if not self._visible():
            raise LastVisibleDimensionError("no dimension left visible")
        self._doc = self._rebuild()

    # -- state ------------------------------------------------------------

    def _visible(self) -> tuple[int, ...]:
        return tuple(d for d in self._sequence if d not in self._hidden)

    @property
    def state(self) -> SessionState:
        return SessionState(
            order=self._visible(),
            hidden=self._hidden,
            drill_stack=tuple(path for path, _ in self._stack),
            seed=self._seed,
            revision=self._revision,
        )

    @property
    def revision(self) -> int:
        return self._revision

    def document(self) -> LayoutDocument:
        return self._doc

    def detail(self, node_id: int) -> dict:
        node = self._doc.root.find(node_id)
        if node is None:
            raise UnknownNodeError(f"no node with id {node_id}")
        out = node_summary(self._ds, node).to_dict()
        out["nodeId"] = node_id
        out["revision"] = self._revision
        return out

    # -- commands ---------------------------------------------------------

    def reorder(self, from_pos: int, to_pos: int):
        visible = list(self._visible())
        n = len(visible)
        for pos in (from_pos, to_pos):
            if not isinstance(pos, int) or isinstance(pos, bool):
                raise InvalidPositionError(f"position {pos!r} is not an int")
            if not 0 <= pos < n:
                raise InvalidPositionError(
                    f"position {pos} outside 0..{n - 1}"
                )
        moved = visible.pop(from_pos)
        visible.insert(to_pos, moved)
        seq = list(self._sequence)
        slots = [i for i, d in enumerate(seq) if d not in self._hidden]
        for slot, d in zip(slots, visible):
            seq[slot] = d
        self._sequence = tuple(seq)
        return self._commit()

    def set_hidden(self, dim: int, hidden: bool):
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise UnknownDimensionError(f"dimension {dim!r} is not an int")
        if dim not in self._sequence:
            raise UnknownDimensionError(
                f"dimension {dim} is not on the polygon"
            )
        if hidden:
            new_hidden = self._hidden | {dim}
            if not any(d not in new_hidden for d in self._sequence):
                raise LastVisibleDimensionError(
                    "cannot hide the last visible dimension"
                )
        else:
            new_hidden = self._hidden - {dim}
        self._hidden = new_hidden
        return self._commit()

    def drill(self, node_id: int):
        node = self._doc.root.find(node_id)
        if node is None:
            raise UnknownNodeError(f"no node with id {node_id}")
        if not node.path.entries:
            raise InvalidPositionError("drill target fixes no dimensions")
        fixed = {d for d, _ in node.path}
        remaining = tuple(d for d in self._sequence if d not in fixed)
        if not any(d not in self._hidden for d in remaining):
            raise LastVisibleDimensionError(
                "drilling here would leave no visible dimension"
            )
        self._stack.append((node.path, self._sequence))
        self._sequence = remaining
        return self._commit()

    def back(self):
        if not self._stack:
            raise EmptyStackError("nothing to go back to")
        _, sequence_before = self._stack.pop()
        self._sequence = sequence_before
        return self._commit()

    # -- rebuild ----------------------------------------------------------

    def _commit(self):
        before = self._doc
        self._revision += 1
        self._doc = self._rebuild()
        return self._doc, transition(before, self._doc)

    def _drill_path(self) -> CategoryPath:
        return CategoryPath(tuple(
            pair for path, _ in self._stack for pair in path
        ))

    def _legend(self, visible: tuple[int, ...]) -> tuple[LegendEntry, ...]:
        n = len(visible)
        pos = {d: i for i, d in enumerate(visible)}
        entries = []
        for d in self._sequence:
            dim = self._ds.dimensions[d]
            k = len(dim.values)
            is_hidden = d in self._hidden
            entries.append(LegendEntry(
                dimension=d,
                name=dim.name,
                hidden=is_hidden,
                hue=None if is_hidden else hue_for_dimension(pos[d], n),
                stroke_width=(
                    None if is_hidden else stroke_width_for_depth(pos[d], n)
                ),
                values=tuple(
                    (v, lightness_for_value(j, k))
                    for j, v in enumerate(dim.values)
                ),
            ))
        return tuple(entries)

    def _rebuild(self) -> LayoutDocument:
        visible = self._visible()
        drill = self._drill_path()
        drilled = {d for d, _ in drill}
        assert set(visible) | self._hidden | drilled == set(
            range(len(self._ds.dimensions))
        ) and self._hidden.isdisjoint(drilled)
        sides = sides_for(len(self._sequence))
        assignment = assign_sides(visible, self._cfg, sides)
        try:
            root = build_tree(
                self._ds, visible, drill, self._cfg, self._seed, sides
            )
        except _LayoutEmptySelection as exc:
            raise EmptySelectionError(str(exc)) from exc
        breadcrumb = tuple(
            (self._ds.dimensions[d].name, self._ds.dimensions[d].values[v])
            for path, _ in self._stack
            for d, v in path
        )
        return LayoutDocument(
            revision=self._revision,
            sides=sides,
            seed=self._seed,
            legend=self._legend(visible),
            breadcrumb=breadcrumb,
            root=root,
            assignment=assignment,
            dataset=self._ds,
        )
