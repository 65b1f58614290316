"""Grid mapping for executors: an unbounded, origin-relative record of
observation evidence and visit marks, plus a dead-reckoned agent pose.

Built while a controller explores an unknown map so the executor can refuse
to re-enter cells it already occupied (except when reversing course), which
is what stops it circling in open areas.  Poses are exact integer offsets
from the start cell; grid actions are noiseless, so there is no uncertainty
model.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .grid import DELTA, DIRECTIONS, UNKNOWN_GLYPH

UNOBSERVED = "unknown"
PASSABLE = "passable"
UNPASSABLE = "unpassable"
VISITED = "visited"

_CELL_GLYPHS = {PASSABLE: ".", UNPASSABLE: "#", VISITED: "o", UNOBSERVED: UNKNOWN_GLYPH}


class SlamFault(RuntimeError):
    """An observation contradicted previously recorded evidence, which can
    only mean the dead-reckoned pose has drifted."""


@dataclass
class SlamMap:
    """Expanding map of cell evidence, owned by a single executor run.

    Cells are keyed by (dx, dy) offsets from the start cell; absent keys are
    unobserved.  A visited mark never downgrades.
    """

    cells: dict[tuple[int, int], str] = field(default_factory=dict)
    pose: tuple[int, int] = (0, 0)

    def cell(self, offset: tuple[int, int]) -> str:
        return self.cells.get(offset, UNOBSERVED)

    def _record(self, offset: tuple[int, int], value: str) -> None:
        current = self.cells.get(offset, UNOBSERVED)
        if current == VISITED:
            if value == UNPASSABLE:
                raise SlamFault(f"cell {offset} was visited but now observes unpassable")
            return
        if current != UNOBSERVED and current != value and value != VISITED:
            raise SlamFault(f"cell {offset} observed {value!r} after {current!r}")
        if value == VISITED and current == UNPASSABLE:
            raise SlamFault(f"cell {offset} was unpassable but is being visited")
        self.cells[offset] = value


def slam_update(slam: SlamMap, obs: str) -> SlamMap:
    """Mark the agent's cell visited and record each neighbor's passability
    from the observation label.  Idempotent for a repeated observation;
    contradictions raise SlamFault."""
    slam._record(slam.pose, VISITED)
    x, y = slam.pose
    for ch, d in zip(obs, DIRECTIONS):
        dx, dy = DELTA[d]
        slam._record((x + dx, y + dy), PASSABLE if ch == "p" else UNPASSABLE)
    return slam


def slam_move(slam: SlamMap, action: str) -> SlamMap:
    """Shift the dead-reckoned pose by the action's delta."""
    dx, dy = DELTA[action]
    slam.pose = (slam.pose[0] + dx, slam.pose[1] + dy)
    return slam


def slam_permits(slam: SlamMap, action: str, reversing: bool) -> bool:
    """Whether a move is allowed: into any cell not yet visited, or into a
    visited cell only when reversing course."""
    dx, dy = DELTA[action]
    target = (slam.pose[0] + dx, slam.pose[1] + dy)
    return reversing or slam.cell(target) != VISITED


def render_slam(slam: SlamMap) -> str:
    """Text render over the bounding box of everything recorded; unobserved
    cells show as a distinct glyph and the agent as @."""
    keys = set(slam.cells) | {slam.pose}
    xs = [k[0] for k in keys]
    ys = [k[1] for k in keys]
    rows = []
    for y in range(max(ys), min(ys) - 1, -1):
        row = []
        for x in range(min(xs), max(xs) + 1):
            if (x, y) == slam.pose:
                row.append("@")
            else:
                row.append(_CELL_GLYPHS[slam.cell((x, y))])
        rows.append("".join(row))
    return "\n".join(rows)
