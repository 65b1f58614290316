"""Run learned navigation programs: planning, plan playback, and the
observation-matrix pipeline that produces controller training behaviours."""

from __future__ import annotations

from dataclasses import dataclass

from .fsc import FSCTuple, OBSERVATION_LABELS, STATE_FOR_ACTION, observe
from .grid import DIRECTIONS, FLOOR, WALL, Coord, GridMap
from .mil import Hypothesis, Metarule
from .model import (
    UNKNOWN,
    ActionBackground,
    GroundAction,
    LabeledActionBackground,
    LabeledStateTerm,
    PlanningProblem,
    StateTerm,
    instantiate_actions,
    instantiate_labeled_actions,
    problem_from_map,
)


class PlanningError(Exception):
    pass


class UnsolvableError(PlanningError):
    """The search exhausted every derivation without reaching the goal."""


@dataclass(frozen=True)
class Plan:
    """A chained action sequence from a start state to a goal state."""

    actions: tuple
    labels: tuple[str, ...]
    start: StateTerm
    goal: StateTerm

    def __len__(self) -> int:
        return len(self.actions)

    def to_labels_line(self) -> str:
        return ",".join(self.labels)


def _search(background, hypothesis: Hypothesis, initial, goal):
    """Depth-first interpretation of the hypothesis over a background.

    Clauses are tried in canonical order (Identity instances before Tailrec,
    each by body symbol); visited states are never re-entered, so cyclic
    maps terminate.  Returns the payload sequence of the first derivation
    found, or None.
    """
    identity_syms = hypothesis.body_symbols(Metarule.IDENTITY)
    tailrec_syms = hypothesis.body_symbols(Metarule.TAILREC)

    def completion(state):
        for sym in identity_syms:
            for payload, nxt in background.successors(sym, state):
                if nxt.matches(goal):
                    return payload
        return None

    def expansions(state):
        out = []
        for sym in tailrec_syms:
            for payload, nxt in background.successors(sym, state):
                out.append((payload, nxt))
        return out

    final = completion(initial)
    if final is not None:
        return [final]
    visited = {initial}
    frames = [[expansions(initial), 0]]
    payloads: list = []
    while frames:
        cands, idx = frames[-1]
        if idx < len(cands):
            frames[-1][1] += 1
            payload, nxt = cands[idx]
            if nxt in visited:
                continue
            visited.add(nxt)
            final = completion(nxt)
            if final is not None:
                return payloads + [payload, final]
            payloads.append(payload)
            frames.append([expansions(nxt), 0])
        else:
            frames.pop()
            if payloads:
                payloads.pop()
    return None


def solve(grid: GridMap, hypothesis: Hypothesis, problem: PlanningProblem | None = None) -> Plan:
    """Plan over the map's instantiated actions with a learned program.

    The search is deterministic: repeated calls on the same map and problem
    walk the identical derivation and return the identical plan.
    """
    if problem is None:
        problem = problem_from_map(grid)
    if not hypothesis.clauses:
        raise PlanningError("hypothesis is empty")
    if problem.map_id != grid.id:
        raise PlanningError(f"problem is for map {problem.map_id!r}, not {grid.id!r}")
    if problem.initial.pos is UNKNOWN:
        raise PlanningError("initial state must bind a position")
    if problem.initial == problem.goal:
        raise PlanningError("start equals goal: every clause applies at least one action")
    background = ActionBackground(instantiate_actions(grid))
    payloads = _search(background, hypothesis, problem.initial, problem.goal)
    if payloads is None:
        raise UnsolvableError(f"no derivation reaches the goal on map {grid.id!r}")
    actions: tuple[GroundAction, ...] = tuple(payloads)
    return Plan(actions, tuple(a.direction() for a in actions), problem.initial, problem.goal)


def playback(grid: GridMap, labels) -> tuple[bool, Coord]:
    """Apply action labels from the start tile; fails on the first move into
    a wall or off the map.  Succeeds iff the final position is the end tile.
    Returns (success, final position)."""
    start, end = grid.require_endpoints()
    pos = start
    for label in labels:
        if label not in DIRECTIONS:
            raise ValueError(f"unknown action label {label!r}")
        nxt = pos.shifted(label)
        if not grid.passable(nxt):
            return False, pos
        pos = nxt
    return pos == end, pos


def observation_matrices() -> tuple[GridMap, ...]:
    """One 3x3 training map per observation label: the center cell is
    passable and its four neighbors realize exactly that label."""
    matrices = []
    for label in OBSERVATION_LABELS:
        tiles = [[WALL] * 3 for _ in range(3)]
        tiles[1][1] = FLOOR
        for ch, d in zip(label, DIRECTIONS):
            n = Coord(1, 1).shifted(d)
            tiles[n.y][n.x] = FLOOR if ch == "p" else WALL
        matrices.append(
            GridMap(f"obs_{label}", 3, 3, tuple(tuple(r) for r in tiles))
        )
    return tuple(matrices)


def generate_behaviours(matrices, hypothesis: Hypothesis) -> tuple[tuple[FSCTuple, ...], ...]:
    """Solve each matrix once per passable direction under the label-threaded
    action model, one behaviour per solve.

    Each solve threads singleton label streams, so exactly one quadruple is
    consumed: its observation comes from the matrix, its action from the step
    taken.  The initial controller state is q0 and an unbound next state is
    anchored to the state indexed by the action taken.
    """
    behaviours = []
    for matrix in matrices:
        center = Coord(1, 1)
        label = observe(matrix, center)
        background = LabeledActionBackground(instantiate_labeled_actions(matrix))
        for ch, d in zip(label, DIRECTIONS):
            if ch != "p":
                continue
            goal_pos = center.shifted(d)
            initial = LabeledStateTerm(
                matrix.id, center, matrix.tile_at(center),
                ("q0",), (UNKNOWN,), (UNKNOWN,), (UNKNOWN,),
            )
            goal = LabeledStateTerm(
                matrix.id, goal_pos, matrix.tile_at(goal_pos), (), (), (), (),
            )
            payloads = _search(background, hypothesis, initial, goal)
            if payloads is None:
                raise UnsolvableError(f"matrix {matrix.id!r} has no {d} behaviour")
            steps = []
            for _action, consumed in payloads:
                q, o, a, q_next = consumed
                if q is UNKNOWN:
                    q = steps[-1].q_next if steps else "q0"
                if q_next is UNKNOWN:
                    q_next = STATE_FOR_ACTION[a]
                steps.append(FSCTuple(q, o, a, q_next))
            behaviours.append(tuple(steps))
    return tuple(behaviours)
