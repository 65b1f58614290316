"""Stack-machine interpreters that run a controller against an environment.

Executors exchange only labels with the environment: they emit action labels
and receive observation labels plus an at-goal flag.  They never see
coordinates, the map, or the goal location.  The backtracking executor may
additionally save and restore opaque environment checkpoints; the reversing
executor never does, and instead physically retraces its steps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fsc import FSC, FSCTuple, observe, reverse_pair
from .grid import DIRECTIONS, OPPOSITE, Coord, GridMap
from .slam import SlamMap, slam_move, slam_permits, slam_update

SOLVED = "solved"
EXHAUSTED = "exhausted"
BUDGET_EXCEEDED = "budget_exceeded"

BACKTRACKING = "backtracking"
REVERSING = "reversing"


class ExecutorError(Exception):
    pass


class BasicEnvironment:
    """Grid-world environment for one navigation instance.

    Exposes only what crosses the controller boundary: observation labels,
    an at-goal flag, move acceptance, and opaque integer checkpoint tokens.
    The accepted-move trail is kept for reporting and rendering; executors
    never read it.
    """

    supports_checkpoint = True

    def __init__(self, grid: GridMap):
        self.grid = grid
        self._start, self._end = grid.require_endpoints()
        self._pos = self._start
        self._trail: list[Coord] = [self._start]
        self._tokens: dict[Coord, int] = {}
        self._states: list[Coord] = []

    def reset(self) -> str:
        """Place the agent on the start tile and return the observation."""
        self._pos = self._start
        self._trail = [self._start]
        return observe(self.grid, self._pos)

    def step(self, action: str) -> tuple[str, bool] | None:
        """Apply an action label.  Returns (observation, at_goal), or None
        when the move hits a wall or the map edge (state unchanged)."""
        if action not in DIRECTIONS:
            raise ExecutorError(f"unknown action label {action!r}")
        nxt = self._pos.shifted(action)
        if not self.grid.passable(nxt):
            return None
        self._pos = nxt
        self._trail.append(nxt)
        return observe(self.grid, self._pos), self._pos == self._end

    def checkpoint(self) -> int:
        """Opaque token for the current state; equal states yield equal
        tokens."""
        token = self._tokens.get(self._pos)
        if token is None:
            token = len(self._states)
            self._tokens[self._pos] = token
            self._states.append(self._pos)
        return token

    def restore(self, token: int) -> None:
        self._pos = self._states[token]

    def playback(self, labels) -> bool:
        """Replay action labels from the start tile; True iff every move is
        accepted and the final position is the goal."""
        pos = self._start
        for label in labels:
            nxt = pos.shifted(label)
            if not self.grid.passable(nxt):
                return False
            pos = nxt
        return pos == self._end

    @property
    def trail(self) -> tuple[Coord, ...]:
        return tuple(self._trail)


@dataclass(frozen=True)
class ExecutorConfig:
    kind: str = BACKTRACKING
    slam: bool = False
    step_budget: int | None = None

    def budget_for(self, env) -> int:
        if self.step_budget is not None:
            return self.step_budget
        grid = getattr(env, "grid", None)
        if grid is None:
            raise ExecutorError("step_budget must be set for map-less environments")
        return 10 * grid.width * grid.height


@dataclass(frozen=True)
class TraceStep:
    """One executed decision; reversal steps retrace an earlier move and are
    tagged so step accounting can tell them apart."""

    q: str
    o: str
    a: str
    q_next: str
    reversal: bool = False

    def as_tuple(self) -> FSCTuple:
        return FSCTuple(self.q, self.o, self.a, self.q_next)

    def as_line(self) -> str:
        suffix = " (reversal)" if self.reversal else ""
        return f"{self.q},{self.o},{self.a},{self.q_next}{suffix}"


@dataclass
class ExecutionResult:
    outcome: str
    steps: int
    trace: tuple[TraceStep, ...]
    path: tuple[Coord, ...] = ()
    slam_map: SlamMap | None = None

    def to_text(self) -> str:
        lines = [f"outcome: {self.outcome}", f"steps: {self.steps}"]
        lines += [t.as_line() for t in self.trace]
        return "\n".join(lines) + "\n"


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> bool:
        self.used += 1
        return self.used <= self.limit


def run_backtracking(fsc: FSC, env, cfg: ExecutorConfig) -> ExecutionResult:
    """Depth-first search over controller choices with environment rewind.

    At each state the executor tries the lookup pairs for (q, o) in order;
    a dead end restores the environment to the choice point.  States already
    seen (by checkpoint token) are pruned, so the search visits each
    environment state at most once and always halts.  Requires an
    environment with checkpoint support, so it only runs in simulation.
    """
    if not getattr(env, "supports_checkpoint", False):
        raise ExecutorError("backtracking executor needs checkpoint/restore support")
    budget = _Budget(cfg.budget_for(env))
    obs = env.reset()
    slam = SlamMap() if cfg.slam else None
    if slam is not None:
        slam_update(slam, obs)
    visited = {env.checkpoint()}

    class Frame:
        __slots__ = ("q", "obs", "token", "pose", "pairs", "idx", "entering")

        def __init__(self, q, obs_, entering):
            self.q = q
            self.obs = obs_
            self.token = env.checkpoint()
            self.pose = slam.pose if slam is not None else None
            self.pairs = fsc.lookup(q, obs_)
            self.idx = 0
            self.entering = entering

    def kept_trace(stack) -> tuple[TraceStep, ...]:
        return tuple(f.entering for f in stack if f.entering is not None)

    stack = [Frame("q0", obs, None)]
    while stack:
        frame = stack[-1]
        if frame.idx >= len(frame.pairs):
            stack.pop()
            if stack:
                env.restore(stack[-1].token)
                if slam is not None:
                    slam.pose = stack[-1].pose
            continue
        a, q_next = frame.pairs[frame.idx]
        frame.idx += 1
        env.restore(frame.token)
        if slam is not None:
            slam.pose = frame.pose
            if not slam_permits(slam, a, reversing=False):
                continue
        result = env.step(a)
        if result is None:
            continue
        if not budget.spend():
            return ExecutionResult(
                BUDGET_EXCEEDED, len(kept_trace(stack)), kept_trace(stack),
                getattr(env, "trail", ()), slam,
            )
        obs2, at_goal = result
        if slam is not None:
            slam_move(slam, a)
            slam_update(slam, obs2)
        step = TraceStep(frame.q, frame.obs, a, q_next)
        if at_goal:
            trace = kept_trace(stack) + (step,)
            return ExecutionResult(SOLVED, len(trace), trace, getattr(env, "trail", ()), slam)
        token = env.checkpoint()
        if token in visited:
            env.restore(frame.token)
            if slam is not None:
                slam.pose = frame.pose
            continue
        visited.add(token)
        stack.append(Frame(q_next, obs2, step))
    return ExecutionResult(EXHAUSTED, 0, (), getattr(env, "trail", ()), slam)


def run_reversing(fsc: FSC, env, cfg: ExecutorConfig) -> ExecutionResult:
    """Stack machine that explores by really moving, never rewinding.

    Arriving somewhere by a forward move pushes the untried lookup pairs for
    the new (q, o) — minus the immediate reverse of the arriving action, to
    stop oscillation — then the reverse of the move itself on top.  Popping
    the reverse physically retraces the step, so by the time a pending
    sibling is popped the agent is back where that sibling was recorded.
    An empty stack means the exploration is exhausted.
    """
    budget = _Budget(cfg.budget_for(env))
    obs = env.reset()
    q = "q0"
    slam = SlamMap() if cfg.slam else None
    if slam is not None:
        slam_update(slam, obs)
    stack: list[tuple] = []
    trace: list[TraceStep] = []

    def push_pairs(exclude: str | None) -> None:
        for a, q_next in reversed(fsc.lookup(q, obs)):
            if exclude is not None and a == exclude:
                continue
            stack.append(("forward", FSCTuple(q, obs, a, q_next)))

    push_pairs(exclude=None)
    while stack:
        kind, entry = stack.pop()
        if kind == "forward":
            a, q_next = entry.a, entry.q_next
            if slam is not None and not slam_permits(slam, a, reversing=False):
                continue
        else:
            a, q_next = entry
        result = env.step(a)
        if result is None:
            continue
        if not budget.spend():
            return ExecutionResult(
                BUDGET_EXCEEDED, len(trace), tuple(trace), getattr(env, "trail", ()), slam,
            )
        obs2, at_goal = result
        if slam is not None:
            slam_move(slam, a)
            slam_update(slam, obs2)
        trace.append(TraceStep(q, obs, a, q_next, reversal=(kind == "reverse")))
        q, obs = q_next, obs2
        if at_goal:
            return ExecutionResult(
                SOLVED, len(trace), tuple(trace), getattr(env, "trail", ()), slam,
            )
        if kind == "forward":
            stack.append(("reverse", reverse_pair(a, q_next)))
            push_pairs(exclude=OPPOSITE[a])
    return ExecutionResult(EXHAUSTED, len(trace), tuple(trace), getattr(env, "trail", ()), slam)


def run_with_slam(kind: str, fsc: FSC, env, cfg: ExecutorConfig) -> ExecutionResult:
    """Run the named executor with mapping enabled: every accepted step
    updates the map and forward moves never re-enter visited cells."""
    slam_cfg = ExecutorConfig(kind, slam=True, step_budget=cfg.step_budget)
    return execute(fsc, env, slam_cfg)


def execute(fsc: FSC, env, cfg: ExecutorConfig) -> ExecutionResult:
    if cfg.kind == BACKTRACKING:
        return run_backtracking(fsc, env, cfg)
    if cfg.kind == REVERSING:
        return run_reversing(fsc, env, cfg)
    raise ExecutorError(f"unknown executor kind {cfg.kind!r}")
