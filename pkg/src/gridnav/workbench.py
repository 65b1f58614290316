"""High-level workflows: learn the navigation program and the controller,
run single instances, and reproduce the benchmark tables."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field

from .executors import (
    BACKTRACKING,
    EXHAUSTED,
    REVERSING,
    SOLVED,
    BasicEnvironment,
    ExecutionResult,
    ExecutorConfig,
    execute,
)
from .fsc import CONTROLLER_STATES, FSC
from .fixtures import fixture_map, lake_fixture_names, zero_map
from .grid import Coord, GridMap, generate_maze, with_endpoints
from .mil import Hypothesis, TupleBackground, behaviour_goal, hypothesis_to_tuples, learn
from .model import (
    ActionBackground,
    generalized_example,
    instantiate_actions,
    problem_from_map,
)
from .solver import (
    Plan,
    UnsolvableError,
    generate_behaviours,
    observation_matrices,
    solve,
)

SOLVER = "solver"
FSC_BT = "fsc-bt"
FSC_RE = "fsc-re"
FSC_BT_SLAM = "fsc-bt-slam"
FSC_RE_SLAM = "fsc-re-slam"
AGENTS = (SOLVER, FSC_BT, FSC_RE, FSC_BT_SLAM, FSC_RE_SLAM)

_EXECUTOR_FOR_AGENT = {
    FSC_BT: (BACKTRACKING, False),
    FSC_RE: (REVERSING, False),
    FSC_BT_SLAM: (BACKTRACKING, True),
    FSC_RE_SLAM: (REVERSING, True),
}


def learn_solver() -> Hypothesis:
    """Learn the navigation program from the built-in 2x2 training map and
    its fully generalized example (only the map identifier is bound)."""
    grid = zero_map()
    background = ActionBackground(instantiate_actions(grid))
    return learn([generalized_example(grid.id)], background, target="s")


def controller_examples(behaviours):
    """Compose the controller learning problem from behaviours: one goal per
    behaviour per incoming controller state."""
    examples = []
    for behaviour in behaviours:
        for q in CONTROLLER_STATES:
            examples.append(behaviour_goal(behaviour, initial_q=q))
    return examples


def learn_controller(solver: Hypothesis, matrices=None) -> FSC:
    """Learn a controller from a navigation program.

    Generates the observation matrices, solves each under the label-threaded
    model to get behaviours, learns a clause set over the tuple universe,
    and projects it onto its ground 4-tuples.
    """
    if matrices is None:
        matrices = observation_matrices()
    behaviours = generate_behaviours(matrices, solver)
    program = learn(
        controller_examples(behaviours), TupleBackground(), target="c"
    )
    return hypothesis_to_tuples(program)


@dataclass
class RunOutcome:
    """Uniform single-instance outcome across agents."""

    agent: str
    grid: GridMap
    outcome: str
    steps: int
    labels: tuple[str, ...]
    plan: Plan | None = None
    result: ExecutionResult | None = None

    @property
    def solved(self) -> bool:
        return self.outcome == SOLVED


def run_single(agent: str, grid: GridMap, *, solver: Hypothesis | None = None,
               controller: FSC | None = None, step_budget: int | None = None) -> RunOutcome:
    """Run one agent on one map instance."""
    if agent == SOLVER:
        if solver is None:
            raise ValueError("solver agent needs a hypothesis")
        try:
            plan = solve(grid, solver, problem_from_map(grid))
        except UnsolvableError:
            return RunOutcome(agent, grid, EXHAUSTED, 0, ())
        return RunOutcome(agent, grid, SOLVED, len(plan), plan.labels, plan=plan)
    if agent not in _EXECUTOR_FOR_AGENT:
        raise ValueError(f"unknown agent {agent!r}")
    if controller is None:
        raise ValueError(f"agent {agent!r} needs a controller")
    kind, slam = _EXECUTOR_FOR_AGENT[agent]
    env = BasicEnvironment(grid)
    cfg = ExecutorConfig(kind, slam=slam, step_budget=step_budget)
    result = execute(controller, env, cfg)
    labels = tuple(t.a for t in result.trace)
    return RunOutcome(agent, grid, result.outcome, result.steps, labels, result=result)


@dataclass(frozen=True)
class ExperimentSpec:
    """One benchmark row: an agent on a seeded set of environment instances.

    The seed fully determines the instance set, so runs of different agents
    with the same (environment, dimensions, instances, seed) see identical
    maps and can be joined per instance.
    """

    agent: str
    environment: str  # "maze" | "lake"
    width: int = 50
    height: int = 50
    instances: int = 20
    seed: int = 0
    step_budget: int | None = None

    @classmethod
    def desk_maze(cls, agent: str, seed: int = 0, full: bool = False) -> "ExperimentSpec":
        if full:
            return cls(agent, "maze", 101, 101, 100, seed)
        return cls(agent, "maze", 51, 51, 20, seed)

    @classmethod
    def desk_lake(cls, agent: str, seed: int = 0, full: bool = False) -> "ExperimentSpec":
        rolls = 50 if full else 10
        fixtures = len(lake_fixture_names())
        return cls(agent, "lake", 20, 20, fixtures * rolls, seed)


@dataclass(frozen=True)
class InstanceRecord:
    instance: str
    agent: str
    outcome: str
    steps: int


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    records: tuple[InstanceRecord, ...]
    outcomes: dict[str, RunOutcome] = field(default_factory=dict, repr=False)

    @property
    def solved_fraction(self) -> float:
        return sum(r.outcome == SOLVED for r in self.records) / len(self.records)

    @property
    def mean_steps(self) -> float:
        solved = [r.steps for r in self.records if r.outcome == SOLVED]
        return sum(solved) / len(solved) if solved else float("nan")

    def table_row(self) -> str:
        dims = f"{self.spec.width}x{self.spec.height}"
        return (
            f"{self.spec.agent:<12} {self.spec.environment:<6} {dims:<9} "
            f"{len(self.records):>9} {self.solved_fraction * 100:>7.1f}% {self.mean_steps:>10.2f}"
        )

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["instance", "agent", "outcome", "steps"])
        for r in self.records:
            writer.writerow([r.instance, r.agent, r.outcome, r.steps])
        return out.getvalue()


REPORT_HEADER = (
    f"{'Agent':<12} {'Env':<6} {'Dims':<9} {'Instances':>9} {'Solved':>8} {'Steps':>10}"
)


def experiment_instances(spec: ExperimentSpec) -> list[tuple[str, GridMap]]:
    """The seeded instance set for a spec; identical across agents."""
    instances: list[tuple[str, GridMap]] = []
    if spec.environment == "maze":
        for i in range(spec.instances):
            grid = generate_maze(spec.width, spec.height, seed=spec.seed * 100_003 + i)
            instances.append((f"maze-{i:03d}", grid))
    elif spec.environment == "lake":
        names = lake_fixture_names()
        for i in range(spec.instances):
            fixture = fixture_map(names[i % len(names)])
            rng = random.Random(spec.seed * 1_000_003 + i)
            cells = sorted(fixture.passable_cells())
            start, end = rng.sample(cells, 2)
            grid = with_endpoints(fixture, Coord(*start), Coord(*end))
            instances.append((f"{fixture.id}-{i:03d}", grid))
    else:
        raise ValueError(f"unknown environment {spec.environment!r}")
    return instances


def run_experiment(spec: ExperimentSpec, *, solver: Hypothesis | None = None,
                   controller: FSC | None = None) -> ExperimentReport:
    """Run the agent over the spec's instance set and aggregate a report row
    plus per-instance records."""
    if spec.agent == SOLVER:
        solver = solver if solver is not None else learn_solver()
    elif controller is None:
        controller = learn_controller(solver if solver is not None else learn_solver())
    records = []
    outcomes = {}
    for name, grid in experiment_instances(spec):
        run = run_single(
            spec.agent, grid, solver=solver, controller=controller,
            step_budget=spec.step_budget,
        )
        records.append(InstanceRecord(name, spec.agent, run.outcome, run.steps))
        outcomes[name] = run
    return ExperimentReport(spec, tuple(records), outcomes)
