"""
Benchmarks: does the controller solve what the solver solves?
=============================================================

Desk-scale reproduction: 20 seeded 51x51 mazes, and 5 fixed 20x20 lake
maps with 10 random start/end placements each.  Same seed, same instances,
so rows are comparable per instance across agents.

The headline property: the backtracking executor finds exactly the paths
the solver plans (identical step counts), and the reversing executor pays
for its physical retracing with strictly more steps.
"""

import time

from gridnav import ExperimentSpec, learn_controller, learn_solver, run_experiment
from gridnav.workbench import REPORT_HEADER

solver = learn_solver()
controller = learn_controller(solver)

print("mazes (20 instances, 51x51, seed 0):")
print(REPORT_HEADER)
maze_reports = {}
for agent in ("solver", "fsc-bt", "fsc-re"):
    started = time.monotonic()
    spec = ExperimentSpec.desk_maze(agent, seed=0)
    maze_reports[agent] = run_experiment(spec, solver=solver, controller=controller)
    print(maze_reports[agent].table_row(), f"  [{time.monotonic() - started:.1f}s]")
print()

solver_steps = {r.instance: r.steps for r in maze_reports["solver"].records}
bt_steps = {r.instance: r.steps for r in maze_reports["fsc-bt"].records}
matches = sum(solver_steps[k] == bt_steps[k] for k in solver_steps)
print(f"fsc-bt matches the solver's plan length on {matches}/{len(solver_steps)} instances")
print()

print("lakes (5 fixtures x 10 start/end rolls, seed 0):")
print(REPORT_HEADER)
for agent in ("solver", "fsc-bt-slam", "fsc-re-slam"):
    spec = ExperimentSpec.desk_lake(agent, seed=0)
    report = run_experiment(spec, solver=solver, controller=controller)
    print(report.table_row())
print()
print("run with --full on the command line for full-scale instance counts:")
print("  gridnav experiment --agent solver --env maze --full")
