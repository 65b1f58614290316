"""
Executors: backtracking, reversing, and mapping
===============================================

An executor loops a controller against an environment, exchanging only
labels.  The backtracking executor searches depth-first and rewinds the
environment at dead ends — fine in simulation, impossible in the physical
world.  The reversing executor keeps an explicit stack and retraces its
steps instead, so every move it makes is a real move.

In open areas a memoryless controller walks in circles; the mapping
variants build an origin-relative map as they go and refuse to re-enter
cells they already visited unless they are reversing.
"""

from gridnav import (
    BACKTRACKING,
    BasicEnvironment,
    ExecutorConfig,
    REVERSING,
    execute,
    fixture_controller,
    fixture_map,
    learn_controller,
    learn_solver,
    render_map,
    render_slam,
)

controller = learn_controller(learn_solver())
maze_a = fixture_map("maze_a")
maze_b = fixture_map("maze_b")

# The ambiguity pair: the handwritten controller turns left at the junction,
# which is right for maze_a and wrong for maze_b.  The learned controller
# keeps every consistent choice and lets the executor search.
fixed = fixture_controller("maze_a")
for name, fsc in (("handwritten", fixed), ("learned", controller)):
    for grid in (maze_a, maze_b):
        result = execute(fsc, BasicEnvironment(grid), ExecutorConfig(BACKTRACKING))
        print(f"{name:12s} + backtracking on {grid.id}: {result.outcome} ({result.steps} steps)")
print()

# Reversing costs more steps: exploration and retreat are both real moves.
for kind in (BACKTRACKING, REVERSING):
    result = execute(controller, BasicEnvironment(maze_a), ExecutorConfig(kind))
    print(f"{kind:12s} on maze_a: {result.outcome} in {result.steps} steps")
print()

# On a lake map, plain reversing circles until the step budget runs out;
# with mapping it explores each cell once and finds the goal.
lake = fixture_map("lake_01")
for slam in (False, True):
    env = BasicEnvironment(lake)
    result = execute(controller, env, ExecutorConfig(REVERSING, slam=slam))
    tag = "reversing+slam" if slam else "reversing"
    print(f"{tag:14s} on {lake.id}: {result.outcome} ({result.steps} steps)")
print()

# What the agent mapped while exploring, next to the ground truth it never saw.
env = BasicEnvironment(lake)
result = execute(controller, env, ExecutorConfig(REVERSING, slam=True))
print("ground truth:              agent's map (o visited, ? never observed):")
truth = render_map(lake).splitlines()
mapped = render_slam(result.slam_map).splitlines()
for i in range(max(len(truth), len(mapped))):
    left = truth[i] if i < len(truth) else ""
    right = mapped[i] if i < len(mapped) else ""
    print(f"{left:26s} {right}")
