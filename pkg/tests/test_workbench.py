from __future__ import annotations

import subprocess
import sys

import pytest

from gridnav import (
    ExperimentSpec,
    experiment_instances,
    learn_controller,
    observation_matrices,
    run_experiment,
    run_single,
)
from gridnav.workbench import REPORT_HEADER

from test_grid import adjacency_edges, connected_component


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "gridnav.cli", *args],
        capture_output=True, text=True, cwd=cwd,
    )


class TestExperiments:
    def test_instances_are_agent_independent_and_deterministic(self):
        a = experiment_instances(ExperimentSpec("solver", "maze", 9, 9, 3, seed=5))
        b = experiment_instances(ExperimentSpec("fsc-bt", "maze", 9, 9, 3, seed=5))
        assert [(n, g) for n, g in a] == [(n, g) for n, g in b]

    def test_lake_instances_reroll_endpoints(self):
        spec = ExperimentSpec("solver", "lake", 20, 20, 6, seed=1)
        instances = experiment_instances(spec)
        endpoints = {(g.start, g.end) for _, g in instances}
        assert len(endpoints) > 1

    def test_report_determinism(self, solver_hypothesis):
        spec = ExperimentSpec("solver", "maze", 9, 9, 4, seed=2)
        first = run_experiment(spec, solver=solver_hypothesis)
        second = run_experiment(spec, solver=solver_hypothesis)
        assert first.records == second.records

    def test_solver_report(self, solver_hypothesis):
        spec = ExperimentSpec("solver", "maze", 9, 9, 4, seed=2)
        report = run_experiment(spec, solver=solver_hypothesis)
        assert report.solved_fraction == 1.0
        assert report.mean_steps > 0
        assert len(report.table_row().split()) >= 6
        assert REPORT_HEADER.split() == ["Agent", "Env", "Dims", "Instances", "Solved", "Steps"]

    def test_csv_records(self, solver_hypothesis):
        spec = ExperimentSpec("solver", "maze", 9, 9, 2, seed=2)
        report = run_experiment(spec, solver=solver_hypothesis)
        lines = report.to_csv().strip().splitlines()
        assert lines[0] == "instance,agent,outcome,steps"
        assert len(lines) == 3
        assert lines[1].startswith("maze-000,solver,solved,")

    def test_solved_traces_replay(self, solver_hypothesis, learned_controller):
        from gridnav import BasicEnvironment

        spec = ExperimentSpec("fsc-re", "maze", 9, 9, 3, seed=7)
        report = run_experiment(spec, solver=solver_hypothesis, controller=learned_controller)
        instances = dict(experiment_instances(spec))
        for record in report.records:
            run = report.outcomes[record.instance]
            assert record.outcome == "solved"
            assert BasicEnvironment(instances[record.instance]).playback(run.labels)

    def test_unknown_agent(self, maze_a):
        with pytest.raises(ValueError):
            run_single("teleport", maze_a)

    def test_fewer_matrices_fewer_tuples(self, solver_hypothesis, learned_controller):
        reduced = learn_controller(solver_hypothesis, observation_matrices()[:-1])
        assert len(reduced.tuples) < len(learned_controller.tuples)


class TestCli:
    def test_gen_maze_writes_perfect_maze(self, tmp_path):
        out = tmp_path / "m.map"
        result = run_cli("gen", "maze", "21", "21", "--seed", "7", "--out", str(out))
        assert result.returncode == 0
        from gridnav import parse_map

        maze = parse_map(out.read_text(), "m")
        cells = maze.passable_cells()
        assert len(adjacency_edges(maze)) == len(cells) - 1
        assert connected_component(maze, cells[0]) == set(cells)

    def test_gen_lake_connected(self, tmp_path):
        out = tmp_path / "l.map"
        result = run_cli("gen", "lake", "20", "20", "--seed", "7", "--out", str(out))
        assert result.returncode == 0
        from gridnav import parse_map

        lake = parse_map(out.read_text(), "l")
        cells = lake.passable_cells()
        assert connected_component(lake, cells[0]) == set(cells)

    def test_gen_even_width_usage_error(self):
        result = run_cli("gen", "maze", "20", "21")
        assert result.returncode != 0
        assert "odd" in result.stderr

    def test_learn_solver_deterministic_file(self, tmp_path):
        first = tmp_path / "a.pl"
        second = tmp_path / "b.pl"
        assert run_cli("learn-solver", "--out", str(first)).returncode == 0
        assert run_cli("learn-solver", "--out", str(second)).returncode == 0
        assert first.read_text() == second.read_text()
        assert len(first.read_text().strip().splitlines()) == 8

    def test_learn_solver_bad_path(self, tmp_path):
        result = run_cli("learn-solver", "--out", str(tmp_path / "no" / "dir" / "x.pl"))
        assert result.returncode != 0
        assert "error" in result.stderr

    def test_learn_fsc_pipeline(self, tmp_path):
        solver = tmp_path / "solver.pl"
        ctrl = tmp_path / "ctrl.fsc"
        assert run_cli("learn-solver", "--out", str(solver)).returncode == 0
        assert run_cli("learn-fsc", str(solver), "--out", str(ctrl)).returncode == 0
        from gridnav import FSC, tuple_universe

        fsc = FSC.from_text(ctrl.read_text())
        assert len(fsc.tuples) == 128
        assert fsc.tuples <= tuple_universe()

    def test_run_solver_renders_path(self, tmp_path):
        solver = tmp_path / "solver.pl"
        run_cli("learn-solver", "--out", str(solver))
        result = run_cli("run", "solver", "maze_a", str(solver), "--render")
        assert result.returncode == 0
        assert "outcome: solved" in result.stdout
        render = result.stdout.split("steps:")[1]
        assert ">>" in render  # heads right from the start corner

    def test_run_backtracking_exhausts_on_wrong_maze(self, tmp_path):
        ctrl = tmp_path / "a.fsc"
        from gridnav import fixture_controller

        ctrl.write_text(fixture_controller("maze_a").to_text())
        result = run_cli("run", "fsc-bt", "maze_b", str(ctrl))
        assert result.returncode == 0
        assert "outcome: exhausted" in result.stdout

    def test_run_slam_renders_unknown_cells(self, tmp_path):
        solver = tmp_path / "solver.pl"
        ctrl = tmp_path / "ctrl.fsc"
        run_cli("learn-solver", "--out", str(solver))
        run_cli("learn-fsc", str(solver), "--out", str(ctrl))
        result = run_cli("run", "fsc-re-slam", "lake_01", str(ctrl), "--render")
        assert result.returncode == 0
        assert "outcome: solved" in result.stdout
        assert "?" in result.stdout

    def test_experiment_row_and_csv(self, tmp_path):
        csv_path = tmp_path / "rows.csv"
        result = run_cli(
            "experiment", "--agent", "solver", "--env", "lake",
            "--seed", "3", "--csv", str(csv_path),
        )
        assert result.returncode == 0
        assert "solver" in result.stdout
        assert csv_path.read_text().startswith("instance,agent,outcome,steps")

    def test_missing_map(self, tmp_path):
        solver = tmp_path / "solver.pl"
        run_cli("learn-solver", "--out", str(solver))
        result = run_cli("run", "solver", "no_such_map", str(solver))
        assert result.returncode != 0
