from __future__ import annotations

import pytest

from gridnav import fixture_controller, fixture_map, learn_controller, learn_solver


@pytest.fixture(scope="session")
def solver_hypothesis():
    return learn_solver()


@pytest.fixture(scope="session")
def learned_controller(solver_hypothesis):
    return learn_controller(solver_hypothesis)


@pytest.fixture(scope="session")
def maze_a():
    return fixture_map("maze_a")


@pytest.fixture(scope="session")
def maze_b():
    return fixture_map("maze_b")


@pytest.fixture(scope="session")
def controller_a():
    return fixture_controller("maze_a")


@pytest.fixture(scope="session")
def controller_b():
    return fixture_controller("maze_b")


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        verdict = "PASS" if report.passed else "FAIL"
        print(f"\n[acceptance] {name}: {verdict}")
