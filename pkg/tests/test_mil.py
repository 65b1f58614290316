from __future__ import annotations

import pytest

from gridnav import (
    ActionBackground,
    DefiniteClause,
    DepthBudgetError,
    FSC,
    FSCTuple,
    Hypothesis,
    Metarule,
    TupleBackground,
    UNKNOWN,
    UnlearnableError,
    behaviour_goal,
    entails,
    generalized_example,
    hypothesis_to_tuples,
    instantiate_actions,
    learn,
    parse_map,
    problem_from_map,
    prove,
    zero_map,
)
from gridnav.mil import LabelStreams

SOLVER_TEXT = """\
s(A,B) :- step_down(A,B).
s(A,B) :- step_left(A,B).
s(A,B) :- step_right(A,B).
s(A,B) :- step_up(A,B).
s(A,B) :- step_down(A,C), s(C,B).
s(A,B) :- step_left(A,C), s(C,B).
s(A,B) :- step_right(A,C), s(C,B).
s(A,B) :- step_up(A,C), s(C,B).
"""


def zero_background():
    return ActionBackground(instantiate_actions(zero_map()))


class TestProve:
    def test_minimal_map_single_identity(self):
        grid = parse_map("se", "pair")
        background = ActionBackground(instantiate_actions(grid))
        problem = problem_from_map(grid)
        subs = prove(problem.initial, problem.goal, background)
        assert subs == frozenset({(Metarule.IDENTITY, "step_right")})

    def test_unsatisfiable_goal_empty_set(self):
        # A full wall row splits the map into two components.
        grid = parse_map("sf\nww\nfe", "split")
        background = ActionBackground(instantiate_actions(grid))
        problem = problem_from_map(grid)
        assert prove(problem.initial, problem.goal, background) == frozenset()

    def test_fact_instance_at_depth_one(self):
        grid = parse_map("se", "pair")
        background = ActionBackground(instantiate_actions(grid))
        problem = problem_from_map(grid)
        subs = prove(problem.initial, problem.goal, background, depth_budget=1)
        assert (Metarule.IDENTITY, "step_right") in subs

    def test_budget_exhausted_raises(self):
        grid = parse_map("sfe", "corridor")
        background = ActionBackground(instantiate_actions(grid))
        problem = problem_from_map(grid)
        with pytest.raises(DepthBudgetError):
            prove(problem.initial, problem.goal, background, depth_budget=1)

    def test_generalized_zero_example_collects_all_eight(self):
        problem = generalized_example("zero")
        subs = prove(problem.initial, problem.goal, zero_background())
        assert len(subs) == 8
        assert {m for m, _ in subs} == {Metarule.IDENTITY, Metarule.TAILREC}
        assert {s for _, s in subs} == {"step_down", "step_left", "step_right", "step_up"}


class TestLearn:
    def test_zero_map_learns_the_eight_clause_program(self):
        hypothesis = learn([generalized_example("zero")], zero_background(), target="s")
        assert hypothesis.to_text() == SOLVER_TEXT

    def test_single_fact_identity(self):
        grid = parse_map("se", "pair")
        only_right = [a for a in instantiate_actions(grid) if a.name == "step_right"]
        assert len(only_right) == 1
        hypothesis = learn([problem_from_map(grid)], ActionBackground(only_right), target="s")
        assert hypothesis.to_text() == "s(A,B) :- step_right(A,B).\n"

    def test_deterministic(self):
        first = learn([generalized_example("zero")], zero_background(), target="s")
        second = learn([generalized_example("zero")], zero_background(), target="s")
        assert first == second

    def test_unlearnable_example_raises(self):
        grid = parse_map("sf\nww\nfe", "split")
        background = ActionBackground(instantiate_actions(grid))
        with pytest.raises(UnlearnableError):
            learn([problem_from_map(grid)], background, target="s")

    def test_requires_examples(self):
        with pytest.raises(ValueError):
            learn([], zero_background(), target="s")

    def test_learned_clauses_are_metarule_instances(self):
        hypothesis = learn([generalized_example("zero")], zero_background(), target="s")
        for clause in hypothesis.clauses:
            assert clause.metarule in (Metarule.IDENTITY, Metarule.TAILREC)
            assert clause.target == "s"
            assert clause.body_symbol.startswith("step_")

    def test_hypothesis_size_bound(self):
        hypothesis = learn([generalized_example("zero")], zero_background(), target="s")
        assert len(hypothesis) <= 2 * len(zero_background().symbols)

    def test_soundness_examples_replay(self):
        background = zero_background()
        example = generalized_example("zero")
        hypothesis = learn([example], background, target="s")
        assert entails(hypothesis, background, example.initial, example.goal)

    def test_soundness_via_plan_interpreter(self):
        # every ground instance of the training example replays through solve
        from gridnav import Coord, PlanningProblem, StateTerm, solve

        grid = zero_map()
        hypothesis = learn([generalized_example("zero")], zero_background(), target="s")
        cells = grid.passable_cells()
        for a in cells:
            for b in cells:
                if a == b:
                    continue
                problem = PlanningProblem(
                    "zero",
                    StateTerm("zero", Coord(*a), "f"),
                    StateTerm("zero", Coord(*b), "f"),
                )
                plan = solve(grid, hypothesis, problem)
                assert plan.actions[0].input.pos == a
                assert plan.actions[-1].output.pos == b

    def test_negative_examples_prune(self):
        # Positives only need step_right; a negative reachable only through
        # step_up forces that clause out.
        grid = parse_map("sf\nfe", "quad")
        background = ActionBackground(instantiate_actions(grid))
        from gridnav import Coord, StateTerm

        positive = (StateTerm("quad", Coord(0, 0), "f"), StateTerm("quad", Coord(1, 0), "e"))
        negative = (StateTerm("quad", Coord(0, 0), "f"), StateTerm("quad", Coord(0, 1), "s"))
        hypothesis = learn([positive], background, target="s", negatives=[negative])
        assert entails(hypothesis, background, *positive)
        assert not entails(hypothesis, background, *negative)


class TestHypothesisText:
    def test_round_trip(self):
        hypothesis = Hypothesis.from_text(SOLVER_TEXT)
        assert hypothesis.to_text() == SOLVER_TEXT
        assert len(hypothesis) == 8

    def test_rejects_garbage(self):
        with pytest.raises(Exception):
            Hypothesis.from_text("s(A,B) :- nonsense\n")

    def test_rejects_wrong_recursive_call(self):
        with pytest.raises(Exception):
            Hypothesis.from_text("s(A,B) :- step_up(A,C), t(C,B).\n")


class TestTupleBackground:
    def test_ground_streams_match_exactly_one_symbol(self):
        background = TupleBackground()
        initial, goal = behaviour_goal([FSCTuple("q0", "upuu", "right", "q1")])
        cands = list(background.candidates(initial))
        assert len(cands) == 1
        assert cands[0][0] == FSCTuple("q0", "upuu", "right", "q1")

    def test_unknown_head_enumerates(self):
        background = TupleBackground()
        state = LabelStreams((UNKNOWN,), ("upuu",), ("right",), ("q1",))
        cands = list(background.candidates(state))
        assert len(cands) == 4  # one per controller state

    def test_empty_streams_have_no_candidates(self):
        background = TupleBackground()
        assert list(background.candidates(LabelStreams((), (), (), ()))) == []

    def test_learn_from_single_behaviour(self):
        behaviour = [FSCTuple("q0", "upuu", "right", "q1")]
        program = learn([behaviour_goal(behaviour)], TupleBackground(), target="c")
        fsc = hypothesis_to_tuples(program)
        assert fsc.tuples == frozenset(behaviour)

    def test_chained_behaviour_learns_tailrec_too(self):
        behaviour = [
            FSCTuple("q0", "upuu", "right", "q1"),
            FSCTuple("q1", "upup", "right", "q1"),
        ]
        program = learn([behaviour_goal(behaviour)], TupleBackground(), target="c")
        assert {c.metarule for c in program.clauses} == {Metarule.IDENTITY, Metarule.TAILREC}
        assert hypothesis_to_tuples(program).tuples == frozenset(behaviour)


class TestHypothesisToTuples:
    def test_empty_hypothesis(self):
        assert hypothesis_to_tuples(Hypothesis.of([], "c")) == FSC(frozenset())

    def test_rejects_non_tuple_bodies(self):
        clause = DefiniteClause(Metarule.IDENTITY, "s", "step_up")
        with pytest.raises(Exception, match="not a controller tuple"):
            hypothesis_to_tuples(Hypothesis.of([clause], "s"))
