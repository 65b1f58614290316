from __future__ import annotations

import pytest

from gridnav import (
    ACTION_LABELS,
    CONTROLLER_STATES,
    Coord,
    FSC,
    FSCError,
    FSCTuple,
    MapError,
    OBSERVATION_LABELS,
    STATE_FOR_ACTION,
    is_chained,
    observe,
    observation_matrices,
    parse_map,
    reverse_pair,
    tuple_universe,
    zero_map,
)


class TestAlphabets:
    def test_sizes(self):
        assert len(CONTROLLER_STATES) == 4
        assert len(ACTION_LABELS) == 4
        assert len(OBSERVATION_LABELS) == 15
        assert len(tuple_universe()) == 960

    def test_all_unpassable_label_excluded(self):
        assert "uuuu" not in OBSERVATION_LABELS
        assert all(len(o) == 4 and set(o) <= {"u", "p"} for o in OBSERVATION_LABELS)

    def test_state_for_action(self):
        assert STATE_FOR_ACTION == {"up": "q0", "right": "q1", "down": "q2", "left": "q3"}


class TestObserve:
    def test_zero_map_corner(self):
        assert observe(zero_map(), Coord(0, 0)) == "ppuu"

    def test_corridor_cell(self):
        grid = parse_map("sfe", "corridor")
        assert observe(grid, Coord(1, 0)) == "upup"

    def test_matrix_centers_realize_their_labels(self):
        for matrix in observation_matrices():
            label = matrix.id.removeprefix("obs_")
            assert observe(matrix, Coord(1, 1)) == label

    def test_out_of_bounds(self):
        with pytest.raises(MapError):
            observe(zero_map(), Coord(5, 5))

    def test_unpassable_position(self):
        grid = parse_map("sw\nfe", "tiny")
        with pytest.raises(MapError, match="unpassable"):
            observe(grid, Coord(1, 1))


class TestLookup:
    def test_single_pair(self, controller_a):
        assert controller_a.lookup("q0", "upuu") == (("right", "q1"),)

    def test_missing_pair_is_empty(self, controller_a):
        assert controller_a.lookup("q3", "pppp") == ()

    def test_learned_controller_four_choices(self, learned_controller):
        pairs = learned_controller.lookup("q0", "pppp")
        assert pairs == (("up", "q0"), ("right", "q1"), ("down", "q2"), ("left", "q3"))

    def test_example_controllers_are_deterministic(self, controller_a, controller_b):
        assert controller_a.is_deterministic()
        assert controller_b.is_deterministic()

    def test_learned_controller_is_nondeterministic(self, learned_controller):
        assert not learned_controller.is_deterministic()


class TestReversePair:
    def test_up_reverses_to_down(self):
        assert reverse_pair("up", "q0") == ("down", "q2")

    def test_left_reverses_to_right(self):
        assert reverse_pair("left", "q3") == ("right", "q1")

    def test_involution_on_canonical_pairs(self):
        for action in ACTION_LABELS:
            pair = (action, STATE_FOR_ACTION[action])
            assert reverse_pair(*reverse_pair(*pair)) == pair

    def test_unknown_action(self):
        with pytest.raises(FSCError):
            reverse_pair("jump", "q0")


class TestTupleValidation:
    def test_universe_containment(self, learned_controller):
        assert learned_controller.tuples <= tuple_universe()

    def test_bad_labels_rejected(self):
        with pytest.raises(FSCError):
            FSCTuple("q9", "upuu", "right", "q1")
        with pytest.raises(FSCError):
            FSCTuple("q0", "uuuu", "right", "q1")
        with pytest.raises(FSCError):
            FSCTuple("q0", "upuu", "jump", "q1")


class TestControllerFiles:
    def test_round_trip(self, learned_controller):
        assert FSC.from_text(learned_controller.to_text()) == learned_controller

    def test_duplicate_lines_rejected(self):
        with pytest.raises(FSCError, match="duplicate"):
            FSC.from_text("q0,upuu,right,q1\nq0,upuu,right,q1\n")

    def test_malformed_line_rejected(self):
        with pytest.raises(FSCError):
            FSC.from_text("q0,upuu,right\n")

    def test_comments_and_blanks_ignored(self):
        fsc = FSC.from_text("# header\n\nq0,upuu,right,q1\n")
        assert len(fsc.tuples) == 1


class TestChaining:
    def test_chained_sequence(self):
        steps = [
            FSCTuple("q0", "upuu", "right", "q1"),
            FSCTuple("q1", "upup", "right", "q1"),
            FSCTuple("q1", "uupp", "down", "q2"),
        ]
        assert is_chained(steps)

    def test_broken_chain(self):
        steps = [
            FSCTuple("q0", "upuu", "right", "q1"),
            FSCTuple("q3", "upup", "left", "q3"),
        ]
        assert not is_chained(steps)
