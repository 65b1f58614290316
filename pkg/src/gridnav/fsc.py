"""Nondeterministic finite state controllers over fixed label alphabets.

A controller is a set of 4-tuples (q, o, a, q') mapping a controller state
and an observation to an action and a next controller state.  Controllers
carry no map knowledge: they exchange only labels with whatever runs them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .grid import DIRECTIONS, OPPOSITE, Coord, GridMap, MapError

CONTROLLER_STATES = ("q0", "q1", "q2", "q3")
ACTION_LABELS = DIRECTIONS
OBSERVATION_LABELS = tuple(
    "".join(chars) for chars in product("pu", repeat=4) if "".join(chars) != "uuuu"
)

# Controller state reached after taking each action ("last action" indexing).
STATE_FOR_ACTION = dict(zip(ACTION_LABELS, CONTROLLER_STATES))

_Q_INDEX = {q: i for i, q in enumerate(CONTROLLER_STATES)}
_A_INDEX = {a: i for i, a in enumerate(ACTION_LABELS)}


class FSCError(ValueError):
    """Raised for labels outside the alphabets or malformed controller files."""


def observe(grid: GridMap, pos: Coord) -> str:
    """Observation label at ``pos``: one character per direction (up, right,
    down, left), ``p`` if that neighbor is passable and ``u`` otherwise.
    Off-map neighbors read as unpassable."""
    if not grid.in_bounds(pos):
        raise MapError(f"map {grid.id!r}: observation position {pos!r} out of bounds")
    if not grid.passable(pos):
        raise MapError(f"map {grid.id!r}: observation position {pos!r} is unpassable")
    return "".join("p" if grid.passable(pos.shifted(d)) else "u" for d in DIRECTIONS)


@dataclass(frozen=True, order=True)
class FSCTuple:
    q: str
    o: str
    a: str
    q_next: str

    def __post_init__(self) -> None:
        if self.q not in CONTROLLER_STATES or self.q_next not in CONTROLLER_STATES:
            raise FSCError(f"bad controller state in {self.as_line()!r}")
        if self.o not in OBSERVATION_LABELS:
            raise FSCError(f"bad observation label in {self.as_line()!r}")
        if self.a not in ACTION_LABELS:
            raise FSCError(f"bad action label in {self.as_line()!r}")

    def as_line(self) -> str:
        return f"{self.q},{self.o},{self.a},{self.q_next}"


def tuple_universe() -> frozenset[FSCTuple]:
    """All 960 well-formed controller tuples."""
    return frozenset(
        FSCTuple(q, o, a, q2)
        for q in CONTROLLER_STATES
        for o in OBSERVATION_LABELS
        for a in ACTION_LABELS
        for q2 in CONTROLLER_STATES
    )


@dataclass(frozen=True)
class FSC:
    """A set of controller tuples; nondeterministic when some (q, o) pair
    admits more than one (a, q') choice."""

    tuples: frozenset[FSCTuple]

    @classmethod
    def of(cls, tuples: Iterable[FSCTuple]) -> "FSC":
        return cls(frozenset(tuples))

    def lookup(self, q: str, o: str) -> tuple[tuple[str, str], ...]:
        """All (action, next state) pairs for (q, o), in a fixed order:
        actions up/right/down/left first, ties broken by next state."""
        pairs = [(t.a, t.q_next) for t in self.tuples if t.q == q and t.o == o]
        pairs.sort(key=lambda p: (_A_INDEX[p[0]], _Q_INDEX[p[1]]))
        return tuple(pairs)

    def is_deterministic(self) -> bool:
        seen = set()
        for t in self.tuples:
            if (t.q, t.o) in seen:
                return False
            seen.add((t.q, t.o))
        return True

    def ordered(self) -> tuple[FSCTuple, ...]:
        return tuple(sorted(self.tuples, key=lambda t: (_Q_INDEX[t.q], t.o, _A_INDEX[t.a], _Q_INDEX[t.q_next])))

    def to_text(self) -> str:
        return "\n".join(t.as_line() for t in self.ordered()) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FSC":
        tuples: list[FSCTuple] = []
        for n, line in enumerate(text.splitlines()):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 4:
                raise FSCError(f"line {n}: expected q,o,a,q' but got {line!r}")
            t = FSCTuple(*parts)
            if t in tuples:
                raise FSCError(f"line {n}: duplicate tuple {line!r}")
            tuples.append(t)
        return cls.of(tuples)


def reverse_pair(a: str, q_next: str) -> tuple[str, str]:
    """Reverse of an (action, next state) decision: the opposite action,
    paired with that action's own controller state."""
    if a not in OPPOSITE:
        raise FSCError(f"action {a!r} has no reverse")
    rev = OPPOSITE[a]
    return rev, STATE_FOR_ACTION[rev]


def is_chained(steps: Sequence[FSCTuple]) -> bool:
    """True when each tuple's next state equals its successor's state."""
    return all(a.q_next == b.q for a, b in zip(steps, steps[1:]))
