"""A minimal meta-interpretive learner.

Second-order resolution over exactly two clause templates — Identity
``P(x,y) :- Q(x,y)`` and Tailrec ``P(x,y) :- Q(x,z), P(z,y)`` — against a
ground background.  Every successful derivation of a training goal yields a
substitution (template, body symbol); applying the substitutions gives the
learned first-order program.

Two backgrounds are supported: ground step actions of a map (learning a
navigation program) and the universe of controller 4-tuples applied to
label streams (learning a controller from behaviours).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .fsc import FSC, FSCTuple, tuple_universe
from .model import UNKNOWN, PlanningProblem


class Metarule(Enum):
    IDENTITY = "identity"
    TAILREC = "tailrec"

    def schema(self) -> str:
        if self is Metarule.IDENTITY:
            return "P(x,y) :- Q(x,y)"
        return "P(x,y) :- Q(x,z), P(z,y)"


METARULES = (Metarule.IDENTITY, Metarule.TAILREC)


class LearningError(Exception):
    pass


class UnlearnableError(LearningError):
    """No derivation exists for some training example."""


class DepthBudgetError(LearningError):
    """The derivation-depth budget ran out before any refutation."""


def _symbol_key(symbol) -> str:
    return symbol.as_line() if isinstance(symbol, FSCTuple) else str(symbol)


def _symbol_text(symbol, args: str) -> str:
    if isinstance(symbol, FSCTuple):
        return f"tuple({symbol.as_line()},{args})"
    return f"{symbol}({args})"


@dataclass(frozen=True)
class DefiniteClause:
    """A first-order clause: one metarule instantiated with the target
    predicate in the head and a background symbol in the body."""

    metarule: Metarule
    target: str
    body_symbol: object

    def to_text(self) -> str:
        if self.metarule is Metarule.IDENTITY:
            return f"{self.target}(A,B) :- {_symbol_text(self.body_symbol, 'A,B')}."
        body = _symbol_text(self.body_symbol, "A,C")
        return f"{self.target}(A,B) :- {body}, {self.target}(C,B)."


@dataclass(frozen=True)
class Hypothesis:
    """A duplicate-free set of learned clauses for one target predicate."""

    clauses: frozenset[DefiniteClause]
    target: str

    @classmethod
    def of(cls, clauses: Iterable[DefiniteClause], target: str) -> "Hypothesis":
        return cls(frozenset(clauses), target)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.ordered())

    def ordered(self) -> tuple[DefiniteClause, ...]:
        """Canonical clause order: Identity instances before Tailrec ones,
        each group sorted by body symbol."""
        return tuple(
            sorted(
                self.clauses,
                key=lambda c: (METARULES.index(c.metarule), _symbol_key(c.body_symbol)),
            )
        )

    def body_symbols(self, metarule: Metarule) -> tuple:
        return tuple(
            c.body_symbol
            for c in self.ordered()
            if c.metarule is metarule
        )

    def to_text(self) -> str:
        return "\n".join(c.to_text() for c in self.ordered()) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypothesis":
        identity = re.compile(r"^(\w+)\(A,B\)\s*:-\s*(\w+)\(A,B\)\.$")
        tailrec = re.compile(r"^(\w+)\(A,B\)\s*:-\s*(\w+)\(A,C\),\s*(\w+)\(C,B\)\.$")
        clauses = []
        target = None
        for n, line in enumerate(text.splitlines()):
            line = line.strip()
            if not line or line.startswith("%"):
                continue
            m = identity.match(line)
            if m:
                head, body = m.groups()
                clauses.append(DefiniteClause(Metarule.IDENTITY, head, body))
            else:
                m = tailrec.match(line)
                if not m:
                    raise LearningError(f"line {n}: not a metarule instance: {line!r}")
                head, body, rec = m.groups()
                if rec != head:
                    raise LearningError(f"line {n}: recursive call on {rec!r}, expected {head!r}")
                clauses.append(DefiniteClause(Metarule.TAILREC, head, body))
            if target is None:
                target = clauses[-1].target
            elif clauses[-1].target != target:
                raise LearningError(f"line {n}: mixed target predicates")
        if not clauses:
            raise LearningError("no clauses in hypothesis text")
        return cls.of(clauses, target)


@dataclass(frozen=True)
class LabelStreams:
    """Resolution state for controller learning: four label streams consumed
    in lockstep, one (q, o, a, q') quadruple per applied tuple."""

    q_seq: tuple
    o_seq: tuple
    a_seq: tuple
    q_next_seq: tuple

    def heads(self) -> tuple | None:
        seqs = (self.q_seq, self.o_seq, self.a_seq, self.q_next_seq)
        if not all(seqs):
            return None
        return tuple(s[0] for s in seqs)

    def tails(self) -> "LabelStreams":
        return LabelStreams(self.q_seq[1:], self.o_seq[1:], self.a_seq[1:], self.q_next_seq[1:])

    def matches(self, other: "LabelStreams") -> bool:
        for mine, theirs in (
            (self.q_seq, other.q_seq),
            (self.o_seq, other.o_seq),
            (self.a_seq, other.a_seq),
            (self.q_next_seq, other.q_next_seq),
        ):
            if len(mine) != len(theirs):
                return False
            for a, b in zip(mine, theirs):
                if a is not UNKNOWN and b is not UNKNOWN and a != b:
                    return False
        return True


EMPTY_STREAMS = LabelStreams((), (), (), ())


def behaviour_goal(behaviour: Sequence[FSCTuple], initial_q: str | None = None):
    """Encode a behaviour as a resolution goal: initial streams threading its
    labels (optionally rebasing the first controller state), empty goal."""
    if not behaviour:
        raise ValueError("behaviour must contain at least one tuple")
    q_seq = tuple(t.q for t in behaviour)
    if initial_q is not None:
        q_seq = (initial_q,) + q_seq[1:]
    initial = LabelStreams(
        q_seq,
        tuple(t.o for t in behaviour),
        tuple(t.a for t in behaviour),
        tuple(t.q_next for t in behaviour),
    )
    return initial, EMPTY_STREAMS


class TupleBackground:
    """The controller-tuple universe as a ground background: each 4-tuple is
    one dyadic symbol that consumes a matching quadruple of stream heads."""

    def __init__(self, universe: Iterable[FSCTuple] | None = None):
        self.universe = frozenset(universe) if universe is not None else tuple_universe()
        self.symbols = tuple(sorted(self.universe))
        self._index = {(t.q, t.o, t.a, t.q_next): t for t in self.universe}

    def _matching(self, heads: tuple) -> list[FSCTuple]:
        if not any(h is UNKNOWN for h in heads):
            t = self._index.get(heads)
            return [t] if t is not None else []
        return [
            t
            for t in self.symbols
            if all(h is UNKNOWN or h == v for h, v in zip(heads, (t.q, t.o, t.a, t.q_next)))
        ]

    def successors(self, symbol: FSCTuple, state: LabelStreams):
        heads = state.heads()
        if heads is None:
            return
        if all(h is UNKNOWN or h == v for h, v in
               zip(heads, (symbol.q, symbol.o, symbol.a, symbol.q_next))):
            yield symbol, state.tails()

    def candidates(self, state: LabelStreams):
        heads = state.heads()
        if heads is None:
            return
        tails = state.tails()
        for t in self._matching(heads):
            yield t, t, tails

    def suggested_depth(self, initial: LabelStreams | None = None) -> int:
        if initial is None:
            return 8
        return max(1, len(initial.o_seq)) + 1


class _Frame:
    __slots__ = ("state", "entered_via", "children", "idx", "success")

    def __init__(self, state, entered_via, children):
        self.state = state
        self.entered_via = entered_via
        self.children = children
        self.idx = 0
        self.success = False


def prove(initial, goal, background, depth_budget: int | None = None) -> frozenset:
    """Enumerate all successful simple derivations of the goal and return the
    metasubstitutions (metarule, body symbol) they use.

    A derivation never revisits a state it already passed through, so cyclic
    state graphs terminate; ``depth_budget`` caps actions per derivation.
    Returns the empty set when the goal is unsatisfiable; raises
    DepthBudgetError when the budget cut off every candidate derivation.
    """
    budget = depth_budget if depth_budget is not None else background.suggested_depth(initial)
    if budget < 1:
        raise ValueError("depth budget must be positive")
    metasubs: set[tuple[Metarule, object]] = set()
    budget_hit = False

    def make_frame(state, entered_via, depth) -> _Frame:
        nonlocal budget_hit
        grouped: dict[object, set] = {}
        for sym, _payload, nxt in background.candidates(state):
            grouped.setdefault(nxt, set()).add(sym)
        frame = _Frame(state, entered_via, [])
        if depth + 1 <= budget:
            for nxt, syms in grouped.items():
                if nxt.matches(goal):
                    for sym in syms:
                        metasubs.add((Metarule.IDENTITY, sym))
                    frame.success = True
        elif grouped:
            budget_hit = True
        if depth + 2 <= budget:
            frame.children = list(grouped.items())
        elif grouped:
            budget_hit = True
        return frame

    stack = [make_frame(initial, None, 0)]
    path = {initial}
    root_success = False
    while stack:
        top = stack[-1]
        if top.idx < len(top.children):
            nxt, syms = top.children[top.idx]
            top.idx += 1
            if nxt in path:
                continue
            path.add(nxt)
            stack.append(make_frame(nxt, syms, len(stack)))
        else:
            stack.pop()
            path.discard(top.state)
            if top.success:
                if stack:
                    for sym in top.entered_via:
                        metasubs.add((Metarule.TAILREC, sym))
                    stack[-1].success = True
                else:
                    root_success = True
    if root_success:
        return frozenset(metasubs)
    if budget_hit:
        raise DepthBudgetError("depth budget exhausted before any refutation")
    return frozenset()


def _goal_pair(example):
    if isinstance(example, PlanningProblem):
        return example.initial, example.goal
    initial, goal = example
    return initial, goal


def learn(examples, background, *, target: str, negatives=(),
          depth_budget: int | None = None) -> Hypothesis:
    """Learn a hypothesis covering every positive example.

    Collects the metasubstitutions of all successful derivations of each
    example and instantiates them into clauses.  Negative examples, when
    given, trigger a pruning pass that drops clauses not needed to cover the
    positives while any negative is still derivable.
    """
    examples = list(examples)
    if not examples:
        raise ValueError("at least one positive example is required")
    all_subs: set[tuple[Metarule, object]] = set()
    for example in examples:
        initial, goal = _goal_pair(example)
        subs = prove(initial, goal, background, depth_budget)
        if not subs:
            raise UnlearnableError(f"no derivation exists for example {example!r}")
        all_subs |= subs
    clauses = {DefiniteClause(rule, target, sym) for rule, sym in all_subs}
    hypothesis = Hypothesis.of(clauses, target)
    if negatives:
        hypothesis = _prune_against_negatives(
            hypothesis, background, examples, list(negatives), depth_budget
        )
    return hypothesis


def entails(hypothesis: Hypothesis, background, initial, goal,
            depth_budget: int | None = None) -> bool:
    """Whether background plus hypothesis derives the goal from the initial
    state.  Depth-first over the hypothesis clauses, never revisiting a
    state along one derivation."""
    budget = depth_budget if depth_budget is not None else background.suggested_depth(initial)
    identity_syms = hypothesis.body_symbols(Metarule.IDENTITY)
    tailrec_syms = hypothesis.body_symbols(Metarule.TAILREC)

    def derive(state, path, depth) -> bool:
        if depth + 1 <= budget:
            for sym in identity_syms:
                for _payload, nxt in background.successors(sym, state):
                    if nxt.matches(goal):
                        return True
        if depth + 2 <= budget:
            for sym in tailrec_syms:
                for _payload, nxt in background.successors(sym, state):
                    if nxt in path:
                        continue
                    if derive(nxt, path | {nxt}, depth + 1):
                        return True
        return False

    return derive(initial, frozenset((initial,)), 0)


def _prune_against_negatives(hypothesis, background, positives, negatives, depth_budget):
    def covers_positives(clauses) -> bool:
        trial = Hypothesis.of(clauses, hypothesis.target)
        return all(
            entails(trial, background, *_goal_pair(p), depth_budget) for p in positives
        )

    def entailed_negatives(clauses) -> int:
        trial = Hypothesis.of(clauses, hypothesis.target)
        return sum(
            entails(trial, background, *_goal_pair(n), depth_budget) for n in negatives
        )

    current = list(hypothesis.ordered())
    while True:
        bad = entailed_negatives(current)
        if bad == 0:
            break
        for clause in reversed(current):
            trial = [c for c in current if c != clause]
            if trial and covers_positives(trial) and entailed_negatives(trial) < bad:
                current = trial
                break
        else:
            break
    return Hypothesis.of(current, hypothesis.target)


def hypothesis_to_tuples(hypothesis: Hypothesis) -> FSC:
    """Project a controller program onto its tuple set: the deduplicated
    ground 4-tuples named by the clause bodies."""
    tuples = set()
    for clause in hypothesis.clauses:
        if not isinstance(clause.body_symbol, FSCTuple):
            raise LearningError(
                f"clause body {clause.body_symbol!r} is not a controller tuple"
            )
        tuples.add(clause.body_symbol)
    return FSC.of(tuples)
