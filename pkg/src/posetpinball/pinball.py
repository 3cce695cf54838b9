"""The poset pinball engine.

Balls sit on the slots of a graded poset and are released one at a time
along a fixed total order of the initial subset.  A ball in play must keep
rolling down unwalled cover edges until none remain, then it rests: the
slot is squared, the rolldown is recorded, and walls are placed according
to the variant before the next ball is released.

Variants differ only in the walls placed after each rest:

* basic: every edge into the resting slot;
* upper_triangular: basic, plus every edge into the principal order
  ideal of the released slot;
* betti: basic, plus every edge into rank j whenever the number of
  rank-j rolldowns has reached the j-th target;
* upper_triangular_betti: all of the above.

A Betti game is successful when the final rank histogram of the rolldown
set equals the targets exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import DomainError
from .poset import GradedPoset


class InvalidOrder(DomainError):
    code = "invalid-order"


class MissingTargets(DomainError):
    code = "missing-targets"


class NoBallInPlay(DomainError):
    code = "no-ball-in-play"


class IllegalMove(DomainError):
    code = "illegal-move"

    def __init__(self, message="", reason="illegal", **detail):
        super().__init__(message, **detail)
        self.reason = reason


class MovesRemain(DomainError):
    code = "moves-remain"


class ScriptIllegalMove(DomainError):
    code = "script-illegal-move"


class ScriptExhausted(DomainError):
    code = "script-exhausted"


class SlotOccupiedAtRelease(DomainError):
    code = "slot-occupied-at-release"


class GameOver(DomainError):
    code = "game-over"


VARIANTS = ("basic", "upper_triangular", "betti", "upper_triangular_betti")
BETTI_VARIANTS = ("betti", "upper_triangular_betti")

WALL_OCCUPIED = "occupied"
WALL_IDEAL = "upper-triangular"
WALL_BETTI = "betti-rank-full"


@dataclass
class GameConfig:
    board: GradedPoset
    initial: tuple
    variant: str
    targets: tuple | None = None

    def __post_init__(self):
        self.initial = tuple(self.initial)
        if self.variant not in VARIANTS:
            raise DomainError(f"unknown variant {self.variant!r}")
        seen = set()
        for eid in self.initial:
            if eid not in self.board:
                raise DomainError(f"initial element {eid!r} not on the board")
            if eid in seen:
                raise InvalidOrder(f"initial element {eid!r} listed twice")
            seen.add(eid)
        for k, later in enumerate(self.initial):
            for earlier in self.initial[:k]:
                if self.board.leq(later, earlier):
                    raise InvalidOrder(
                        f"{later!r} is below {earlier!r} but released after it"
                    )
        if self.is_betti:
            if self.targets is None:
                raise MissingTargets("Betti variants need target Betti numbers")
            targets = tuple(int(b) for b in self.targets)
            if any(b < 0 for b in targets):
                raise DomainError("targets must be nonnegative")
            # Ranks beyond the listed targets are unconstrained during play;
            # success still requires that no rolldown lands there.
            self.targets = targets
        elif self.targets is not None:
            self.targets = tuple(int(b) for b in self.targets)

    @property
    def is_betti(self):
        return self.variant in BETTI_VARIANTS

    @property
    def is_upper_triangular(self):
        return self.variant in ("upper_triangular", "upper_triangular_betti")

    def to_doc(self, inline_board=True):
        doc = {
            "initial": list(self.initial),
            "variant": self.variant,
        }
        if self.targets is not None:
            doc["targets"] = list(self.targets)
        if inline_board:
            doc["board"] = self.board.to_doc()
        return doc

    @classmethod
    def from_doc(cls, doc, board=None):
        if board is None:
            board = GradedPoset.from_doc(doc["board"])
        return cls(
            board=board,
            initial=tuple(doc["initial"]),
            variant=doc["variant"],
            targets=tuple(doc["targets"]) if doc.get("targets") is not None else None,
        )


class PinballState:
    """Mutable game state; clone before exploring alternatives."""

    __slots__ = ("config", "k", "ball", "origin", "occupied", "rolldown",
                 "walls", "tally", "moves_log", "finished")

    def __init__(self, config: GameConfig):
        self.config = config
        self.k = 0
        self.ball = None
        self.origin = None
        self.occupied = set()
        self.rolldown = {}
        self.walls = {}  # (upper, lower) -> reason, first reason wins
        self.tally = {}
        self.moves_log = []
        self.finished = False

    def clone(self):
        twin = PinballState.__new__(PinballState)
        twin.config = self.config
        twin.k = self.k
        twin.ball = self.ball
        twin.origin = self.origin
        twin.occupied = set(self.occupied)
        twin.rolldown = dict(self.rolldown)
        twin.walls = dict(self.walls)
        twin.tally = dict(self.tally)
        twin.moves_log = list(self.moves_log)
        twin.finished = self.finished
        return twin

    def snapshot_key(self):
        return (self.k, self.ball, tuple(sorted(self.rolldown.items())))

    def _wall(self, edge, reason):
        self.walls.setdefault(edge, reason)

    def _wall_into(self, slot, reason):
        for upper in self.config.board.upper_covers(slot):
            self._wall((upper, slot), reason)

    def release_next(self):
        if self.k >= len(self.config.initial):
            self.finished = True
            self.ball = None
            self.origin = None
            return
        self.k += 1
        slot = self.config.initial[self.k - 1]
        if slot in self.occupied:
            raise SlotOccupiedAtRelease(f"slot {slot!r} already occupied at release")
        self.ball = slot
        self.origin = slot


def new_game(config: GameConfig) -> PinballState:
    state = PinballState(config)
    state.release_next()
    return state


def legal_moves(state: PinballState):
    if state.ball is None:
        raise NoBallInPlay("no ball in play")
    board = state.config.board
    return [
        (state.ball, lower)
        for lower in board.lower_covers(state.ball)
        if (state.ball, lower) not in state.walls
    ]


def apply_move(state: PinballState, edge) -> PinballState:
    if state.ball is None:
        raise NoBallInPlay("no ball in play")
    edge = tuple(edge)
    upper, lower = edge
    if upper != state.ball:
        raise IllegalMove(f"ball is at {state.ball!r}, not {upper!r}", reason="not-the-ball")
    if lower not in state.config.board.lower_covers(upper):
        raise IllegalMove(f"{edge!r} is not a slide of the board", reason="not-a-cover")
    reason = state.walls.get(edge)
    if reason is not None:
        raise IllegalMove(f"slide {edge!r} is walled", reason=reason)
    state.ball = lower
    state.moves_log.append((state.origin, edge))
    return state


def finalize_current(state: PinballState) -> PinballState:
    if state.ball is None:
        raise NoBallInPlay("no ball in play")
    if legal_moves(state):
        raise MovesRemain("the ball can still roll")
    config = state.config
    rest = state.ball
    state.rolldown[state.origin] = rest
    state.occupied.add(rest)
    rank = config.board.rank[rest]
    state.tally[rank] = state.tally.get(rank, 0) + 1
    state._wall_into(rest, WALL_OCCUPIED)
    if config.is_upper_triangular:
        for slot in config.board.principal_ideal(state.origin):
            state._wall_into(slot, WALL_IDEAL)
    if config.is_betti:
        for r, target in enumerate(config.targets):
            if state.tally.get(r, 0) == target:
                for slot in config.board.elements:
                    if config.board.rank[slot] == r:
                        state._wall_into(slot, WALL_BETTI)
    state.ball = None
    state.origin = None
    state.release_next()
    return state


def is_successful(state: PinballState):
    """Success flag: exact rank histogram for Betti variants, else None."""
    if not state.config.is_betti:
        return None
    if not state.finished:
        return False
    histogram = {}
    for slot in state.rolldown.values():
        r = state.config.board.rank[slot]
        histogram[r] = histogram.get(r, 0) + 1
    targets = state.config.targets
    if any(r >= len(targets) for r in histogram):
        return False
    return all(histogram.get(r, 0) == target for r, target in enumerate(targets))


@dataclass
class Outcome:
    rolldown: dict
    success: bool | None
    moves: list
    state: PinballState = field(repr=False, default=None)

    def rolldown_key(self):
        return tuple(sorted(self.rolldown.items()))


def play(config: GameConfig, strategy=None) -> Outcome:
    """Play one full game.

    ``strategy`` is either a callable (state, moves) -> edge, or a list of
    edges consumed in order (a script).  With no strategy the first legal
    slide (board order) is always taken.
    """
    state = new_game(config)
    script = None
    if strategy is not None and not callable(strategy):
        script = iter([tuple(e) for e in strategy])
    while not state.finished:
        moves = legal_moves(state)
        if not moves:
            finalize_current(state)
            continue
        if script is not None:
            edge = next(script, None)
            if edge is None:
                raise ScriptExhausted(f"script ended while {state.ball!r} can still roll")
            if edge not in moves:
                raise ScriptIllegalMove(f"scripted slide {edge!r} is not legal")
        elif strategy is not None:
            edge = tuple(strategy(state, moves))
            if edge not in moves:
                raise ScriptIllegalMove(f"chosen slide {edge!r} is not legal")
        else:
            edge = moves[0]
        apply_move(state, edge)
    if script is not None and next(script, None) is not None:
        raise ScriptIllegalMove("script has moves left after the game ended")
    return Outcome(
        rolldown=dict(state.rolldown),
        success=is_successful(state),
        moves=list(state.moves_log),
        state=state,
    )


@dataclass
class EnumerationResult:
    outcomes: set  # of rolldown-map keys: tuple of sorted (origin, rest) pairs
    complete: bool
    explored: int

    def contains(self, rolldown: dict):
        return tuple(sorted(rolldown.items())) in self.outcomes

    def successful(self, config: GameConfig):
        """The subset of outcomes meeting the Betti targets."""
        if not config.is_betti:
            return set(self.outcomes)
        wanted = {r: b for r, b in enumerate(config.targets) if b}
        good = set()
        for key in self.outcomes:
            histogram = {}
            for _, rest in key:
                r = config.board.rank[rest]
                histogram[r] = histogram.get(r, 0) + 1
            if histogram == wanted:
                good.add(key)
        return good


def enumerate_outcomes(config: GameConfig, node_budget=None) -> EnumerationResult:
    """Every rolldown map reachable by some play, deduplicated.

    States reached twice (same ball index, position, and partial rolldown)
    are explored once.  If the node budget runs out the result is flagged
    as partial instead of raising.
    """
    if node_budget is None:
        import os

        node_budget = int(os.environ.get("PINBALL_NODE_BUDGET", 10_000_000))
    outcomes = set()
    visited = set()
    explored = 0
    complete = True
    stack = [new_game(config)]
    while stack:
        state = stack.pop()
        if state.finished:
            outcomes.add(tuple(sorted(state.rolldown.items())))
            continue
        key = state.snapshot_key()
        if key in visited:
            continue
        visited.add(key)
        explored += 1
        if explored > node_budget:
            complete = False
            break
        moves = legal_moves(state)
        if not moves:
            stack.append(finalize_current(state))
            continue
        for edge in moves:
            stack.append(apply_move(state.clone(), edge))
    return EnumerationResult(outcomes=outcomes, complete=complete, explored=explored)


# ---------------------------------------------------------------------------
# transcripts
# ---------------------------------------------------------------------------


def outcome_to_transcript(config: GameConfig, outcome: Outcome):
    return {
        "config": config.to_doc(inline_board=True),
        "moves": [{"ball": ball, "edge": list(edge)} for ball, edge in outcome.moves],
        "rolldown": dict(outcome.rolldown),
        "success": outcome.success,
    }


def replay_transcript(doc) -> Outcome:
    """Re-run a transcript; the final state is bit-for-bit reproducible."""
    config = GameConfig.from_doc(doc["config"])
    script = [tuple(item["edge"]) for item in doc["moves"]]
    outcome = play(config, script)
    recorded = doc.get("rolldown")
    if recorded is not None and dict(recorded) != outcome.rolldown:
        raise DomainError("transcript rolldown does not match the replay")
    return outcome


def transcript_dumps(config: GameConfig, outcome: Outcome):
    return json.dumps(outcome_to_transcript(config, outcome), indent=2)
