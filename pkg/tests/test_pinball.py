import pytest

from posetpinball.coxeter import make_weyl
from posetpinball.hessenberg import springer_fixed_points
from posetpinball.pinball import (
    GameConfig,
    IllegalMove,
    InvalidOrder,
    MissingTargets,
    MovesRemain,
    ScriptExhausted,
    ScriptIllegalMove,
    apply_move,
    enumerate_outcomes,
    finalize_current,
    is_successful,
    legal_moves,
    new_game,
    outcome_to_transcript,
    play,
    replay_transcript,
)
from posetpinball.poset import build_poset


@pytest.fixture(scope="module")
def a3():
    return make_weyl("A", 3)


@pytest.fixture(scope="module")
def s4_board(a3):
    return a3.to_poset()


def fig2_config(a3, s4_board, variant="basic", targets=None):
    fps = springer_fixed_points(4, (3, 1), a3)
    order = [a3.element_id(w) for w in sorted(fps, key=a3.length)]
    assert order == ["e", "s3", "s3.s2", "s3.s2.s1"]
    return GameConfig(board=s4_board, initial=order, variant=variant, targets=targets)


def test_new_game_and_validation(a3, s4_board):
    config = fig2_config(a3, s4_board)
    state = new_game(config)
    assert state.k == 1 and state.ball == "e"
    with pytest.raises(InvalidOrder):
        GameConfig(s4_board, ("s3.s2", "s3"), "basic")
    with pytest.raises(MissingTargets):
        GameConfig(s4_board, ("e",), "betti")


def test_single_ball_game(s4_board):
    config = GameConfig(s4_board, ("e",), "basic")
    outcome = play(config)
    assert outcome.rolldown == {"e": "e"}
    assert outcome.success is None


def test_moves_and_walls(a3, s4_board):
    config = fig2_config(a3, s4_board)
    state = new_game(config)
    assert legal_moves(state) == []  # ball at the minimum
    finalize_current(state)
    # ball 2 at s3: its only slide leads to the occupied slot e
    assert state.ball == "s3"
    assert legal_moves(state) == []
    assert state.walls[("s3", "e")] == "occupied"
    with pytest.raises(MovesRemain):
        # ball 3 can still roll, finalizing early must fail
        finalize_current(state)
        finalize_current(state)
    with pytest.raises(IllegalMove):
        apply_move(state, ("s3.s2", "s3"))


def test_fig2_outcomes_per_variant(a3, s4_board):
    expected = {"e": "e", "s3": "s3", "s3.s2": "s2", "s3.s2.s1": "s1"}
    stuck = {"e": "e", "s3": "s3", "s3.s2": "s2", "s3.s2.s1": "s3.s2"}
    # basic play: the last ball may also wedge at s3.s2 (both covers occupied)
    config = fig2_config(a3, s4_board)
    result = enumerate_outcomes(config)
    assert result.complete
    assert result.outcomes == {
        tuple(sorted(expected.items())),
        tuple(sorted(stuck.items())),
    }
    # the upper-triangular wall into the ideal of s3.s2 forces uniqueness
    ut = fig2_config(a3, s4_board, variant="upper_triangular")
    result = enumerate_outcomes(ut)
    assert result.outcomes == {tuple(sorted(expected.items()))}
    # Betti targets (1,3): both plays exist, only the table one is successful
    betti = fig2_config(a3, s4_board, variant="betti", targets=(1, 3))
    result = enumerate_outcomes(betti)
    assert result.contains(expected) and result.contains(stuck)
    assert result.successful(betti) == {tuple(sorted(expected.items()))}
    outcome = play(betti, [("s3.s2", "s2"), ("s3.s2.s1", "s2.s1"), ("s2.s1", "s1")])
    assert outcome.success is True


def test_roll_only_downward_and_rolldown_below(a3, s4_board):
    fps = springer_fixed_points(4, (2, 2), a3)
    order = [a3.element_id(w) for w in sorted(fps, key=lambda w: (a3.length(w), a3.element_id(w)))]
    for variant, targets in (
        ("basic", None),
        ("upper_triangular", None),
        ("betti", (1, 3, 2)),
        ("upper_triangular_betti", (1, 3, 2)),
    ):
        config = GameConfig(s4_board, order, variant, targets)
        result = enumerate_outcomes(config)
        assert result.complete
        for key in result.outcomes:
            for origin, rest in key:
                assert s4_board.leq(rest, origin)


def test_basic_outcomes_are_unions_of_ideals(a3, s4_board):
    # enumerate every basic game on two boards and check the ideal property
    for lam in ((3, 1), (2, 2)):
        fps = springer_fixed_points(4, lam, a3)
        order = [
            a3.element_id(w)
            for w in sorted(fps, key=lambda w: (a3.length(w), a3.element_id(w)))
        ]
        config = GameConfig(s4_board, order, "basic")
        result = enumerate_outcomes(config)
        assert result.complete
        for key in result.outcomes:
            rolldown_set = {rest for _, rest in key}
            assert s4_board.is_union_of_principal_ideals(rolldown_set)


def test_upper_triangular_unique_maximal_rolldown(a3, s4_board):
    fps = springer_fixed_points(4, (2, 2), a3)
    order = [
        a3.element_id(w)
        for w in sorted(fps, key=lambda w: (a3.length(w), a3.element_id(w)))
    ]
    config = GameConfig(s4_board, order, "upper_triangular")
    result = enumerate_outcomes(config)
    assert result.complete
    for key in result.outcomes:
        rolls = dict(key)
        for idx, origin in enumerate(order):
            ideal = s4_board.principal_ideal(origin).members
            inside = [rolls[o] for o in order[: idx + 1] if rolls[o] in ideal]
            # roll(j_k) is the unique maximal element of the rolldowns so far
            # inside the ideal of j_k
            top = rolls[origin]
            assert top in inside
            for other in inside:
                if other != top:
                    assert not s4_board.leq(top, other)


def test_betti_walls_and_success(a3, s4_board):
    fps = springer_fixed_points(4, (2, 2), a3)
    order = ["e", "s2", "s2.s3", "s2.s1", "s2.s1.s3", "s2.s1.s3.s2"]
    assert sorted(order) == sorted(a3.element_id(w) for w in fps)
    config = GameConfig(s4_board, order, "betti", targets=(1, 3, 2))
    state = new_game(config)
    finalize_current(state)  # e rests
    finalize_current(state)  # s2 is stuck on the walled slide into e
    apply_move(state, ("s2.s3", "s3"))
    finalize_current(state)
    apply_move(state, ("s2.s1", "s1"))
    finalize_current(state)
    # ranks 0 and 1 are saturated after four rests: e, s2, s3, s1
    assert state.tally == {0: 1, 1: 3}
    assert ("s1.s3", "s1") in state.walls
    # ball 5 sits at s2.s1.s3 and may slide to any of its three covers
    assert state.ball == "s2.s1.s3"
    assert len(legal_moves(state)) == 3
    apply_move(state, ("s2.s1.s3", "s1.s3"))
    assert legal_moves(state) == []
    finalize_current(state)
    mid = a3.element_id(a3.parse_word("s2.s1.s2"))  # canonical id s1.s2.s1
    apply_move(state, ("s2.s1.s3.s2", mid))
    apply_move(state, (mid, "s1.s2"))
    finalize_current(state)
    assert state.finished
    assert is_successful(state) is True
    assert state.rolldown == {
        "e": "e", "s2": "s2", "s2.s3": "s3", "s2.s1": "s1",
        "s2.s1.s3": "s1.s3", "s2.s1.s3.s2": "s1.s2",
    }
    # rank 2 saturated at the end: an edge into the free slot s2.s1 carries
    # the Betti reason
    assert state.walls[(mid, "s2.s1")] == "betti-rank-full"


def test_subregular_staircase_is_a_successful_ut_betti_outcome():
    # the staircase rolldown w_i = s_{n-1}..s_i  ->  v_i = s_i (e for i = n)
    # arises from upper-triangular Betti play with targets (1, n-1)
    from posetpinball.hessenberg import (
        subregular_fixed_point,
        subregular_rolldown,
        subregular_targets,
    )

    for n in (3, 4, 5):
        grp = make_weyl("A", n - 1)
        board = grp.to_poset()
        fps = [subregular_fixed_point(grp, i) for i in range(n, 0, -1)]
        order = [grp.element_id(w) for w in fps]  # the forced chain, bottom up
        expected = {
            grp.element_id(subregular_fixed_point(grp, i)):
                grp.element_id(subregular_rolldown(grp, i))
            for i in range(1, n + 1)
        }
        config = GameConfig(board, order, "upper_triangular_betti",
                            subregular_targets(n))
        result = enumerate_outcomes(config)
        assert result.complete
        assert result.contains(expected)
        assert tuple(sorted(expected.items())) in result.successful(config)


def test_script_errors(a3, s4_board):
    config = fig2_config(a3, s4_board)
    with pytest.raises(ScriptIllegalMove):
        play(config, [("s3", "e")])
    with pytest.raises(ScriptExhausted):
        play(config, [])


def test_walls_monotone_and_replay_identical(a3, s4_board):
    config = fig2_config(a3, s4_board, variant="upper_triangular")
    outcome = play(config)
    doc = outcome_to_transcript(config, outcome)
    again = replay_transcript(doc)
    assert again.rolldown == outcome.rolldown
    assert again.state.walls == outcome.state.walls
    assert again.state.occupied == outcome.state.occupied
    assert again.moves == outcome.moves


def test_enumeration_budget(monkeypatch):
    board = build_poset(
        [("top", 1), ("l", 0), ("r", 0)], [("top", "l"), ("top", "r")]
    )
    config = GameConfig(board, ("top",), "basic")
    full = enumerate_outcomes(config)
    assert full.complete and len(full.outcomes) == 2
    partial = enumerate_outcomes(config, node_budget=1)
    assert not partial.complete
    # the environment variable sets the default budget
    monkeypatch.setenv("PINBALL_NODE_BUDGET", "1")
    assert not enumerate_outcomes(config).complete
    monkeypatch.delenv("PINBALL_NODE_BUDGET")
    assert enumerate_outcomes(config).complete
