import itertools

import pytest

from posetpinball.coxeter import GroupElement, NotARoot, UnsupportedType, make_weyl


def subword_below_set(group, w):
    """Oracle: all u <= w via subwords of one fixed reduced word of w."""
    word = group.reduced_word(w)
    below = set()
    for mask in range(1 << len(word)):
        picked = [word[i] for i in range(len(word)) if mask >> i & 1]
        u = group.word_to_element(picked)
        if group.length(u) == len(picked):
            below.add(u)
    return below


def test_orders():
    assert len(make_weyl("A", 3)) == 24
    assert len(make_weyl("B", 2)) == 8
    assert len(make_weyl("B", 3)) == 48
    assert len(make_weyl("C", 3)) == 48
    assert len(make_weyl("D", 4)) == 192


def test_unsupported_type():
    with pytest.raises(UnsupportedType):
        make_weyl("G", 2)


def test_order_cap():
    from posetpinball.coxeter import RankTooLarge

    with pytest.raises(RankTooLarge):
        make_weyl("A", 10)  # 11! exceeds the element cap
    with pytest.raises(RankTooLarge):
        make_weyl("B", 9)


def test_board_length_restriction():
    a3 = make_weyl("A", 3)
    layer = a3.to_poset(restrict_to_lengths=[1, 2])
    assert sorted(layer.rank.values()) == [1, 1, 1, 2, 2, 2, 2, 2]
    for u, l in layer.covers:
        assert layer.rank[u] == 2 and layer.rank[l] == 1


def test_b2_positive_roots():
    b2 = make_weyl("B", 2)
    assert set(b2.roots.positive_roots) == {(1, -1), (0, 1), (1, 0), (1, 1)}
    c2 = make_weyl("C", 2)
    assert set(c2.roots.positive_roots) == {(1, -1), (0, 2), (2, 0), (1, 1)}


def test_act_on_root():
    a3 = make_weyl("A", 3)
    a1 = a3.roots.simple_roots[0]
    assert a3.act_on_root(a3.identity, a1) == a1
    s1 = a3.simple_reflection(1)
    assert a3.act_on_root(s1, a1) == tuple(-c for c in a1)
    s2 = a3.simple_reflection(2)
    assert a3.act_on_root(s2, a1) == (1, 0, -1, 0)  # a1 + a2
    with pytest.raises(NotARoot):
        a3.act_on_root(s1, (1, 1, 1, 1))


def test_group_action_on_roots_is_compatible():
    b2 = make_weyl("B", 2)
    for u, v in itertools.product(b2.elements, repeat=2):
        for alpha in b2.roots.positive_roots:
            assert (u * v).act_vector(alpha) == u.act_vector(v.act_vector(alpha))


def test_lengths_and_reduced_words():
    a3 = make_weyl("A", 3)
    assert a3.length(a3.identity) == 0
    assert a3.reduced_word(a3.identity) == ()
    w0 = a3.max_parabolic([1, 2, 3])
    assert a3.length(w0) == 6
    for w in a3.elements:
        word = a3.reduced_word(w)
        assert len(word) == a3.length(w)
        assert a3.word_to_element(word) == w
    # l(w s_i) = l(w) +- 1
    for grp in (a3, make_weyl("B", 2)):
        for w in grp.elements:
            for i in range(1, grp.rank + 1):
                diff = grp.length(w * grp.simple_reflection(i)) - grp.length(w)
                assert diff in (1, -1)


def test_subregular_reduced_words():
    a3 = make_weyl("A", 3)
    # the fixed points s_{n-1} s_{n-2} ... s_i, lengths n - i
    for i, expected in ((1, (3, 2, 1)), (2, (3, 2)), (3, (3,))):
        w = a3.word_to_element(expected)
        assert a3.reduced_word(w) == expected
        assert a3.length(w) == 4 - i


def test_one_line_parsing():
    a3 = make_weyl("A", 3)
    w = a3.parse_one_line("[2,1,4,3]")
    assert w == a3.parse_word("s1.s3")
    assert w.one_line() == "[2,1,4,3]"
    b2 = make_weyl("B", 2)
    flip = b2.parse_one_line("[1,-2]")
    assert flip == b2.simple_reflection(2)
    d2 = make_weyl("D", 2)
    with pytest.raises(Exception):
        d2.parse_one_line("[-1,2]")  # odd sign count is not in type D


def test_bruhat_against_subword_oracle():
    for lie_type, rank in (("A", 3), ("B", 3)):
        grp = make_weyl(lie_type, rank)
        for w in grp.elements:
            below = subword_below_set(grp, w)
            for u in grp.elements:
                assert grp.bruhat_leq(u, w) == (u in below)


def test_bruhat_examples():
    a3 = make_weyl("A", 3)
    for w in a3.elements:
        assert a3.bruhat_leq(a3.identity, w)
    assert a3.bruhat_leq(a3.parse_word("s1.s2"), a3.parse_word("s2.s1.s3.s2"))
    assert not a3.bruhat_leq(a3.parse_word("s1"), a3.parse_word("s2"))


def test_max_parabolic():
    a3 = make_weyl("A", 3)
    assert a3.max_parabolic([]) == a3.identity
    w0 = a3.max_parabolic([1, 2, 3])
    assert w0.one_line() == "[4,3,2,1]"
    w13 = a3.max_parabolic([1, 3])
    assert w13 == a3.parse_word("s1.s3")
    assert a3.length(w13) == 2
    for grp in (a3, make_weyl("B", 3), make_weyl("D", 4)):
        n = grp.rank
        for size in range(n + 1):
            for J in itertools.combinations(range(1, n + 1), size):
                wj = grp.max_parabolic(J)
                assert wj == wj.inverse()
                # w_J^{-1} sends the J-simples to negative simples and the
                # rest of Phi+ into Phi+
                simples = set(grp.roots.simple_roots)
                j_simples = {grp.roots.simple_roots[j - 1] for j in J}
                for alpha in j_simples:
                    image = wj.act_vector(alpha)
                    assert tuple(-c for c in image) in simples
                lengths = sum(
                    1
                    for alpha in grp.roots.positive_roots
                    if grp.roots.is_negative(wj.act_vector(alpha))
                )
                assert lengths == grp.length(wj)


def test_weyl_to_poset():
    a3 = make_weyl("A", 3)
    board = a3.to_poset()
    assert len(board) == 24
    rank1 = sorted(e for e in board.elements if board.rank[e] == 1)
    assert rank1 == ["s1", "s2", "s3"]
    b2 = make_weyl("B", 2).to_poset()
    sizes = [sum(1 for e in b2.elements if b2.rank[e] == r) for r in range(5)]
    assert sizes == [1, 2, 2, 2, 1]
    # covers agree with the subword oracle on S4
    oracle_covers = set()
    for w in a3.elements:
        for u in subword_below_set(a3, w):
            if a3.length(u) == a3.length(w) - 1:
                oracle_covers.add((a3.element_id(w), a3.element_id(u)))
    assert set(board.covers) == oracle_covers


def test_inverse_and_mul():
    d4 = make_weyl("D", 4)
    sample = d4.elements[::17]
    for w in sample:
        assert w * w.inverse() == d4.identity
        assert GroupElement(w.signed) == w
