import random
from fractions import Fraction

import pytest

from posetpinball.billey import TPolynomial, schubert_class
from posetpinball.coxeter import make_weyl
from posetpinball.flowup import (
    CandidateBasis,
    RestrictionVector,
    ZeroVector,
    construct_flowup_basis,
    find_triangular_order,
    flowup_pivot_positions,
    is_flowup,
    is_poset_upper_triangular,
    is_total_order_upper_triangular,
    linearly_independent,
    poset_triangularity_report,
    reduce_against_triangular,
    span_equivalent,
    verify_matching_basis,
    verify_pinball_basis,
)
from posetpinball.poset import build_poset


def tp(*coeffs):
    return TPolynomial(coeffs)


@pytest.fixture
def chain3():
    return build_poset([("a", 0), ("b", 1), ("c", 2)], [("b", "a"), ("c", "b")])


@pytest.fixture
def antichain2():
    return build_poset([("x", 0), ("y", 0)], [])


def test_is_flowup(chain3, antichain2):
    v = RestrictionVector(chain3, {"b": tp(0, 1), "c": tp(1)})
    assert is_flowup(v) == "b"
    w = RestrictionVector(chain3, {"a": tp(1)})
    assert is_flowup(w) == "a"
    diag = RestrictionVector(antichain2, {"x": tp(1), "y": tp(1)})
    assert is_flowup(diag) is None
    with pytest.raises(ZeroVector):
        is_flowup(RestrictionVector(chain3, {}))


def test_poset_upper_triangular(chain3):
    family = [
        ("u", RestrictionVector(chain3, {"a": tp(1), "c": tp(2)})),
        ("v", RestrictionVector(chain3, {"b": tp(0, 1)})),
        ("w", RestrictionVector(chain3, {"c": tp(1)})),
    ]
    assert is_poset_upper_triangular(family)
    clash = family + [("z", RestrictionVector(chain3, {"b": tp(3)}))]
    report = poset_triangularity_report(clash)
    assert not report.ok
    assert report.collisions == [("v", "z", "b")]


def test_total_order_triangularity(chain3, antichain2):
    order = ["a", "b", "c"]
    good = [
        RestrictionVector(chain3, {"a": tp(1), "b": tp(1)}),
        RestrictionVector(chain3, {"b": tp(0, 1), "c": tp(1)}),
    ]
    assert is_total_order_upper_triangular(good, order)
    bad = good + [RestrictionVector(chain3, {"b": tp(2)})]
    assert not is_total_order_upper_triangular(bad, order)
    # the diagonal module over an antichain: triangular for any total order
    diag = RestrictionVector(antichain2, {"x": tp(1), "y": tp(1)})
    assert is_total_order_upper_triangular([diag], ["x", "y"])
    witness = find_triangular_order([("d", diag)], antichain2)
    assert witness is not None


def test_find_triangular_order_needs_distinct_minima(antichain2):
    # two vectors supported on the same singleton cannot be separated
    a = RestrictionVector(antichain2, {"x": tp(1)})
    b = RestrictionVector(antichain2, {"x": tp(0, 1)})
    assert find_triangular_order([("a", a), ("b", b)], antichain2) is None


def test_find_triangular_order_reorders_antichain(antichain2):
    # x must come after y: the first vector is supported everywhere but can
    # only take y as its minimum once the second claims x
    a = RestrictionVector(antichain2, {"x": tp(1), "y": tp(1)})
    b = RestrictionVector(antichain2, {"x": tp(0, 1)})
    order = find_triangular_order([("a", a), ("b", b)], antichain2)
    assert order is not None
    assert is_total_order_upper_triangular([a, b], order)


def test_linear_independence(chain3):
    x = RestrictionVector(chain3, {"a": tp(1), "b": tp(0, 1)})
    assert linearly_independent([x, RestrictionVector(chain3, {"b": tp(1)})])
    assert not linearly_independent([x, x.scale(2)])
    # (1, t) and (t, t^2) over two points: the second is t times the first
    p2 = build_poset([("p", 0), ("q", 0)], [])
    u = RestrictionVector(p2, {"p": tp(1), "q": tp(0, 1)})
    v = RestrictionVector(p2, {"p": tp(0, 1), "q": tp(0, 0, 1)})
    assert not linearly_independent([u, v])


def test_poset_ut_implies_total_ut_implies_independent(chain3):
    rng = random.Random(7)
    board = make_weyl("A", 3).to_poset()
    elements = list(board.elements)
    for _ in range(25):
        mins = rng.sample(elements, rng.randint(1, 6))
        family = []
        ok = True
        for m in mins:
            filt = sorted(board.principal_filter(m).members)
            support = [m] + [e for e in filt if e != m and rng.random() < 0.5]
            values = {
                e: tp(*[rng.randint(0, 2) for _ in range(rng.randint(1, 3))])
                for e in support
            }
            values[m] = tp(rng.randint(1, 3))
            family.append(("x" + m, RestrictionVector(board, values)))
        if not ok:
            continue
        assert is_poset_upper_triangular(family)
        order = board.linear_extension()
        vectors = [vec for _, vec in family]
        assert is_total_order_upper_triangular(vectors, order)
        assert linearly_independent(vectors)


def test_construct_diagonal_counterexample(antichain2):
    # no poset-upper-triangular generating set exists, but the scan over a
    # total order returns the single diagonal generator
    diag = RestrictionVector(antichain2, {"x": tp(1), "y": tp(1)})
    assert is_flowup(diag) is None
    basis = construct_flowup_basis([diag], ["x", "y"])
    assert basis == [diag]
    assert flowup_pivot_positions([diag], ["x", "y"]) == ["x"]


def test_construct_standard_basis(chain3):
    order = ["a", "b", "c"]
    gens = [
        RestrictionVector(chain3, {"a": tp(2)}),
        RestrictionVector(chain3, {"b": tp(0, 3)}),
        RestrictionVector(chain3, {"c": tp(1, 1)}),
    ]
    basis = construct_flowup_basis(gens, order)
    assert len(basis) == 3
    # pivots are monic and the span is preserved in both directions
    assert basis[0].get("a") == tp(1)
    for g in gens:
        rem = reduce_against_triangular(g, list(zip(order, basis)), order)
        # pivot positions here are exactly a, b, c
        assert rem.is_zero()
    assert span_equivalent(gens, basis)


def random_graded_poset(rng):
    levels = rng.randint(1, 4)
    names = []
    ranks = []
    for lvl in range(levels):
        for k in range(rng.randint(1, 3)):
            names.append(f"n{lvl}_{k}")
            ranks.append(lvl)
    covers = []
    for i, upper in enumerate(names):
        for j, lower in enumerate(names):
            if ranks[i] == ranks[j] + 1 and rng.random() < 0.6:
                covers.append((upper, lower))
    return build_poset(list(zip(names, ranks)), covers)


def random_vector(rng, poset):
    values = {}
    for e in poset.elements:
        if rng.random() < 0.55:
            coeffs = [Fraction(rng.randint(-2, 2)) for _ in range(rng.randint(1, 3))]
            values[e] = TPolynomial(coeffs)
    return RestrictionVector(poset, values)


def test_construct_randomized_round_trip():
    rng = random.Random(20260808)
    done = 0
    while done < 100:
        poset = random_graded_poset(rng)
        if len(poset) > 12:
            continue
        gens = [random_vector(rng, poset) for _ in range(rng.randint(1, len(poset) + 2))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        order = poset.linear_extension()
        basis = construct_flowup_basis(gens, order)
        # (a) triangular with respect to the chosen order
        assert is_total_order_upper_triangular(basis, order)
        # (b) span-preserving: generators reduce to zero, ranks agree
        position = {eid: k for k, eid in enumerate(order)}
        pivots = [(min(vec.support(), key=lambda e: position[e]), vec) for vec in basis]
        for g in gens:
            assert reduce_against_triangular(g, pivots, order).is_zero()
        assert span_equivalent(gens, basis)
        # (c) round-trip stability: feeding the output back reproduces the
        # same pivot positions with the same monic leading values
        again = construct_flowup_basis(basis, order)
        assert [min(v.support(), key=lambda e: position[e]) for v in again] == [
            p for p, _ in pivots
        ]
        for (pos, vec), new in zip(pivots, again):
            assert new.get(pos) == vec.get(pos)
        done += 1


def test_verify_pinball_basis_peterson():
    grp = make_weyl("A", 3)
    subsets = [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]
    fps = [grp.max_parabolic(J) for J in subsets]
    ids = [grp.element_id(w) for w in fps]
    board = build_poset([(i, grp.length(w)) for i, w in zip(ids, fps)], [])
    entries = []
    for J in subsets:
        v = grp.word_to_element(sorted(J))
        rc = schubert_class(grp, v, fps)
        label = grp.element_id(v)
        entries.append((label, rc))
    cands = CandidateBasis.from_classes(board, entries)
    assert verify_pinball_basis(cands, (1, 3, 3, 1))
    # dropping one class breaks the degree histogram
    fewer = CandidateBasis(cands.index, cands.entries[:-1])
    assert not verify_pinball_basis(fewer, (1, 3, 3, 1))
    # scaling a candidate does not change the verdict
    label, vec, deg = cands.entries[3]
    scaled = CandidateBasis(
        cands.index,
        cands.entries[:3] + [(label, vec.scale(Fraction(7, 2)), deg)] + cands.entries[4:],
    )
    assert verify_pinball_basis(scaled, (1, 3, 3, 1))


def test_poset_ut_generators_round_trip_to_singletons():
    # feeding a poset-upper-triangular spanning family back into the scan
    # reproduces one pivot per support minimum, with the monic leading value
    grp = make_weyl("A", 3)
    subsets = [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]
    fps = [grp.max_parabolic(J) for J in subsets]
    sub = grp.induced_subposet(fps)
    entries = []
    for J in subsets:
        v = grp.word_to_element(sorted(J))
        entries.append((grp.element_id(v), schubert_class(grp, v, fps)))
    cands = CandidateBasis.from_classes(sub, entries)
    report = poset_triangularity_report(cands.labeled_vectors())
    assert report.ok
    order = sub.linear_extension()
    assert flowup_pivot_positions(cands.vectors(), order) == order
    basis = construct_flowup_basis(cands.vectors(), order)
    sizes = {grp.element_id(w): len(J) for J, w in zip(subsets, fps)}
    position = {eid: k for k, eid in enumerate(order)}
    for vec in basis:
        pivot = min(vec.support(), key=lambda e: position[e])
        # the leading value generates the vanishing ideal: monic t^{|J|}
        assert vec.get(pivot) == TPolynomial([0] * sizes[pivot] + [1])


def test_verify_matching_basis(chain3):
    entries = [
        ("p0", RestrictionVector(chain3, {"a": tp(1), "b": tp(1), "c": tp(1)}), 0),
        ("p1", RestrictionVector(chain3, {"b": tp(0, 1), "c": tp(0, 2)}), 2),
        ("p2", RestrictionVector(chain3, {"c": tp(0, 0, 1)}), 4),
    ]
    cands = CandidateBasis(["a", "b", "c"], entries)
    f = {"a": "p0", "b": "p1", "c": "p2"}
    deg_y = {"a": 0, "b": 1, "c": 2}
    assert verify_matching_basis(cands, f, deg_y, (1, 1, 1), chain3)
    assert not verify_matching_basis(cands, f, {"a": 0, "b": 2, "c": 2}, (1, 1, 1), chain3)
