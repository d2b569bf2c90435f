"""Extended affine Weyl group: action, lengths, LP sets, oracles, balls."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affweyl.affine import (
    AffineRoot,
    ExtAffElt,
    act_affine,
    adjust_to_length_positive,
    bruhat_downset_masks,
    bruhat_leq_oracle,
    demazure_oracle,
    enumerate_ball,
    ext_elt,
    from_weyl,
    is_length_positive,
    is_positive_affine,
    is_shrunken,
    left_descent,
    length_affine_count,
    length_functional,
    length_functional_sum,
    length_positive_set,
    lp_ordered,
    omega_class,
    raff,
    reduced_word_aff,
    same_omega_class,
    semi_infinite_length,
    simple_affine_roots,
    translation,
)
from affweyl.errors import BudgetExceeded
from affweyl.rootsys import Coweight, build_root_system, coweight_of_coroot


def _x(rs, word, mu):
    return ext_elt(rs.weyl_from_word(word), mu)


def test_act_affine_frozen():
    rs = build_root_system("A2")
    one = translation(rs, (0, 0))
    assert act_affine(one, AffineRoot(0, 3)) == AffineRoot(0, 3)
    t = translation(rs, coweight_of_coroot(rs, 0).pairings)
    assert act_affine(t, AffineRoot(0, 0)) == AffineRoot(0, -2)
    s1 = _x(rs, [0], (0, 0))
    assert act_affine(s1, AffineRoot(0, 1)) == AffineRoot(rs.neg(0), 1)


def test_group_law_frozen():
    rs = build_root_system("A2")
    x = _x(rs, [0], (1, -1))
    y = _x(rs, [1], (2, 0))
    xy = x * y
    # w2^{-1}(mu1) + mu2 with w2 = s2
    assert xy.w == rs.weyl_from_word([0, 1])
    assert x * x.inverse == translation(rs, (0, 0))
    assert (x * y).inverse == y.inverse * x.inverse


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from(["A2", "B2"]),
    st.data(),
)
def test_group_law_via_action(label, data):
    rs = build_root_system(label)
    elts = rs.weyl_elements()
    w1 = data.draw(st.sampled_from(elts))
    w2 = data.draw(st.sampled_from(elts))
    mu1 = data.draw(st.tuples(*[st.integers(-3, 3)] * rs.rank))
    mu2 = data.draw(st.tuples(*[st.integers(-3, 3)] * rs.rank))
    r = data.draw(st.integers(0, len(rs.roots) - 1))
    k = data.draw(st.integers(-3, 3))
    x, y = ext_elt(w1, mu1), ext_elt(w2, mu2)
    a = AffineRoot(r, k)
    assert act_affine(x * y, a) == act_affine(x, act_affine(y, a))


def test_length_frozen():
    rs = build_root_system("A2")
    assert translation(rs, (0, 0)).length == 0
    x = _x(rs, [0], coweight_of_coroot(rs, 0).pairings)
    assert x.length == 5
    mu = (2, 1)
    t = translation(rs, mu)
    assert t.length == Coweight(mu).pair_root_coords(rs.two_rho)


def test_length_functional_frozen():
    rs = build_root_system("A2")
    one = translation(rs, (0, 0))
    for r in range(len(rs.roots)):
        assert length_functional(one, r) == 0
    x = _x(rs, [0], coweight_of_coroot(rs, 0).pairings)
    theta = rs.highest_root[0]
    assert length_functional(x, 0) == 3
    assert length_functional(x, 1) == -1
    assert length_functional(x, theta) == 1
    t = translation(rs, (1, -2))
    for r in range(len(rs.roots)):
        assert length_functional(t, r) == Coweight((1, -2)).pair_root_coords(rs.roots[r])


@pytest.mark.parametrize("label,bound", [("A1", 4), ("A2", 3), ("B2", 3), ("G2", 2)])
def test_three_length_formulas_agree(label, bound):
    rs = build_root_system(label)
    for x in enumerate_ball(rs, bound):
        assert x.length == length_affine_count(x) == length_functional_sum(x)


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_length_functional_is_root_functional(label):
    rs = build_root_system(label)
    pairs = [
        (r1, r2, rs.root_index[tuple(a + b for a, b in zip(rs.roots[r1], rs.roots[r2]))])
        for r1 in range(len(rs.roots))
        for r2 in range(len(rs.roots))
        if tuple(a + b for a, b in zip(rs.roots[r1], rs.roots[r2])) in rs.root_index
    ]
    for x in enumerate_ball(rs, 3):
        vals = [length_functional(x, r) for r in range(len(rs.roots))]
        for r in range(rs.num_positive):
            assert vals[r] + vals[rs.neg(r)] == 0
        for r1, r2, r3 in pairs:
            assert vals[r1] + vals[r2] - vals[r3] in (-1, 0, 1)


def test_lp_frozen():
    rs = build_root_system("A2")
    one = translation(rs, (0, 0))
    assert length_positive_set(one) == frozenset(rs.weyl_elements())
    t = translation(rs, (2, 1))
    assert length_positive_set(t) == frozenset([rs.identity])
    a1 = build_root_system("A1")
    s = from_weyl(a1.simple_reflection(0))
    assert length_positive_set(s) == frozenset([a1.identity])


@pytest.mark.parametrize("label,bound", [("A1", 5), ("A2", 4), ("B2", 4)])
def test_lp_formula_and_shrunken(label, bound):
    rs = build_root_system(label)
    two_rho = rs.two_rho
    for x in enumerate_ball(rs, bound):
        lp = length_positive_set(x)
        for v in rs.weyl_elements():
            vinvmu = v.inverse.apply_pairings(x.mu.pairings)
            rhs = sum(a * b for a, b in zip(vinvmu, two_rho)) - v.length + (x.w * v).length
            assert x.length >= rhs
            assert (v in lp) == (x.length == rhs)
        assert is_shrunken(x) == (len(lp) == 1)


def test_adjust_frozen():
    a1 = build_root_system("A1")
    s = a1.simple_reflection(0)
    x = from_weyl(s)
    assert adjust_to_length_positive(x, a1.identity) == a1.identity
    assert adjust_to_length_positive(x, s) == a1.identity
    rs = build_root_system("A2")
    one = translation(rs, (0, 0))
    for v in rs.weyl_elements():
        assert adjust_to_length_positive(one, v) == v


@pytest.mark.parametrize("label,bound", [("A2", 4), ("B2", 3)])
def test_adjust_lands_in_lp(label, bound):
    rs = build_root_system(label)
    for x in enumerate_ball(rs, bound):
        lp = length_positive_set(x)
        for v in rs.weyl_elements():
            got = adjust_to_length_positive(x, v)
            assert got in lp
            if v in lp:
                assert got == v


def test_bruhat_frozen():
    rs = build_root_system("A2")
    one = translation(rs, (0, 0))
    r = raff(rs, AffineRoot(rs.neg(rs.highest_root[0]), 1))
    assert r.length == 1
    assert bruhat_leq_oracle(one, r)
    assert bruhat_leq_oracle(r, r)
    om = next(x for x in enumerate_ball(rs, 0, 2) if not x.is_identity())
    assert not same_omega_class(om, one)
    assert not bruhat_leq_oracle(one, om) and not bruhat_leq_oracle(om, one)
    assert omega_class(om) != omega_class(one)


@pytest.mark.parametrize("label,bound", [("A1", 5), ("A2", 3)])
def test_bruhat_oracle_is_partial_order(label, bound):
    rs = build_root_system(label)
    ball = enumerate_ball(rs, bound)
    for x in ball:
        assert bruhat_leq_oracle(x, x)
    for x in ball:
        for y in ball:
            if bruhat_leq_oracle(x, y) and bruhat_leq_oracle(y, x):
                assert x == y
    leq = {(x, y) for x in ball for y in ball if bruhat_leq_oracle(x, y)}
    for x, y in leq:
        for z in ball:
            if (y, z) in leq:
                assert (x, z) in leq


@pytest.mark.parametrize("label,bound", [("A1", 6), ("A2", 4), ("B2", 3)])
def test_downset_masks_match_oracle(label, bound):
    rs = build_root_system(label)
    ball = enumerate_ball(rs, bound)
    masks = bruhat_downset_masks(ball)
    for i, y in enumerate(ball):
        for j, x in enumerate(ball):
            assert bool(masks[i] >> j & 1) == bruhat_leq_oracle(x, y)


@pytest.mark.parametrize("label,bound", [("A2", 3), ("B2", 3)])
def test_covers_shape(label, bound):
    rs = build_root_system(label)
    ball = enumerate_ball(rs, bound)
    masks = bruhat_downset_masks(ball)
    index = {x: i for i, x in enumerate(ball)}
    for y in ball:
        for x in ball:
            if x.length + 1 == y.length and masks[index[y]] >> index[x] & 1:
                z = x.inverse * y
                hits = [
                    (r, k)
                    for r in range(rs.num_positive)
                    for k in range(-bound - 1, bound + 2)
                    if z == raff(rs, AffineRoot(r, k))
                ]
                assert hits, "cover quotient must be an affine reflection"


def test_simple_cover_lp_fix():
    for label in ("A2", "B2"):
        rs = build_root_system(label)
        for x in enumerate_ball(rs, 3):
            lp = length_positive_set(x)
            for a in simple_affine_roots(rs):
                alpha = a.root
                if length_functional(x, alpha) != 0:
                    continue
                sa = rs.reflection(alpha)
                for v in lp:
                    if rs.is_positive(v.inv_perm[alpha]):
                        assert sa * v in lp


def test_demazure_frozen():
    a1 = build_root_system("A1")
    s = from_weyl(a1.simple_reflection(0))
    assert demazure_oracle(s, s) == s
    rs = build_root_system("A2")
    x = _x(rs, [0, 1], (1, 0))
    one = translation(rs, (0, 0))
    assert demazure_oracle(x, one) == x
    assert demazure_oracle(one, x) == x
    om = next(z for z in enumerate_ball(rs, 0, 2) if not z.is_identity())
    assert demazure_oracle(x, om) == x * om


@pytest.mark.parametrize("label,bound", [("A1", 4), ("A2", 2)])
def test_demazure_associative_and_max(label, bound):
    rs = build_root_system(label)
    ball = enumerate_ball(rs, bound)
    masks = bruhat_downset_masks(ball)
    index = {x: i for i, x in enumerate(ball)}
    for x in ball:
        for y in ball:
            z = demazure_oracle(x, y)
            below = [j for j in range(len(ball)) if masks[index[y]] >> j & 1]
            cands = [x * ball[j] for j in below]
            assert z in cands
            for c in cands:
                assert bruhat_leq_oracle(c, z)
            assert any(
                x * ball[j] == z and z.length == x.length + ball[j].length for j in below
            )
    for x in ball[: len(ball) // 3]:
        for y in ball[: len(ball) // 3]:
            for z in ball[: len(ball) // 3]:
                assert demazure_oracle(demazure_oracle(x, y), z) == demazure_oracle(x, demazure_oracle(y, z))


def test_reduced_word():
    for label in ("A1", "A2", "B2"):
        rs = build_root_system(label)
        for x in enumerate_ball(rs, 4):
            om, word = reduced_word_aff(x)
            assert om.length == 0
            assert len(word) == x.length
            z = om
            for a in word:
                z = z * raff(rs, a)
            assert z == x


def test_semi_infinite_length():
    rs = build_root_system("A2")
    assert semi_infinite_length(translation(rs, (0, 0))) == 0
    x = _x(rs, [0], coweight_of_coroot(rs, 0).pairings)
    assert semi_infinite_length(x) == 3
    mu = (1, 2)
    assert semi_infinite_length(translation(rs, mu)) == -semi_infinite_length(
        translation(rs, tuple(-m for m in mu))
    )


def test_enumerate_ball():
    a1 = build_root_system("A1")
    ball = enumerate_ball(a1, 1)
    s = a1.simple_reflection(0)
    assert from_weyl(a1.identity) in ball
    assert from_weyl(s) in ball
    assert raff(a1, AffineRoot(a1.neg(0), 1)) in ball
    zero_ball = enumerate_ball(a1, 0)
    assert all(x.length == 0 for x in zero_ball)
    assert len(enumerate_ball(a1, 2)) >= len(ball) >= len(zero_ball)
    with pytest.raises(BudgetExceeded):
        enumerate_ball(build_root_system("B3"), 8, budget=1000)


def test_lp_membership_helper():
    rs = build_root_system("B2")
    for x in enumerate_ball(rs, 3):
        lp = length_positive_set(x)
        for v in rs.weyl_elements():
            assert is_length_positive(x, v) == (v in lp)
        ordered = lp_ordered(x)
        assert list(ordered) == sorted(ordered, key=rs.weyl_index)
