"""Quantum Bruhat graph: edges, weights, fast recursions, identities."""

import itertools

import pytest

from affweyl.errors import VertexNotInQuotient
from affweyl.qbg import (
    build_qbg,
    inversions,
    is_quantum_root,
    max_inversions,
    path_achieving_weight,
    path_of_weight_exists,
    quantum_roots,
    to_dot,
    wt_general_via_diamond,
    wt_to_identity_fast,
)
from affweyl.rootsys import (
    apply_weyl_to_coroot_coords,
    build_root_system,
    coset_decompose,
)


def _all_subsets(rs):
    idx = range(rs.rank)
    return [frozenset(c) for k in range(rs.rank + 1) for c in itertools.combinations(idx, k)]


def _pair_coroot_with_vec(rs, coords, vec):
    return sum(c * sum(p * t for p, t in zip(rs.croot_pairings(i), vec)) for i, c in enumerate(coords) if c)


def _cls(subset, coords):
    return tuple(0 if j in subset else v for j, v in enumerate(coords))


def _cls_leq(subset, a, b):
    return all(j in subset or y - x >= 0 for j, (x, y) in enumerate(zip(a, b)))


def test_quantum_roots_frozen():
    a2 = build_root_system("A2")
    assert quantum_roots(a2) == frozenset(range(3))
    b2 = build_root_system("B2")
    short_sum = b2.root_index[(1, 1)]
    assert not is_quantum_root(b2, short_sum)
    for label in ("A2", "B2", "B3", "C3", "G2", "A3"):
        rs = build_root_system(label)
        short_simples = frozenset(i for i in range(rs.rank) if not rs.is_long(i))
        for r in range(rs.num_positive):
            q = is_quantum_root(rs, r)
            if r < rs.rank or rs.is_long(r):
                assert q
            if not rs.is_long(r):
                assert q == (rs.root_support[r] <= short_simples)


def test_a1_graph_frozen():
    rs = build_root_system("A1")
    o = build_qbg(rs)
    assert [w.word for w in o.vertices] == [(), (0,)]
    kinds = [(e.src.word, e.dst.word, e.kind, e.weight) for e in o.all_edges()]
    assert kinds == [((), (0,), "B", (0,)), ((0,), (), "Q", (1,))]


def test_simple_edge_always_exists():
    for label in ("A2", "B2", "G2"):
        rs = build_root_system(label)
        o = build_qbg(rs)
        npos = rs.num_positive
        for w in o.vertices:
            for i in range(rs.rank):
                matches = [e for e in o.edges_from(w) if e.via_root == i]
                assert len(matches) == 1
                e = matches[0]
                expect = tuple(v if w.perm[i] >= npos else 0 for v in rs.coroots[i])
                assert e.weight == expect
                assert e.dst == w * rs.simple_reflection(i)


def test_full_parabolic_graph():
    rs = build_root_system("B2")
    o = build_qbg(rs, range(rs.rank))
    assert len(o.vertices) == 1
    assert list(o.all_edges()) == []
    assert o.distance(rs.identity, rs.identity) == 0


def test_weight_frozen_examples():
    rs = build_root_system("A2")
    o = build_qbg(rs)
    w0 = rs.longest_element()
    one = rs.identity
    theta_v = rs.coroots[rs.highest_root[0]]
    assert o.weight(w0, one) == theta_v == (1, 1)
    assert o.distance(w0, one) == 1
    assert o.weight(one, w0) == (0, 0)
    assert o.distance(one, w0) == 3
    for w in o.vertices:
        assert o.weight(w, w) == (0, 0)
        assert o.distance(w, w) == 0


def test_vertex_not_in_quotient():
    rs = build_root_system("A2")
    o = build_qbg(rs, [0])
    with pytest.raises(VertexNotInQuotient):
        o.distance(rs.simple_reflection(0), rs.identity)


@pytest.mark.parametrize("label", ["A2", "B2", "A3", "B3", "C3", "G2"])
def test_weight2rho_all_pairs_all_j(label):
    rs = build_root_system(label)
    for subset in _all_subsets(rs):
        o = build_qbg(rs, subset)
        for w1 in o.vertices:
            for w2 in o.vertices:
                lhs = _pair_coroot_with_vec(rs, o.weight(w1, w2), o.two_rho_diff)
                assert lhs == o.distance(w1, w2) + w1.length - w2.length


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_fast_weights_match_bfs(label):
    rs = build_root_system(label)
    o = build_qbg(rs)
    one = rs.identity
    for w in o.vertices:
        assert wt_to_identity_fast(w) == o.weight(w, one)
    for w1 in o.vertices:
        for w2 in o.vertices:
            assert wt_general_via_diamond(w1, w2) == o.weight(w1, w2)


def test_max_inversions_properties():
    for label in ("A2", "B2", "G2", "B3"):
        rs = build_root_system(label)
        theta = set(rs.highest_root)
        for w in rs.weyl_elements():
            inv = set(inversions(w))
            mx = max_inversions(w)
            assert mx <= inv
            if w.length == 0:
                assert not mx
            for t in theta & inv:
                assert t in mx
            for g in inv:
                assert any(
                    all(b - a >= 0 for a, b in zip(rs.roots[g], rs.roots[m])) for m in mx
                )


def test_wt_recursion_choice_free():
    # every maximal inversion choice must give the same weight
    for label in ("A2", "B2", "G2"):
        rs = build_root_system(label)
        o = build_qbg(rs)
        one = rs.identity
        for w in rs.weyl_elements():
            for g in max_inversions(w):
                sub = rs.reflection(g) * w
                assert sub.length < w.length
                winv_g = rs.coroots[w.inv_perm[g]]
                got = tuple(a - b for a, b in zip(o.weight(sub, one), winv_g))
                assert got == o.weight(w, one)


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3"])
def test_diamond_transport(label):
    # distance transport breaks when the pivot lands inside the parabolic
    # subsystem, so those pairs are excluded; weight transport needs no
    # exclusion for w1
    rs = build_root_system(label)
    npos = rs.num_positive
    affine_simples = [(i, 0) for i in range(rs.rank)] + [
        (rs.neg(t), 1) for t in rs.highest_root
    ]
    for subset in _all_subsets(rs):
        o = build_qbg(rs, subset)
        sub_roots = {
            r for r in range(2 * npos) if rs.root_support[r % npos] <= subset
        }
        for alpha, k in affine_simples:
            salpha = rs.reflection(alpha)
            for w2 in o.vertices:
                g2 = w2.inv_perm[alpha]
                if rs.is_positive(g2) or g2 in sub_roots:
                    continue
                up, _ = coset_decompose(rs, salpha * w2, subset, "right")
                wt_e = _cls(subset, tuple(-k * v for v in rs.coroots[g2]))
                edges = [e for e in o.edges_from(up) if e.dst == w2]
                assert any(e.weight == wt_e for e in edges)
                for w1 in o.vertices:
                    g1 = w1.inv_perm[alpha]
                    if rs.is_positive(g1):
                        assert o.distance(w1, w2) == o.distance(w1, up) + 1
                        continue
                    lo, _ = coset_decompose(rs, salpha * w1, subset, "right")
                    shift = tuple(
                        k * (a - b) for a, b in zip(rs.coroots[g1], rs.coroots[g2])
                    )
                    expect = _cls(
                        subset,
                        tuple(a + b for a, b in zip(o.weight(lo, up), shift)),
                    )
                    assert o.weight(w1, w2) == expect
                    if g1 not in sub_roots:
                        assert o.distance(w1, w2) == o.distance(lo, up)


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_weight_identities(label):
    rs = build_root_system(label)
    o = build_qbg(rs)
    w0 = rs.longest_element()
    elts = rs.weyl_elements()
    for w1 in elts:
        assert o.weight(w1, rs.identity) == o.weight(w1.inverse, rs.identity)
        for w2 in elts:
            assert o.weight(w0 * w1, w0 * w2) == o.weight(w2, w1)
            lhs = o.weight(w0 * w1 * w0, w0 * w2 * w0)
            rhs = tuple(-v for v in apply_weyl_to_coroot_coords(w0, o.weight(w1, w2)))
            assert lhs == rhs


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_quantum_edges_suffice(label):
    rs = build_root_system(label)
    o = build_qbg(rs)
    one = rs.identity
    # reverse BFS from identity over quantum edges only
    dist = {one: 0}
    frontier = [one]
    while frontier:
        new = []
        for v in frontier:
            for e in o.all_edges():
                if e.kind == "Q" and e.dst == v and e.src not in dist:
                    dist[e.src] = dist[v] + 1
                    new.append(e.src)
        frontier = new
    for w in o.vertices:
        assert dist.get(w) == o.distance(w, one)


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_weight_estimate_and_triangle(label):
    rs = build_root_system(label)
    o = build_qbg(rs)
    npos = rs.num_positive
    none = frozenset()
    for w in o.vertices:
        for r in range(npos):
            bound = tuple(
                (1 if rs.is_positive(w.perm[r]) else 0) * v for v in rs.coroots[r]
            )
            assert _cls_leq(none, o.weight(w * rs.reflection(r), w), bound)
    verts = o.vertices
    for u in verts:
        for v in verts:
            wuv = o.weight(u, v)
            for w in verts:
                total = tuple(a + b for a, b in zip(wuv, o.weight(v, w)))
                assert _cls_leq(none, o.weight(u, w), total)


def test_path_of_weight():
    rs = build_root_system("A2")
    o = build_qbg(rs)
    one = rs.identity
    w0 = rs.longest_element()
    wt = o.weight(w0, one)
    assert path_of_weight_exists(o, w0, one, wt)
    bumped = tuple(a + b for a, b in zip(wt, rs.coroots[0]))
    assert path_of_weight_exists(o, w0, one, bumped)
    assert not path_of_weight_exists(o, w0, one, (0, 0))
    for target in (wt, bumped, tuple(a + 2 * b for a, b in zip(wt, rs.coroots[1]))):
        path = path_achieving_weight(o, w0, one, target)
        assert path is not None
        pos = w0
        total = (0,) * rs.rank
        for e in path:
            assert e.src == pos
            pos = e.dst
            total = tuple(a + b for a, b in zip(total, e.weight))
        assert pos == one and total == target
    assert path_achieving_weight(o, w0, one, (0, 0)) is None


def test_dot_export_stable():
    rs = build_root_system("A2")
    o = build_qbg(rs, [0])
    dot1 = to_dot(o)
    dot2 = to_dot(build_qbg(rs, [0]))
    assert dot1 == dot2
    assert dot1.startswith("digraph qbg {")
    assert "->" in dot1
