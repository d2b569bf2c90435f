"""Quantum Bruhat graphs on parabolic quotients W^J.

Vertices are minimal coset representatives; edges come in Bruhat and
quantum kinds with coweight-class weights in the coroot lattice modulo the
J-block.  The oracle precomputes all-pairs distances and weights eagerly;
the fast weight routines (maximal inversion recursion and diamond peeling)
are checked against it in the test suite.

Weight classes are passed around as canonical coroot-coordinate tuples with
the J coordinates zeroed.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import VertexNotInQuotient
from .rootsys import RootSystem, WeylElt, coset_decompose

_dot = lambda a, b: sum(x * y for x, y in zip(a, b))


def is_quantum_root(rs: RootSystem, r: int) -> bool:
    """Whether the reflection in this positive root can drop length by the
    full pairing with 2 rho, minus one.

    Two characterizations are evaluated and must agree: the length equality
    and the pairing-one condition on flipped positive roots.

    >>> from .rootsys import build_root_system
    >>> rs = build_root_system("A2")
    >>> [is_quantum_root(rs, r) for r in range(rs.num_positive)]
    [True, True, True]
    """
    npos = rs.num_positive
    assert r < npos
    pair_2rho = _dot(rs.two_rho, rs.croot_pairings(r))
    by_length = rs.reflection(r).length == pair_2rho - 1
    perm = rs.reflection(r).perm
    row = rs.pairing_table[r]
    by_pairing = all(
        row[b] == 1
        for b in range(npos)
        if b != r and perm[b] >= npos
    )
    assert by_length == by_pairing
    return by_length


def quantum_roots(rs: RootSystem) -> frozenset[int]:
    return frozenset(r for r in range(rs.num_positive) if is_quantum_root(rs, r))


@dataclass(frozen=True)
class QbgEdge:
    src: WeylElt
    dst: WeylElt
    kind: str  # "B" or "Q"
    weight: tuple[int, ...]
    via_root: int


class QbgOracle:
    """Eager all-pairs distance and weight tables for one (rs, J)."""

    def __init__(self, rs: RootSystem, subset: frozenset[int]):
        self.rs = rs
        self.subset = subset
        npos = rs.num_positive
        n = rs.rank
        verts = [w for w in rs.weyl_elements() if all(w.perm[j] < npos for j in subset)]
        self.vertices = tuple(verts)
        self.vindex = {w: i for i, w in enumerate(verts)}
        two_rho_j = [0] * n
        for r in range(npos):
            if rs.root_support[r] <= subset:
                for j, v in enumerate(rs.roots[r]):
                    two_rho_j[j] += v
        self.two_rho_diff = tuple(a - b for a, b in zip(rs.two_rho, two_rho_j))
        edges: list[list[QbgEdge]] = [[] for _ in verts]
        pair_weight: dict[tuple[int, int], tuple[str, tuple[int, ...]]] = {}
        for i, w1 in enumerate(verts):
            l1 = w1.length
            for r in range(npos):
                if rs.root_support[r] <= subset:
                    continue
                w2, _ = coset_decompose(rs, w1 * rs.reflection(r), subset, "right")
                l2 = w2.length
                drop = _dot(self.two_rho_diff, rs.croot_pairings(r))
                is_b = l2 == l1 + 1
                is_q = l2 == l1 + 1 - drop
                assert not (is_b and is_q)
                if not (is_b or is_q):
                    continue
                if is_b:
                    kind, wt = "B", (0,) * n
                else:
                    kind, wt = "Q", self._cls(rs.coroots[r])
                j = self.vindex[w2]
                prev = pair_weight.setdefault((i, j), (kind, wt))
                assert prev == (kind, wt), "parallel edge weight mismatch"
                edges[i].append(QbgEdge(w1, w2, kind, wt, r))
        self.edges = tuple(tuple(e) for e in edges)
        self.dist, self.wt = self._all_pairs(edges)

    def _cls(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(0 if j in self.subset else v for j, v in enumerate(coords))

    def _all_pairs(self, edges):
        nv = len(self.vertices)
        zero = (0,) * self.rs.rank
        dist_rows = []
        wt_rows = []
        for src in range(nv):
            dist = [-1] * nv
            wt: list[tuple[int, ...] | None] = [None] * nv
            dist[src] = 0
            wt[src] = zero
            queue = deque([src])
            while queue:
                u = queue.popleft()
                du, wu = dist[u], wt[u]
                for e in edges[u]:
                    v = self.vindex[e.dst]
                    cand = tuple(a + b for a, b in zip(wu, e.weight))
                    if dist[v] < 0:
                        dist[v] = du + 1
                        wt[v] = cand
                        queue.append(v)
                    elif dist[v] == du + 1:
                        assert wt[v] == cand, "shortest path weight mismatch"
            assert all(d >= 0 for d in dist), "graph must be strongly connected"
            dist_rows.append(dist)
            wt_rows.append(wt)
        return dist_rows, wt_rows

    def _idx(self, w: WeylElt) -> int:
        i = self.vindex.get(w)
        if i is None:
            raise VertexNotInQuotient(f"{w!r} is not a minimal representative")
        return i

    def distance(self, w1: WeylElt, w2: WeylElt) -> int:
        return self.dist[self._idx(w1)][self._idx(w2)]

    def weight(self, w1: WeylElt, w2: WeylElt) -> tuple[int, ...]:
        return self.wt[self._idx(w1)][self._idx(w2)]

    def edges_from(self, w: WeylElt) -> tuple[QbgEdge, ...]:
        return self.edges[self._idx(w)]

    def all_edges(self) -> Iterable[QbgEdge]:
        for bunch in self.edges:
            yield from bunch


_QBG_CACHE: dict[tuple[RootSystem, frozenset[int]], QbgOracle] = {}
_QBG_LOCK = threading.Lock()


def build_qbg(rs: RootSystem, subset: Iterable[int] = ()) -> QbgOracle:
    """Build (or fetch) the quantum Bruhat graph oracle for W^J.

    >>> from .rootsys import build_root_system
    >>> rs = build_root_system("A1")
    >>> o = build_qbg(rs)
    >>> [(e.kind, e.weight) for e in o.all_edges()]
    [('B', (0,)), ('Q', (1,))]
    """
    key = (rs, frozenset(subset))
    with _QBG_LOCK:
        o = _QBG_CACHE.get(key)
        if o is None:
            o = _QBG_CACHE[key] = QbgOracle(rs, key[1])
        return o


# ----------------------------------------------------------------------
# fast weights for J = empty


def inversions(w: WeylElt) -> tuple[int, ...]:
    """Positive roots sent negative by w^{-1}."""
    rs = w.rs
    npos = rs.num_positive
    return tuple(r for r in range(npos) if w.inv_perm[r] >= npos)


def max_inversions(w: WeylElt) -> frozenset[int]:
    """Inversions gamma with no other inversion above them in the root order.

    >>> from .rootsys import build_root_system
    >>> rs = build_root_system("A2")
    >>> sorted(rs.roots[r] for r in max_inversions(rs.longest_element()))
    [(1, 1)]
    >>> sorted(rs.roots[r] for r in max_inversions(rs.simple_reflection(0)))
    [(1, 0)]
    """
    rs = w.rs
    inv = inversions(w)
    out = []
    for g in inv:
        gc = rs.roots[g]
        if not any(
            a != g and all(x >= y for x, y in zip(rs.roots[a], gc)) for a in inv
        ):
            out.append(g)
    return frozenset(out)


_WT1_CACHE: dict[WeylElt, tuple[int, ...]] = {}
_WT1_LOCK = threading.Lock()


def wt_to_identity_fast(w: WeylElt) -> tuple[int, ...]:
    """wt(w => 1) in coroot coordinates, by the maximal inversion recursion.

    >>> from .rootsys import build_root_system
    >>> rs = build_root_system("A2")
    >>> wt_to_identity_fast(rs.longest_element())
    (1, 1)
    >>> wt_to_identity_fast(rs.simple_reflection(0))
    (1, 0)
    """
    got = _WT1_CACHE.get(w)
    if got is not None:
        return got
    rs = w.rs
    if w.length == 0:
        result = (0,) * rs.rank
    else:
        g = min(max_inversions(w), key=lambda r: rs.roots[r])
        rest = wt_to_identity_fast(rs.reflection(g) * w)
        winv_g = rs.coroots[w.inv_perm[g]]
        result = tuple(a - b for a, b in zip(rest, winv_g))
    with _WT1_LOCK:
        return _WT1_CACHE.setdefault(w, result)


def wt_general_via_diamond(w1: WeylElt, w2: WeylElt) -> tuple[int, ...]:
    """wt(w1 => w2) for J = empty, peeling simple reflections off w2."""
    rs = w1.rs
    npos = rs.num_positive
    while w2.length:
        i = next(i for i in range(rs.rank) if w2.inv_perm[i] >= npos)
        s = rs.simple_reflection(i)
        if w1.inv_perm[i] >= npos:
            w1 = s * w1
        w2 = s * w2
    res = wt_to_identity_fast(w1)
    assert res == wt_to_identity_fast(w1.inverse)
    return res


def path_of_weight_exists(
    o: QbgOracle, w1: WeylElt, w2: WeylElt, mu_coords: Sequence[int]
) -> bool:
    """Whether some path w1 -> w2 has weight exactly the given class."""
    wt = o.weight(w1, w2)
    return all(
        j in o.subset or m - t >= 0 for j, (m, t) in enumerate(zip(mu_coords, wt))
    )


def path_achieving_weight(
    o: QbgOracle, w1: WeylElt, w2: WeylElt, mu_coords: Sequence[int]
) -> list[QbgEdge] | None:
    """An explicit path of the requested weight, for J = empty oracles.

    Splices weight-raising two-step detours onto a shortest path.  Returns
    None when no path of that weight exists.
    """
    assert not o.subset, "constructive paths are only built on full graphs"
    if not path_of_weight_exists(o, w1, w2, mu_coords):
        return None
    rs = o.rs
    # shortest path by BFS with parent tracking
    src, goal = o.vindex[w1], o.vindex[w2]
    parent: dict[int, QbgEdge] = {}
    seen = {src}
    queue = deque([src])
    while goal not in seen:
        u = queue.popleft()
        for e in o.edges[u]:
            v = o.vindex[e.dst]
            if v not in seen:
                seen.add(v)
                parent[v] = e
                queue.append(v)
    path: list[QbgEdge] = []
    v = goal
    while v != src:
        e = parent[v]
        path.append(e)
        v = o.vindex[e.src]
    path.reverse()
    need = tuple(m - t for m, t in zip(mu_coords, o.weight(w1, w2)))
    loops: list[QbgEdge] = []
    for i, c in enumerate(need):
        for _ in range(c):
            out = next(e for e in o.edges_from(w1) if e.via_root == i)
            back = next(e for e in o.edges_from(out.dst) if e.via_root == i)
            assert back.dst == w1
            loops.extend([out, back])
    return loops + path


def to_dot(o: QbgOracle) -> str:
    """DOT rendering with stable vertex and edge order."""
    rs = o.rs
    lines = ["digraph qbg {"]
    names = {}
    for i, w in enumerate(o.vertices):
        names[w] = f"v{i}"
        label = "e" if w.length == 0 else "s" + " s".join(str(k + 1) for k in w.word)
        lines.append(f'  v{i} [label="{label}"];')
    for bunch in o.edges:
        for e in bunch:
            style = "solid" if e.kind == "B" else "dashed"
            wt = ",".join(str(v) for v in e.weight)
            lines.append(
                f'  {names[e.src]} -> {names[e.dst]} '
                f'[label="{e.kind} a{e.via_root + 1} ({wt})", style={style}];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    import doctest

    doctest.testmod()
