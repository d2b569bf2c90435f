"""Quotients of the finite Weyl group by subsets of the affine simple roots.

A subset of the affine simple roots spans a finite reflection subgroup as
long as it misses at least one node per affine diagram component.  Such a
subset yields a projection of the Weyl group onto coset representatives
together with a coweight correction term, a signed positivity indicator chi,
coset length functionals, and minimal/maximal double coset representatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .affine import (
    AffineRoot,
    ExtAffElt,
    act_affine,
    from_weyl,
    is_positive_affine,
    raff,
    simple_affine_roots,
)
from .errors import BudgetExceeded, InvalidDatum, NotRegular
from .qbg import build_qbg
from .rootsys import (
    Coweight,
    RootSystem,
    WeylElt,
    apply_weyl_to_coroot_coords,
    coroot_coords,
    coweight_from_coroot_coords,
    coweight_zero,
    fundamental_coweight,
    solve_exact,
)


class AffSubset:
    """A set of affine simple roots with its derived finite subsystem.

    >>> from affweyl.rootsys import build_root_system
    >>> rs = build_root_system("A2")
    >>> top = AffSubset(rs, [(rs.neg(rs.highest_root[0]), 1)])
    >>> top.regular
    True
    >>> sorted(top.phi_j_pos) == [rs.neg(rs.highest_root[0])]
    True
    >>> AffSubset(rs, [(0, 0), (1, 0), (rs.neg(rs.highest_root[0]), 1)]).regular
    False
    """

    def __init__(self, rs: RootSystem, members: Iterable) -> None:
        allowed = set(simple_affine_roots(rs))
        normalized = set()
        for m in members:
            a = m if isinstance(m, AffineRoot) else AffineRoot(m[0], m[1])
            if a not in allowed:
                raise InvalidDatum(f"{a} is not an affine simple root")
            normalized.add(a)
        self.rs = rs
        self.members = tuple(sorted(normalized, key=lambda a: (a.k, a.root)))
        self.regular = self._check_regular()
        self._tables_ready = False
        if self.regular:
            self._build_tables()

    def _check_regular(self) -> bool:
        rs = self.rs
        have = set(self.members)
        start = 0
        for c, theta in enumerate(rs.highest_root):
            size = len(rs.root_support[theta])
            nodes = {AffineRoot(i, 0) for i in range(start, start + size)}
            nodes.add(AffineRoot(rs.neg(theta), 1))
            if nodes <= have:
                return False
            start += size
        return True

    def _build_tables(self) -> None:
        rs = self.rs
        npos = rs.num_positive
        self.cl_indices = tuple(a.root for a in self.members)
        columns = [rs.roots[r] for r in self.cl_indices]
        pos = []
        full = set()
        for r in range(2 * npos):
            sol = solve_exact(columns, rs.roots[r]) if columns else None
            if sol is None:
                continue
            if any(v.denominator != 1 for v in sol):
                continue
            if all(v >= 0 for v in sol):
                full.add(r)
                pos.append(r)
            elif all(v <= 0 for v in sol):
                full.add(r)
        self.phi_j = frozenset(full)
        self.phi_j_pos = tuple(sorted(pos))
        assert self.phi_j == self._reflection_closure()
        levels = self._affine_closure_levels()
        assert set(levels) == self.phi_j
        for r in self.phi_j_pos:
            assert levels[r] == (0 if rs.is_positive(r) else 1)
            assert levels[rs.neg(r)] == -levels[r]
        self._levels = levels
        self._chi = tuple(
            (1 if rs.is_positive(r) else 0) - (1 if r in set(self.phi_j_pos) else 0)
            for r in range(2 * npos)
        )
        for r in self.phi_j:
            assert self._chi[r] == -levels[r]
        self._tables_ready = True

    def _reflection_closure(self) -> frozenset[int]:
        rs = self.rs
        seen = set(self.cl_indices)
        frontier = list(seen)
        while frontier:
            new = []
            for r in frontier:
                for g in self.cl_indices:
                    img = rs.reflection(g).apply_root(r)
                    if img not in seen:
                        seen.add(img)
                        new.append(img)
            frontier = new
        closure = set(seen)
        for r in seen:
            closure.add(rs.neg(r))
        return frozenset(closure)

    def _affine_closure_levels(self) -> dict[int, int]:
        rs = self.rs
        refs = [raff(rs, a) for a in self.members]
        seen = {a for a in self.members}
        seen.update(AffineRoot(rs.neg(a.root), -a.k) for a in self.members)
        frontier = list(seen)
        while frontier:
            new = []
            for a in frontier:
                for t in refs:
                    img = act_affine(t, a)
                    if img not in seen:
                        seen.add(img)
                        new.append(img)
            frontier = new
        levels: dict[int, int] = {}
        for a in seen:
            assert a.root not in levels
            levels[a.root] = a.k
        return levels

    def require_regular(self) -> None:
        if not self.regular:
            raise NotRegular(f"{self.members} spans an infinite reflection group")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffSubset):
            return NotImplemented
        return self.rs is other.rs and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.rs), self.members))

    def __repr__(self) -> str:
        return f"AffSubset({self.rs.label}, {list(self.members)})"


@dataclass(frozen=True)
class SemiAffineProjection:
    """Coset representative plus the accumulated coweight correction."""

    w_rep: WeylElt
    mu: Coweight
    mu_coords: tuple[int, ...]


def chi(subset: AffSubset, r: int) -> int:
    """Signed positivity indicator twisted by the subsystem.

    >>> from affweyl.rootsys import build_root_system
    >>> rs = build_root_system("A2")
    >>> top = AffSubset(rs, [(rs.neg(rs.highest_root[0]), 1)])
    >>> chi(top, rs.neg(rs.highest_root[0]))
    -1
    >>> chi(AffSubset(rs, []), 0)
    1
    """
    subset.require_regular()
    return subset._chi[r]


def in_semi_affine_quotient(w: WeylElt, subset: AffSubset) -> bool:
    subset.require_regular()
    return all(subset.rs.is_positive(w.inv_perm[b]) for b in subset.phi_j_pos)


def semi_affine_length(w: WeylElt, subset: AffSubset) -> int:
    subset.require_regular()
    rs = subset.rs
    return sum(1 for b in subset.phi_j_pos if not rs.is_positive(w.inv_perm[b]))


def semi_affine_projection(w: WeylElt, subset: AffSubset) -> SemiAffineProjection:
    """Strip subsystem-positive inversions off the left of w.

    >>> from affweyl.rootsys import build_root_system
    >>> rs = build_root_system("A2")
    >>> top = AffSubset(rs, [(rs.neg(rs.highest_root[0]), 1)])
    >>> p = semi_affine_projection(rs.identity, top)
    >>> p.w_rep == rs.reflection(rs.highest_root[0])
    True
    >>> p.mu_coords
    (1, 1)
    """
    subset.require_regular()
    rs = subset.rs
    start = w
    coords = [0] * rs.rank
    remaining = semi_affine_length(w, subset)
    while True:
        for b in subset.phi_j_pos:
            if not rs.is_positive(w.inv_perm[b]):
                break
        else:
            break
        u = rs.reflection(b) * w
        if not rs.is_positive(b):
            for j, v in enumerate(rs.coroots[u.inv_perm[b]]):
                coords[j] += v
        w = u
        now = semi_affine_length(w, subset)
        assert now < remaining
        remaining = now
    mu = tuple(coords)
    assert in_semi_affine_quotient(w, subset)
    if subset.cl_indices:
        target = apply_weyl_to_coroot_coords(start, mu)
        sol = solve_exact([rs.coroots[r] for r in subset.cl_indices], target)
        assert sol is not None and all(v.denominator == 1 for v in sol)
    else:
        assert w == start and mu == (0,) * rs.rank
    return SemiAffineProjection(w, coweight_from_coroot_coords(rs, mu), mu)


def semi_affine_wt(w1: WeylElt, w2: WeylElt, subset: AffSubset) -> Coweight:
    """Weight between cosets: project both sides, then measure in the graph.

    >>> from affweyl.rootsys import build_root_system
    >>> rs = build_root_system("A2")
    >>> top = AffSubset(rs, [(rs.neg(rs.highest_root[0]), 1)])
    >>> s1, s2 = rs.simple_reflection(0), rs.simple_reflection(1)
    >>> coroot_coords(rs, semi_affine_wt(rs.identity, s1 * s2, top))
    (Fraction(0, 1), Fraction(-1, 1))
    """
    subset.require_regular()
    rs = subset.rs
    p1 = semi_affine_projection(w1, subset)
    p2 = semi_affine_projection(w2, subset)
    o = build_qbg(rs)
    direct = o.weight(p1.w_rep, p2.w_rep)
    coords = tuple(
        d - a + b for d, a, b in zip(direct, p1.mu_coords, p2.mu_coords)
    )
    alt = o.weight(p1.w_rep, w2)
    assert coords == tuple(v - a for v, a in zip(alt, p1.mu_coords))
    return coweight_from_coroot_coords(rs, coords)


def coset_length_functional(
    x: ExtAffElt, r: int, left: AffSubset, right: AffSubset
) -> int:
    """Length functional twisted by a pair of affine simple root subsets.

    >>> from affweyl.rootsys import build_root_system
    >>> from affweyl.affine import from_weyl
    >>> rs = build_root_system("A2")
    >>> one = AffSubset(rs, [(0, 0)])
    >>> coset_length_functional(from_weyl(rs.identity), 0, one, one)
    0
    """
    left.require_regular()
    right.require_regular()
    rs = x.rs
    pair = x.mu.pair_root_coords(rs.roots[r])
    return pair + chi(right, r) - chi(left, x.w.apply_root(r))


def in_double_quotient(
    x: ExtAffElt, left: AffSubset, right: AffSubset, positive: bool = True
) -> bool:
    rs = x.rs
    xi = x.inverse
    for a in left.members:
        if is_positive_affine(rs, act_affine(xi, a)) != positive:
            return False
    for a in right.members:
        if is_positive_affine(rs, act_affine(x, a)) != positive:
            return False
    return True


def double_coset_min(x: ExtAffElt, left: AffSubset, right: AffSubset) -> ExtAffElt:
    """The shortest element of the double coset through x.

    >>> from affweyl.rootsys import build_root_system
    >>> from affweyl.affine import from_weyl
    >>> rs = build_root_system("A1")
    >>> sub = AffSubset(rs, [(0, 0)])
    >>> none = AffSubset(rs, [])
    >>> double_coset_min(from_weyl(rs.simple_reflection(0)), sub, none).is_identity()
    True
    """
    left.require_regular()
    right.require_regular()
    rs = x.rs
    while True:
        xi = x.inverse
        for a in left.members:
            if not is_positive_affine(rs, act_affine(xi, a)):
                y = raff(rs, a) * x
                break
        else:
            for a in right.members:
                if not is_positive_affine(rs, act_affine(x, a)):
                    y = x * raff(rs, a)
                    break
            else:
                return x
        assert y.length == x.length - 1
        x = y


def double_coset_max(x: ExtAffElt, left: AffSubset, right: AffSubset) -> ExtAffElt:
    """The longest element of the double coset through x.

    >>> from affweyl.rootsys import build_root_system
    >>> from affweyl.affine import from_weyl
    >>> rs = build_root_system("A1")
    >>> sub = AffSubset(rs, [(0, 0)])
    >>> none = AffSubset(rs, [])
    >>> double_coset_max(from_weyl(rs.identity), sub, none).w.word
    (0,)
    """
    left.require_regular()
    right.require_regular()
    rs = x.rs
    budget = len(left.phi_j_pos) + len(right.phi_j_pos)
    steps = 0
    while True:
        xi = x.inverse
        for a in left.members:
            if is_positive_affine(rs, act_affine(xi, a)):
                y = raff(rs, a) * x
                break
        else:
            for a in right.members:
                if is_positive_affine(rs, act_affine(x, a)):
                    y = x * raff(rs, a)
                    break
            else:
                return x
        assert y.length == x.length + 1
        steps += 1
        if steps > budget:
            raise BudgetExceeded("double coset ascent exceeded its length bound")
        x = y


def subgroup_elements(
    rs: RootSystem, subset: AffSubset, budget: int = 100_000
) -> tuple[ExtAffElt, ...]:
    """All elements of the finite reflection group spanned by the subset."""
    subset.require_regular()
    gens = [raff(rs, a) for a in subset.members]
    seen = {from_weyl(rs.identity)}
    frontier = list(seen)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
        if len(seen) > budget:
            raise BudgetExceeded("reflection subgroup exceeded enumeration budget")
    return tuple(sorted(seen, key=lambda z: (z.length, z.w.word, z.mu.pairings)))


def sup_coroot_coords(vectors: Iterable[Sequence]) -> tuple:
    """Least upper bound, componentwise in simple coroot coordinates."""
    rows = [tuple(v) for v in vectors]
    assert rows
    return tuple(max(col) for col in zip(*rows))


def ceil_coroot_coords(vec: Sequence) -> tuple[int, ...]:
    """Least integer vector componentwise above vec."""
    return tuple(math.ceil(Fraction(v)) for v in vec)


def affine_fundamental_coweight(rs: RootSystem, a: AffineRoot) -> Coweight:
    """Dual basis coweight for a level-zero node, zero otherwise."""
    if a.k != 0:
        return coweight_zero(rs, "rational")
    assert a.root < rs.rank
    return fundamental_coweight(rs, a.root)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
