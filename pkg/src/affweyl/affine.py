"""Extended affine Weyl group elements and their length combinatorics.

An element is a pair ``w * translation(mu)`` with ``w`` finite and ``mu`` a
coweight.  Affine roots are pairs (root index, integer level).  This module
holds the exact but deliberately naive machinery: affine-root counting,
lifting recursions for Bruhat order, reduced-word folds for Demazure
products, and window enumeration.  Faster structured criteria live in the
higher modules and are tested against these oracles.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import BudgetExceeded, NonTermination
from .rootsys import Coweight, RootSystem, WeylElt, coroot_coords_scaled, coweight_zero

_dot = lambda a, b: sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class AffineRoot:
    """The affine root (alpha, k)."""

    root: int
    k: int


class ExtAffElt:
    """Element ``w * translation(mu)`` of the extended affine Weyl group."""

    __slots__ = ("w", "mu", "length", "_hash", "_inverse")

    def __init__(self, w: WeylElt, mu: Coweight):
        self.w = w
        self.mu = mu
        self.length = _im_length(w, mu.pairings)
        self._hash = hash((w.perm, mu.pairings))
        self._inverse: "ExtAffElt | None" = None

    @property
    def rs(self) -> RootSystem:
        return self.w.rs

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, ExtAffElt)
            and self.w is other.w
            and self.mu.pairings == other.mu.pairings
        )

    def __mul__(self, other: "ExtAffElt") -> "ExtAffElt":
        p = other.w.inverse.apply_pairings(self.mu.pairings)
        return ExtAffElt(
            self.w * other.w,
            Coweight(tuple(a + b for a, b in zip(p, other.mu.pairings)), "coweight"),
        )

    @property
    def inverse(self) -> "ExtAffElt":
        x = self._inverse
        if x is None:
            p = self.w.apply_pairings(self.mu.pairings)
            x = ExtAffElt(self.w.inverse, Coweight(tuple(-v for v in p), "coweight"))
            x._inverse = self
            self._inverse = x
        return x

    def is_identity(self) -> bool:
        return self.w.length == 0 and self.mu.is_zero()

    def __repr__(self) -> str:
        return f"x({self.w!r}, mu={list(self.mu.pairings)})"


def _im_length(w: WeylElt, p: Sequence[int]) -> int:
    """Iwahori-Matsumoto closed form for the length."""
    rs = w.rs
    npos = rs.num_positive
    roots = rs.roots
    perm = w.perm
    total = 0
    for r in range(npos):
        v = _dot(roots[r], p)
        if perm[r] >= npos:
            v += 1
        total += v if v >= 0 else -v
    return total


def ext_elt(w: WeylElt, mu: Coweight | Sequence[int]) -> ExtAffElt:
    if not isinstance(mu, Coweight):
        mu = Coweight(tuple(mu), "coweight")
    elif mu.lattice != "coweight":
        mu = Coweight(mu.pairings, "coweight")
    return ExtAffElt(w, mu)


def translation(rs: RootSystem, mu: Coweight | Sequence[int]) -> ExtAffElt:
    return ext_elt(rs.identity, mu)


def from_weyl(w: WeylElt) -> ExtAffElt:
    return ext_elt(w, (0,) * w.rs.rank)


def is_positive_affine(rs: RootSystem, a: AffineRoot) -> bool:
    return a.k >= (0 if rs.is_positive(a.root) else 1)


def act_affine(x: ExtAffElt, a: AffineRoot) -> AffineRoot:
    return AffineRoot(
        x.w.apply_root(a.root),
        a.k - _dot(x.rs.roots[a.root], x.mu.pairings),
    )


def simple_affine_roots(rs: RootSystem) -> tuple[AffineRoot, ...]:
    """The affine simple roots: finite simples at level 0, then (-theta, 1)."""
    out = [AffineRoot(i, 0) for i in range(rs.rank)]
    out.extend(AffineRoot(rs.neg(th), 1) for th in rs.highest_root)
    return tuple(out)


def raff(rs: RootSystem, a: AffineRoot) -> ExtAffElt:
    """The affine reflection r_(alpha,k) = s_alpha * translation(k alpha^vee)."""
    return ext_elt(
        rs.reflection(a.root),
        tuple(a.k * v for v in rs.croot_pairings(a.root)),
    )


def length(x: ExtAffElt) -> int:
    return x.length


def length_functional(x: ExtAffElt, r: int) -> int:
    """The signed length contribution at one finite root."""
    rs = x.rs
    npos = rs.num_positive
    return (
        _dot(rs.roots[r], x.mu.pairings)
        + (1 if r < npos else 0)
        - (1 if x.w.perm[r] < npos else 0)
    )


def length_affine_count(x: ExtAffElt) -> int:
    """Oracle length: count positive affine roots sent to negative ones."""
    rs = x.rs
    bound = max((abs(_dot(g, x.mu.pairings)) for g in rs.roots), default=0) + 2
    total = 0
    for r in range(len(rs.roots)):
        for k in range(-bound, bound + 1):
            a = AffineRoot(r, k)
            if is_positive_affine(rs, a) and not is_positive_affine(rs, act_affine(x, a)):
                total += 1
    return total


def length_functional_sum(x: ExtAffElt) -> int:
    """Sum of the positive values of the length functional over all roots."""
    return sum(max(0, length_functional(x, r)) for r in range(len(x.rs.roots)))


_LP_CACHE: dict[ExtAffElt, tuple[WeylElt, ...]] = {}
_LP_LOCK = threading.Lock()


def lp_ordered(x: ExtAffElt) -> tuple[WeylElt, ...]:
    """Length positive elements of x, in canonical Weyl enumeration order."""
    got = _LP_CACHE.get(x)
    if got is not None:
        return got
    rs = x.rs
    npos = rs.num_positive
    vals = [length_functional(x, r) for r in range(2 * npos)]
    out = []
    for v in rs.weyl_elements():
        perm = v.perm
        if all(vals[perm[r]] >= 0 for r in range(npos)):
            out.append(v)
    result = tuple(out)
    assert result, "length positive set is never empty"
    with _LP_LOCK:
        return _LP_CACHE.setdefault(x, result)


def length_positive_set(x: ExtAffElt) -> frozenset[WeylElt]:
    return frozenset(lp_ordered(x))


def is_length_positive(x: ExtAffElt, v: WeylElt) -> bool:
    npos = x.rs.num_positive
    return all(length_functional(x, v.perm[r]) >= 0 for r in range(npos))


def is_shrunken(x: ExtAffElt) -> bool:
    """No vanishing length functional value; equivalent to |LP(x)| = 1."""
    return all(length_functional(x, r) != 0 for r in range(x.rs.num_positive))


def adjust_to_length_positive(x: ExtAffElt, v: WeylElt) -> WeylElt:
    """Apply length positive adjustment steps to v until it lands in LP(x)."""
    rs = x.rs
    npos = rs.num_positive
    guard = rs.weyl_order * (x.length + 2)
    while True:
        r = next(
            (r for r in range(npos) if length_functional(x, v.perm[r]) < 0),
            None,
        )
        if r is None:
            return v
        v = v * rs.reflection(r)
        guard -= 1
        if guard < 0:
            raise NonTermination("length positive adjustment did not settle")


def semi_infinite_length(x: ExtAffElt) -> int:
    return x.w.length + _dot(x.rs.two_rho, x.mu.pairings)


@dataclass(frozen=True)
class OmegaClass:
    """The class of mu in the coweight lattice modulo the coroot lattice."""

    residue: tuple[Fraction, ...]


def omega_class(x: ExtAffElt) -> OmegaClass:
    rs = x.rs
    den = rs.cartan_t_inv_den
    nums = coroot_coords_scaled(rs, x.mu.pairings)
    return OmegaClass(tuple(Fraction(v % den, den) for v in nums))


def same_omega_class(x: ExtAffElt, y: ExtAffElt) -> bool:
    rs = x.rs
    den = rs.cartan_t_inv_den
    diff = tuple(a - b for a, b in zip(x.mu.pairings, y.mu.pairings))
    return all(v % den == 0 for v in coroot_coords_scaled(rs, diff))


# ----------------------------------------------------------------------
# reduced words and oracles


def left_descent(x: ExtAffElt) -> AffineRoot | None:
    """First affine simple root a with r_a x shorter than x."""
    xi = x.inverse
    for a in simple_affine_roots(x.rs):
        if not is_positive_affine(x.rs, act_affine(xi, a)):
            return a
    return None


def right_descent(x: ExtAffElt) -> AffineRoot | None:
    """First affine simple root a with x r_a shorter than x."""
    for a in simple_affine_roots(x.rs):
        if not is_positive_affine(x.rs, act_affine(x, a)):
            return a
    return None


def reduced_word_aff(x: ExtAffElt) -> tuple[ExtAffElt, tuple[AffineRoot, ...]]:
    """Greedy reduced word: x = omega * r_a1 * ... * r_an with omega length zero.

    >>> from .rootsys import build_root_system
    >>> rs = build_root_system("A1")
    >>> om, word = reduced_word_aff(translation(rs, (2,)))
    >>> om.length, len(word)
    (0, 2)
    """
    rs = x.rs
    letters: list[AffineRoot] = []
    while x.length:
        a = right_descent(x)
        assert a is not None
        letters.append(a)
        x = x * raff(rs, a)
    letters.reverse()
    return x, tuple(letters)


_BRUHAT_MEMO: dict[tuple[ExtAffElt, ExtAffElt], bool] = {}
_BRUHAT_LOCK = threading.Lock()


def bruhat_leq_oracle(x: ExtAffElt, y: ExtAffElt) -> bool:
    """Exact Bruhat order by the lifting recursion on left descents.

    >>> from .rootsys import build_root_system
    >>> rs = build_root_system("A2")
    >>> one = translation(rs, (0, 0))
    >>> r = raff(rs, AffineRoot(rs.neg(rs.highest_root[0]), 1))
    >>> r.length, bruhat_leq_oracle(one, r)
    (1, True)
    """
    if x == y:
        return True
    if x.length >= y.length or not same_omega_class(x, y):
        return False
    key = (x, y)
    got = _BRUHAT_MEMO.get(key)
    if got is not None:
        return got
    a = left_descent(y)
    assert a is not None
    r = raff(y.rs, a)
    ry = r * y
    rx = r * x
    res = bruhat_leq_oracle(rx if rx.length < x.length else x, ry)
    with _BRUHAT_LOCK:
        _BRUHAT_MEMO[key] = res
    return res


def demazure_oracle(x: ExtAffElt, y: ExtAffElt) -> ExtAffElt:
    """Demazure (monotone) product via a reduced word of y.

    >>> from .rootsys import build_root_system
    >>> rs = build_root_system("A1")
    >>> s = from_weyl(rs.simple_reflection(0))
    >>> demazure_oracle(s, s) == s
    True
    """
    rs = x.rs
    omega, word = reduced_word_aff(y)
    z = x * omega
    for a in word:
        if is_positive_affine(rs, act_affine(z, a)):
            z = z * raff(rs, a)
    return z


# ----------------------------------------------------------------------
# enumeration


def enumerate_ball(
    rs: RootSystem,
    length_bound: int,
    mu_bound: int | None = None,
    budget: int = 5_000_000,
) -> list[ExtAffElt]:
    """All elements with length <= length_bound and |<mu, alpha_i>| <= mu_bound.

    The default mu_bound of length_bound + 1 covers the whole length ball:
    every pairing of mu with a simple root is bounded by the length plus one.
    """
    if mu_bound is None:
        mu_bound = length_bound + 1
    n = rs.rank
    grid = rs.weyl_order * (2 * mu_bound + 1) ** n
    if grid > budget:
        raise BudgetExceeded(f"ball grid size {grid} exceeds budget {budget}")
    out = []
    elts = rs.weyl_elements()
    for p in product(range(-mu_bound, mu_bound + 1), repeat=n):
        mu = Coweight(p, "coweight")
        for w in elts:
            x = ExtAffElt(w, mu)
            if x.length <= length_bound:
                out.append(x)
    out.sort(key=lambda x: (x.length, rs.weyl_index(x.w), x.mu.pairings))
    return out


def bruhat_downset_masks(elements: Sequence[ExtAffElt]) -> list[int]:
    """Bitmasks of the Bruhat downsets of each element, within the window.

    ``elements`` must be sorted so lengths weakly increase and must be
    descent closed (a full enumerate_ball output with default mu bound is).
    Bit j of mask i is set iff elements[j] <= elements[i].
    """
    if not elements:
        return []
    rs = elements[0].rs
    index = {x: i for i, x in enumerate(elements)}
    lengths = [x.length for x in elements]
    simples = simple_affine_roots(rs)
    refl = {a: raff(rs, a) for a in simples}
    # left multiplication tables, -1 when the product leaves the window
    tables: dict[AffineRoot, list[int]] = {}
    for a in simples:
        r = refl[a]
        tables[a] = [index.get(r * x, -1) for x in elements]
    masks = [0] * len(elements)
    for i, y in enumerate(elements):
        if lengths[i] == 0:
            masks[i] = 1 << i
            continue
        a = left_descent(y)
        table = tables[a]
        j = index.get(refl[a] * y)
        assert j is not None, "window is not descent closed"
        m = masks[j]
        out = m
        while m:
            low = m & -m
            z = low.bit_length() - 1
            m ^= low
            up = table[z]
            if up >= 0 and lengths[up] > lengths[z]:
                out |= 1 << up
        masks[i] = out | (1 << i)
    return masks


def clear_caches() -> None:
    """Drop memoized Bruhat and length positive data (mainly for tests)."""
    with _BRUHAT_LOCK:
        _BRUHAT_MEMO.clear()
    with _LP_LOCK:
        _LP_CACHE.clear()


if __name__ == "__main__":
    import doctest

    doctest.testmod()
