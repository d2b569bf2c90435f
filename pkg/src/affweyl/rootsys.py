"""Finite crystallographic root systems with exact integer arithmetic.

Roots and coroots are stored as integer coordinate tuples over the simple
basis of their side.  The Cartan matrix convention is ``C[i][j] =
<alpha_i^vee, alpha_j>`` with Bourbaki numbering inside each irreducible
factor; product types use block matrices.  Weyl group elements are
permutations of the root index set, interned per root system so that
equality is cheap.  Coweights are stored by their pairing vector
``(<mu, alpha_1>, ..., <mu, alpha_n>)``; coordinates over the simple
coroots are recovered exactly with ``Fraction`` arithmetic.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .errors import (
    BudgetExceeded,
    IncomparableLattices,
    SingularSystem,
    UnknownType,
)

_FACTOR_RE = re.compile(r"([A-G])([0-9]+)")

# Enumerating the Weyl group beyond this order is refused.
WEYL_ENUM_BUDGET = 2_000_000


def _factor_cartan(letter: str, n: int) -> list[list[int]]:
    """Cartan matrix of one irreducible factor, Bourbaki numbering."""
    ok = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }.get(letter, False)
    if not ok:
        raise UnknownType(f"unsupported factor {letter}{n}")
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        c[i][j] = cij
        c[j][i] = cji

    if letter in ("A", "B", "C", "F"):
        for i in range(n - 1):
            bond(i, i + 1)
        if letter == "B":
            bond(n - 2, n - 1, -1, -2)
        elif letter == "C":
            bond(n - 2, n - 1, -2, -1)
        elif letter == "F":
            bond(1, 2, -1, -2)
    elif letter == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif letter == "E":
        for i, j in ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)):
            if j < n:
                bond(i, j)
        bond(1, 3)
    else:
        bond(0, 1, -3, -1)
    return c


def _factor_root_count(letter: str, n: int) -> int:
    if letter == "A":
        return n * (n + 1)
    if letter in ("B", "C"):
        return 2 * n * n
    if letter == "D":
        return 2 * n * (n - 1)
    if letter == "E":
        return {6: 72, 7: 126, 8: 240}[n]
    return 48 if letter == "F" else 12


def _factor_weyl_order(letter: str, n: int) -> int:
    if letter == "A":
        return factorial(n + 1)
    if letter in ("B", "C"):
        return (2**n) * factorial(n)
    if letter == "D":
        return (2 ** (n - 1)) * factorial(n)
    if letter == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[n]
    return 1152 if letter == "F" else 12


def _invert_fraction_matrix(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularSystem("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        d = a[col][col]
        a[col] = [v / d for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve_exact(
    columns: Sequence[Sequence[Fraction | int]], target: Sequence[Fraction | int]
) -> tuple[Fraction, ...] | None:
    """Solve ``sum_k x_k * columns[k] = target`` exactly.

    Returns the unique solution for independent columns, or None if the
    system is inconsistent.  Raises SingularSystem on dependent columns.
    """
    ncols = len(columns)
    nrows = len(target)
    a = [[Fraction(columns[k][r]) for k in range(ncols)] + [Fraction(target[r])] for r in range(nrows)]
    row = 0
    pivots = []
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if a[r][col] != 0), None)
        if piv is None:
            raise SingularSystem("dependent columns")
        a[row], a[piv] = a[piv], a[row]
        d = a[row][col]
        a[row] = [v / d for v in a[row]]
        for r in range(nrows):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[row])]
        pivots.append(row)
        row += 1
    for r in range(row, nrows):
        if a[r][ncols] != 0:
            return None
    return tuple(a[pivots[k]][ncols] for k in range(ncols))


class WeylElt:
    """One Weyl group element, as a permutation of the root index list.

    Instances are interned per root system; construct them through the
    RootSystem methods rather than directly.
    """

    __slots__ = ("rs", "perm", "length", "_hash", "_inv_perm", "_word", "_inverse")

    def __init__(self, rs: "RootSystem", perm: tuple[int, ...]):
        self.rs = rs
        self.perm = perm
        npos = rs.num_positive
        self.length = sum(1 for r in range(npos) if perm[r] >= npos)
        self._hash = hash(perm)
        self._inv_perm: tuple[int, ...] | None = None
        self._word: tuple[int, ...] | None = None
        self._inverse: "WeylElt | None" = None

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, WeylElt) and self.perm == other.perm and self.rs is other.rs

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        sp = self.perm
        return self.rs._weyl(tuple(map(sp.__getitem__, other.perm)))

    @property
    def inv_perm(self) -> tuple[int, ...]:
        p = self._inv_perm
        if p is None:
            inv = [0] * len(self.perm)
            for r, s in enumerate(self.perm):
                inv[s] = r
            p = self._inv_perm = tuple(inv)
        return p

    @property
    def inverse(self) -> "WeylElt":
        w = self._inverse
        if w is None:
            w = self._inverse = self.rs._weyl(self.inv_perm)
            w._inverse = self
        return w

    @property
    def word(self) -> tuple[int, ...]:
        """Reduced word, greedy smallest left descent first."""
        if self._word is None:
            letters = []
            w = self
            while w.length:
                i = next(i for i in range(self.rs.rank) if w.inv_perm[i] >= self.rs.num_positive)
                letters.append(i)
                w = self.rs.simple_reflection(i) * w
            self._word = tuple(letters)
        return self._word

    def apply_root(self, r: int) -> int:
        return self.perm[r]

    def apply_pairings(self, p: Sequence) -> tuple:
        """Pairing vector of ``w(mu)`` given the one of ``mu``."""
        roots = self.rs.roots
        inv = self.inv_perm
        return tuple(_dot(roots[inv[i]], p) for i in range(self.rs.rank))

    def is_identity(self) -> bool:
        return self.length == 0

    def __repr__(self) -> str:
        return "w[%s]" % ",".join(str(i + 1) for i in self.word)


def _dot(a: Sequence, b: Sequence):
    total = 0
    for x, y in zip(a, b):
        total += x * y
    return total


@dataclass(frozen=True)
class Coweight:
    """A coweight given by its pairings with the simple roots.

    The lattice tag is one of "coroot", "coweight", "rational" and controls
    which dominance comparisons are meaningful.
    """

    pairings: tuple
    lattice: str = "coweight"

    def __post_init__(self):
        if self.lattice not in ("coroot", "coweight", "rational"):
            raise ValueError(f"bad lattice tag {self.lattice!r}")
        norm = tuple(int(p) if isinstance(p, Fraction) and p.denominator == 1 else p for p in self.pairings)
        object.__setattr__(self, "pairings", norm)

    def __add__(self, other: "Coweight") -> "Coweight":
        return Coweight(
            tuple(a + b for a, b in zip(self.pairings, other.pairings)),
            _join_lattice(self.lattice, other.lattice),
        )

    def __sub__(self, other: "Coweight") -> "Coweight":
        return Coweight(
            tuple(a - b for a, b in zip(self.pairings, other.pairings)),
            _join_lattice(self.lattice, other.lattice),
        )

    def __neg__(self) -> "Coweight":
        return Coweight(tuple(-a for a in self.pairings), self.lattice)

    def scale(self, c) -> "Coweight":
        lattice = self.lattice
        if isinstance(c, Fraction) and c.denominator != 1:
            lattice = "rational"
        return Coweight(tuple(c * a for a in self.pairings), lattice)

    def pair_root_coords(self, coords: Sequence):
        """Pairing ``<mu, gamma>`` for a root with the given coordinates."""
        return _dot(coords, self.pairings)

    def is_zero(self) -> bool:
        return all(p == 0 for p in self.pairings)

    def is_dominant(self) -> bool:
        return all(p >= 0 for p in self.pairings)


def _join_lattice(a: str, b: str) -> str:
    if a == b:
        return a
    if "rational" in (a, b):
        return "rational"
    return "coweight"


class RootSystem:
    """A finite root system plus cached Weyl group machinery.

    Immutable after construction; all lazy caches are guarded by a lock so
    concurrent readers see consistent results.
    """

    def __init__(self, label: str):
        factors = _parse_label(label)
        self.label = "x".join(f"{l}{n}" for l, n in factors)
        self.factors = tuple(factors)
        self.rank = sum(n for _, n in factors)
        self.cartan = _block_cartan(factors)
        self.weyl_order = 1
        expected_roots = 0
        for letter, n in factors:
            self.weyl_order *= _factor_weyl_order(letter, n)
            expected_roots += _factor_root_count(letter, n)
        self._lock = threading.RLock()
        self._generate_roots(expected_roots)
        self._index_components()
        inv = _invert_fraction_matrix([[self.cartan[j][i] for j in range(self.rank)] for i in range(self.rank)])
        den = 1
        for row in inv:
            for v in row:
                den = den * v.denominator // _gcd(den, v.denominator)
        self.cartan_t_inv_den = den
        self.cartan_t_inv_num = tuple(tuple(int(v * den) for v in row) for row in inv)
        self._weyl_intern: dict[tuple[int, ...], WeylElt] = {}
        self._simple_refl: list[WeylElt | None] = [None] * self.rank
        self._refl_by_root: dict[int, WeylElt] = {}
        self._all_weyl: tuple[WeylElt, ...] | None = None
        self._weyl_index: dict[WeylElt, int] | None = None
        self._pairing_table: tuple[tuple[int, ...], ...] | None = None
        self.identity = self._weyl(tuple(range(2 * self.num_positive)))

    # ------------------------------------------------------------------
    # construction helpers

    def _generate_roots(self, expected: int) -> None:
        n = self.rank
        c = self.cartan
        simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        frontier = [(simples[i], simples[i]) for i in range(n)]
        for g, b in frontier:
            seen[g] = b
        while frontier:
            new = []
            for g, b in frontier:
                for i in range(n):
                    pr = sum(c[i][j] * g[j] for j in range(n))
                    g2 = tuple(v - pr * int(j == i) for j, v in enumerate(g))
                    if g2 in seen:
                        continue
                    pc = sum(b[j] * c[j][i] for j in range(n))
                    b2 = tuple(v - pc * int(j == i) for j, v in enumerate(b))
                    seen[g2] = b2
                    new.append((g2, b2))
            frontier = new
        if len(seen) != expected:
            raise UnknownType(f"root closure produced {len(seen)} roots, expected {expected}")
        positives = []
        for g in seen:
            if all(v >= 0 for v in g):
                positives.append(g)
            elif not all(v <= 0 for v in g):
                raise UnknownType("indefinite root sign")
        simple_coords = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        rest = sorted((g for g in positives if sum(g) > 1), key=lambda g: (sum(g), g))
        positives = simple_coords + rest
        npos = len(positives)
        roots = list(positives) + [tuple(-v for v in g) for g in positives]
        self.roots = tuple(roots)
        self.coroots = tuple(seen[g] for g in roots)
        self.num_positive = npos
        self.root_index = {g: r for r, g in enumerate(roots)}
        for r in range(npos):
            if self.coroots[r + npos] != tuple(-v for v in self.coroots[r]):
                raise UnknownType("coroot negation mismatch")
        self.root_height = tuple(sum(g) for g in roots)
        self.root_support = tuple(frozenset(i for i, v in enumerate(g) if v) for g in roots)
        self.two_rho = tuple(sum(g[j] for g in positives) for j in range(n))

    def _index_components(self) -> None:
        n = self.rank
        comp = [-1] * n
        cid = 0
        for start in range(n):
            if comp[start] >= 0:
                continue
            stack = [start]
            comp[start] = cid
            while stack:
                i = stack.pop()
                for j in range(n):
                    if j != i and self.cartan[i][j] != 0 and comp[j] < 0:
                        comp[j] = cid
                        stack.append(j)
            cid += 1
        self.component_of_simple = tuple(comp)
        self.num_components = cid
        highest = []
        for k in range(cid):
            nodes = frozenset(i for i in range(n) if comp[i] == k)
            cands = [
                r
                for r in range(self.num_positive)
                if self.root_support[r] <= nodes
            ]
            top = max(cands, key=lambda r: self.root_height[r])
            ties = [r for r in cands if self.root_height[r] == self.root_height[top]]
            if len(ties) != 1:
                raise UnknownType("highest root is not unique")
            highest.append(top)
        self.highest_root = tuple(highest)
        d = [0] * n
        for k in range(cid):
            nodes = sorted(i for i in range(n) if comp[i] == k)
            d[nodes[0]] = 1
            changed = True
            while changed:
                changed = False
                for i in nodes:
                    for j in nodes:
                        if i != j and self.cartan[i][j] != 0 and d[i] and not d[j]:
                            f = Fraction(d[i] * self.cartan[i][j], self.cartan[j][i])
                            d[j] = f
                            changed = True
            scale = 1
            for i in nodes:
                scale = scale * Fraction(d[i]).denominator // _gcd(scale, Fraction(d[i]).denominator)
            for i in nodes:
                d[i] = int(Fraction(d[i]) * scale)
        self._sym_d = tuple(d)
        norms = []
        for r in range(len(self.roots)):
            g = self.roots[r]
            norms.append(sum(d[i] * g[i] * self.cartan[i][j] * g[j] for i in range(n) for j in range(n)))
        self._norm2 = tuple(norms)
        comp_roots = tuple(self.component_of_root(r) for r in range(len(self.roots)))
        self._long = tuple(
            self._norm2[r] == max(self._norm2[s] for s in range(self.num_positive) if comp_roots[s] == comp_roots[r])
            for r in range(len(self.roots))
        )

    # ------------------------------------------------------------------
    # root bookkeeping

    def neg(self, r: int) -> int:
        npos = self.num_positive
        return r + npos if r < npos else r - npos

    def is_positive(self, r: int) -> bool:
        return r < self.num_positive

    def component_of_root(self, r: int) -> int:
        return self.component_of_simple[next(iter(self.root_support[r]))]

    def is_long(self, r: int) -> bool:
        return self._long[r]

    @property
    def pairing_table(self) -> tuple[tuple[int, ...], ...]:
        """Table ``[r1][r2] = <alpha_r1^vee, alpha_r2>``."""
        with self._lock:
            if self._pairing_table is None:
                rows = []
                for b in self.coroots:
                    brow = tuple(_dot(b, col) for col in zip(*self.cartan))
                    rows.append(tuple(_dot(g, brow) for g in self.roots))
                self._pairing_table = tuple(rows)
            return self._pairing_table

    def croot_pairings(self, r: int) -> tuple[int, ...]:
        """Pairing vector of the coroot of root ``r``, viewed as a coweight."""
        return tuple(self.pairing_table[r][i] for i in range(self.rank))

    # ------------------------------------------------------------------
    # Weyl group

    def _weyl(self, perm: tuple[int, ...]) -> WeylElt:
        w = self._weyl_intern.get(perm)
        if w is None:
            with self._lock:
                w = self._weyl_intern.setdefault(perm, WeylElt(self, perm))
        return w

    def simple_reflection(self, i: int) -> WeylElt:
        w = self._simple_refl[i]
        if w is None:
            c = self.cartan
            n = self.rank
            perm = []
            for g in self.roots:
                pr = sum(c[i][j] * g[j] for j in range(n))
                perm.append(self.root_index[tuple(v - pr * int(j == i) for j, v in enumerate(g))])
            w = self._weyl(tuple(perm))
            self._simple_refl[i] = w
        return w

    def reflection(self, r: int) -> WeylElt:
        """The reflection in root ``r`` as a Weyl group element."""
        w = self._refl_by_root.get(r)
        if w is None:
            pt = self.pairing_table[r]
            g = self.roots[r]
            perm = []
            for s, h in enumerate(self.roots):
                pr = pt[s]
                perm.append(self.root_index[tuple(v - pr * gv for v, gv in zip(h, g))])
            w = self._weyl(tuple(perm))
            with self._lock:
                self._refl_by_root[r] = w
        return w

    def weyl_from_word(self, word: Iterable[int]) -> WeylElt:
        w = self.identity
        for i in word:
            w = w * self.simple_reflection(i)
        return w

    def weyl_elements(self) -> tuple[WeylElt, ...]:
        """All Weyl group elements, sorted by length then reduced word."""
        with self._lock:
            if self._all_weyl is None:
                if self.weyl_order > WEYL_ENUM_BUDGET:
                    raise BudgetExceeded(f"Weyl group order {self.weyl_order} exceeds enumeration budget")
                gens = [self.simple_reflection(i) for i in range(self.rank)]
                seen = {self.identity}
                frontier = [self.identity]
                while frontier:
                    new = []
                    for w in frontier:
                        for s in gens:
                            u = w * s
                            if u not in seen:
                                seen.add(u)
                                new.append(u)
                    frontier = new
                if len(seen) != self.weyl_order:
                    raise UnknownType("Weyl enumeration size mismatch")
                self._all_weyl = tuple(sorted(seen, key=lambda w: (w.length, w.word)))
                self._weyl_index = {w: k for k, w in enumerate(self._all_weyl)}
            return self._all_weyl

    def weyl_index(self, w: WeylElt) -> int:
        self.weyl_elements()
        return self._weyl_index[w]

    def longest_element(self) -> WeylElt:
        w = self.weyl_elements()[-1]
        if w.length != self.num_positive:
            raise UnknownType("longest element has wrong length")
        return w

    def __repr__(self) -> str:
        return f"RootSystem({self.label})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _parse_label(label: str) -> list[tuple[str, int]]:
    parts = label.replace(" ", "").split("x")
    factors = []
    for part in parts:
        m = _FACTOR_RE.fullmatch(part)
        if m is None:
            raise UnknownType(f"bad root system label {part!r}")
        factors.append((m.group(1), int(m.group(2))))
    if not factors:
        raise UnknownType("empty root system label")
    return factors


def _block_cartan(factors: Sequence[tuple[str, int]]) -> tuple[tuple[int, ...], ...]:
    blocks = [_factor_cartan(letter, n) for letter, n in factors]
    rank = sum(n for _, n in factors)
    c = [[0] * rank for _ in range(rank)]
    base = 0
    for block in blocks:
        m = len(block)
        for i in range(m):
            for j in range(m):
                c[base + i][base + j] = block[i][j]
        base += m
    return tuple(tuple(row) for row in c)


_ROOT_SYSTEM_CACHE: dict[str, RootSystem] = {}
_CACHE_LOCK = threading.Lock()


def build_root_system(label: str) -> RootSystem:
    """Build (or fetch the cached copy of) the root system for a type label.

    >>> rs = build_root_system("A2")
    >>> len(rs.roots), rs.num_positive
    (6, 3)
    >>> rs.roots[rs.highest_root[0]]
    (1, 1)
    >>> build_root_system("B2").cartan
    ((2, -1), (-2, 2))
    """
    key = "x".join(f"{l}{n}" for l, n in _parse_label(label))
    with _CACHE_LOCK:
        rs = _ROOT_SYSTEM_CACHE.get(key)
        if rs is None:
            rs = _ROOT_SYSTEM_CACHE[key] = RootSystem(key)
        return rs


# ----------------------------------------------------------------------
# coweight operations


def coweight_zero(rs: RootSystem, lattice: str = "coroot") -> Coweight:
    return Coweight((0,) * rs.rank, lattice)


def coweight_of_coroot(rs: RootSystem, r: int, k: int = 1) -> Coweight:
    return Coweight(tuple(k * v for v in rs.croot_pairings(r)), "coroot")


def coweight_from_coroot_coords(rs: RootSystem, coords: Sequence) -> Coweight:
    p = [0] * rs.rank
    for i, ci in enumerate(coords):
        if ci:
            for j, v in enumerate(rs.croot_pairings(i)):
                p[j] += ci * v
    lattice = "coroot" if all(isinstance(ci, int) or (isinstance(ci, Fraction) and ci.denominator == 1) for ci in coords) else "rational"
    return Coweight(tuple(p), lattice)


def fundamental_coweight(rs: RootSystem, i: int) -> Coweight:
    return Coweight(tuple(int(i == j) for j in range(rs.rank)), "coweight")


def coroot_coords(rs: RootSystem, cw: Coweight) -> tuple[Fraction, ...]:
    """Exact coordinates of a coweight over the simple coroots."""
    num = rs.cartan_t_inv_num
    den = rs.cartan_t_inv_den
    p = cw.pairings
    return tuple(Fraction(_dot(row, p), den) for row in num)


def coroot_coords_scaled(rs: RootSystem, pairings: Sequence[int]) -> tuple[int, ...]:
    """Coroot coordinates times ``rs.cartan_t_inv_den``, as integers."""
    return tuple(_dot(row, pairings) for row in rs.cartan_t_inv_num)


def apply_simple_to_pairings(rs: RootSystem, i: int, p: Sequence) -> tuple:
    ci = rs.cartan[i]
    pi = p[i]
    return tuple(v - ci[j] * pi for j, v in enumerate(p))


def apply_weyl(w: WeylElt, cw: Coweight) -> Coweight:
    return Coweight(w.apply_pairings(cw.pairings), cw.lattice)


def apply_weyl_to_coroot_coords(w: WeylElt, coords: Sequence[int]) -> tuple[int, ...]:
    """Image of a coroot-lattice vector under w, in coroot coordinates."""
    rs = w.rs
    out = [0] * rs.rank
    for i, c in enumerate(coords):
        if c:
            img = rs.coroots[w.perm[i]]
            for j, v in enumerate(img):
                out[j] += c * v
    return tuple(out)


def dominance_leq(
    rs: RootSystem,
    cw1: Coweight,
    cw2: Coweight,
    modulo: frozenset[int] | None = None,
) -> bool:
    """Dominance order test ``cw1 <= cw2``, optionally modulo a simple subset.

    For integral lattice tags the difference must be a nonnegative integer
    combination of positive coroots; with a "rational" tag on either side it
    must be a nonnegative rational one.  Coordinates over ``modulo`` may be
    arbitrary (the comparison happens in the quotient).

    >>> rs = build_root_system("A2")
    >>> a1v = coweight_of_coroot(rs, 0)
    >>> th = coweight_of_coroot(rs, rs.highest_root[0])
    >>> dominance_leq(rs, a1v, th)
    True
    >>> dominance_leq(rs, th, a1v)
    False
    """
    if cw1.lattice != cw2.lattice and "rational" not in (cw1.lattice, cw2.lattice):
        raise IncomparableLattices(f"{cw1.lattice} vs {cw2.lattice}")
    rational = "rational" in (cw1.lattice, cw2.lattice)
    diff = tuple(b - a for a, b in zip(cw1.pairings, cw2.pairings))
    den = rs.cartan_t_inv_den
    for j, row in enumerate(rs.cartan_t_inv_num):
        v = _dot(row, diff)
        if not rational:
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    return False
                v = int(v)
            if v % den:
                return False
            v //= den
        if (modulo is None or j not in modulo) and v < 0:
            return False
    return True


def dominant_rep(rs: RootSystem, cw: Coweight) -> tuple[Coweight, WeylElt]:
    """Dominant representative of the Weyl orbit, with a witness.

    Returns ``(dom, v)`` with ``v(cw) = dom`` and ``dom`` dominant.

    >>> rs = build_root_system("A2")
    >>> dom, v = dominant_rep(rs, Coweight((-1, 0)))
    >>> dom.pairings
    (0, 1)
    >>> apply_weyl(v, Coweight((-1, 0))) == dom
    True
    """
    p = cw.pairings
    v = rs.identity
    guard = rs.num_positive + 1
    while True:
        i = next((i for i, x in enumerate(p) if x < 0), None)
        if i is None:
            break
        p = apply_simple_to_pairings(rs, i, p)
        v = rs.simple_reflection(i) * v
        guard -= 1
        assert guard >= 0
    return Coweight(p, cw.lattice), v


def coset_decompose(
    rs: RootSystem, w: WeylElt, subset: frozenset[int], side: str = "right"
) -> tuple[WeylElt, WeylElt]:
    """Parabolic coset decomposition for a subset of simple indices.

    With ``side="right"`` returns ``(rep, part)`` where ``w = rep * part``,
    ``part`` lies in the parabolic subgroup and ``rep`` is the minimal coset
    representative (``rep(alpha_j) > 0`` for ``j`` in the subset).  With
    ``side="left"`` returns ``(part, rep)`` with ``w = part * rep`` and
    ``rep^{-1}(alpha_j) > 0``.
    """
    if side == "left":
        rep, part = coset_decompose(rs, w.inverse, subset, "right")
        return part.inverse, rep.inverse
    npos = rs.num_positive
    u = w
    part = rs.identity
    while True:
        j = next((j for j in subset if u.perm[j] >= npos), None)
        if j is None:
            break
        s = rs.simple_reflection(j)
        u = u * s
        part = s * part
    assert u.length + part.length == w.length
    return u, part


if __name__ == "__main__":
    import doctest

    doctest.testmod()
