"""Demazure products, their minimal witness pairs, and the induced actions.

The product of two elements is computed in closed form from a pair of
length positive elements minimizing a quantum Bruhat graph distance.  The
same minimization defines two actions on the finite Weyl group, rho and
rho_vee, which describe how length positive sets transform under the
product.
"""

from dataclasses import dataclass

from .affine import ExtAffElt, ext_elt, lp_ordered, reduced_word_aff
from .errors import UniquenessViolation
from .qbg import build_qbg
from .rootsys import Coweight, WeylElt, apply_weyl, coweight_from_coroot_coords


def transported_weight(x1: ExtAffElt, x2: ExtAffElt, v1: WeylElt, v2: WeylElt) -> Coweight:
    """The coroot correction v2 * wt(v1 => w2 v2) entering the closed form."""
    rs = x1.rs
    o = build_qbg(rs)
    wt = coweight_from_coroot_coords(rs, o.weight(v1, x2.w * v2))
    return apply_weyl(v2, wt)


def product_of_pair(x1: ExtAffElt, x2: ExtAffElt, v1: WeylElt, v2: WeylElt) -> ExtAffElt:
    """Closed-form candidate for x1 * x2 built from one witness pair."""
    mu = apply_weyl(v2 * v1.inverse, x1.mu) + x2.mu - transported_weight(x1, x2, v1, v2)
    return ext_elt(x1.w * v1 * v2.inverse, mu)


def _situation_parts(
    x1: ExtAffElt, x2: ExtAffElt, v1: WeylElt, v2: WeylElt
) -> tuple[ExtAffElt, ExtAffElt, ExtAffElt]:
    """Left factor, right factor, and candidate product for a witness pair.

    Only used by tests; the factors satisfy cand = left * x2 = x1 * right.
    """
    corr = transported_weight(x1, x2, v1, v2)
    w2v2 = x2.w * v2
    left = ext_elt(
        x1.w * v1 * w2v2.inverse,
        apply_weyl(w2v2 * v1.inverse, x1.mu) - apply_weyl(x2.w, corr),
    )
    right = ext_elt(v1 * v2.inverse, x2.mu - corr)
    cand = product_of_pair(x1, x2, v1, v2)
    assert cand == left * x2 == x1 * right
    return left, right, cand


def min_pair_distance(x1: ExtAffElt, x2: ExtAffElt) -> tuple[WeylElt, WeylElt, int]:
    """One distance-minimizing pair over LP(x1) x LP(x2), with the distance."""
    o = build_qbg(x1.rs)
    w2 = x2.w
    best = None
    for v1 in lp_ordered(x1):
        for v2 in lp_ordered(x2):
            d = o.distance(v1, w2 * v2)
            if best is None or d < best[2]:
                best = (v1, v2, d)
    assert best is not None
    return best


def demazure_closed(x1: ExtAffElt, x2: ExtAffElt) -> ExtAffElt:
    """Demazure product by the closed formula, with certified length.

    >>> from .affine import from_weyl
    >>> from .rootsys import build_root_system
    >>> rs = build_root_system("A1")
    >>> s = from_weyl(rs.simple_reflection(0))
    >>> demazure_closed(s, s) == s
    True
    """
    v1, v2, d = min_pair_distance(x1, x2)
    prod = product_of_pair(x1, x2, v1, v2)
    assert prod.length == x1.length + x2.length - d
    assert v2 in lp_ordered(prod)
    return prod


@dataclass(frozen=True)
class MinimalPairSet:
    pairs: tuple
    min_distance: int


def minimal_pairs(x1: ExtAffElt, x2: ExtAffElt) -> MinimalPairSet:
    """All distance-minimizing pairs, audited against their contracts."""
    rs = x1.rs
    o = build_qbg(rs)
    w2 = x2.w
    dist = {
        (v1, v2): o.distance(v1, w2 * v2)
        for v1 in lp_ordered(x1)
        for v2 in lp_ordered(x2)
    }
    best = min(dist.values())
    pairs = tuple(p for p, d in dist.items() if d == best)
    assert len({v1 * v2.inverse for v1, v2 in pairs}) == 1
    assert len({transported_weight(x1, x2, v1, v2) for v1, v2 in pairs}) == 1
    products = {product_of_pair(x1, x2, v1, v2) for v1, v2 in pairs}
    assert len(products) == 1
    seconds = [v2 for _, v2 in pairs]
    assert len(set(seconds)) == len(seconds)
    assert set(seconds) == set(lp_ordered(next(iter(products))))
    for v1, v2 in pairs:
        assert v1 == rho_vee(x1, w2 * v2)
        assert v2 == rho(x2, v1)
    return MinimalPairSet(pairs, best)


def _unique_argmin(candidates, key, context: str) -> WeylElt:
    best = None
    args: list[WeylElt] = []
    for v in candidates:
        d = key(v)
        if best is None or d < best:
            best, args = d, [v]
        elif d == best:
            args.append(v)
    if len(args) != 1:
        raise UniquenessViolation(f"{len(args)} minimizers for {context}")
    return args[0]


def rho_vee(x: ExtAffElt, u: WeylElt) -> WeylElt:
    """The unique length positive v for x minimizing the distance v => u.

    >>> from .affine import translation
    >>> from .rootsys import build_root_system
    >>> rs = build_root_system("A2")
    >>> w0 = rs.longest_element()
    >>> rho_vee(translation(rs, (0, 0)), w0) == w0
    True
    """
    o = build_qbg(x.rs)
    return _unique_argmin(lp_ordered(x), lambda v: o.distance(v, u), "rho_vee")


def rho(x: ExtAffElt, u: WeylElt) -> WeylElt:
    """The unique length positive v for x minimizing the distance u => wv."""
    rs = x.rs
    o = build_qbg(rs)
    w = x.w
    v = _unique_argmin(lp_ordered(x), lambda c: o.distance(u, w * c), "rho")
    w0 = rs.longest_element()
    assert v == w.inverse * rho_vee(x.inverse, u * w0) * w0
    return v


def rho_via_word(x: ExtAffElt, u: WeylElt) -> WeylElt:
    """Fold rho over a reduced word of x, one simple affine letter at a time.

    >>> from .affine import translation
    >>> from .rootsys import build_root_system
    >>> rs = build_root_system("A2")
    >>> w0 = rs.longest_element()
    >>> rho_via_word(translation(rs, (0, 0)), w0) == w0
    True
    """
    rs = x.rs
    omega, word = reduced_word_aff(x)
    v = omega.w.inverse * u
    for a in word:
        if not rs.is_positive(v.inv_perm[a.root]):
            v = rs.reflection(a.root) * v
    return v


if __name__ == "__main__":
    import doctest

    doctest.testmod()
