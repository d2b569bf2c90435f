"""Command line front door: parse elements, run queries, emit JSON or DOT.

Exit codes: 0 for success or a true verdict, 1 for a false verdict or a
failed sweep, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .affine import AffineRoot, ExtAffElt, bruhat_leq_oracle, enumerate_ball, ext_elt
from .criteria import (
    bruhat_leq_thm1,
    bruhat_leq_thm2,
    default_deodhar_datum,
    deodhar_leq,
    in_admissible,
)
from .demazure import demazure_closed, minimal_pairs
from .errors import AffWeylError, ParseError, UnknownType
from .newton import (
    generic_newton_point,
    generic_newton_point_oracle,
    newton_point,
    sigma_flip,
    sigma_identity,
    x_infinity,
)
from .qbg import build_qbg, to_dot
from .rootsys import Coweight, RootSystem, build_root_system, coweight_from_coroot_coords
from .semiaffine import AffSubset

_INT = re.compile(r"[+-]?\d+")


def _skip_ws(s: str, i: int) -> int:
    while i < len(s) and s[i].isspace():
        i += 1
    return i


def _expect(s: str, i: int, token: str) -> int:
    i = _skip_ws(s, i)
    if not s.startswith(token, i):
        raise ParseError(f"expected {token!r}", i)
    return i + len(token)


def _parse_int_list(s: str, i: int, label: str) -> tuple[list[int], list[int], int]:
    i = _expect(s, i, label)
    i = _expect(s, i, ":")
    i = _expect(s, i, "[")
    values: list[int] = []
    positions: list[int] = []
    i = _skip_ws(s, i)
    if i < len(s) and s[i] == "]":
        return values, positions, i + 1
    while True:
        i = _skip_ws(s, i)
        m = _INT.match(s, i)
        if not m:
            raise ParseError("expected integer", i)
        values.append(int(m.group()))
        positions.append(i)
        i = _skip_ws(s, m.end())
        if i < len(s) and s[i] == ",":
            i += 1
            continue
        if i < len(s) and s[i] == "]":
            return values, positions, i + 1
        raise ParseError("expected ',' or ']'", i)


def parse_coweight(s: str, rs: RootSystem) -> Coweight:
    values, _, i = _parse_int_list(s, 0, "mu")
    i = _skip_ws(s, i)
    if i != len(s):
        raise ParseError("unexpected trailing input", i)
    if len(values) != rs.rank:
        raise ParseError(f"need {rs.rank} pairings, got {len(values)}", 0)
    return Coweight(tuple(values), "coweight")


def parse_element(s: str, rs: RootSystem) -> ExtAffElt:
    """Parse ``w:[i,...] mu:[m,...]`` with 1-based simple indices.

    >>> rs = build_root_system("A2")
    >>> parse_element("w:[1] mu:[2,-1]", rs)
    x(w[1], mu=[2, -1])
    """
    letters, marks, i = _parse_int_list(s, 0, "w")
    for v, pos in zip(letters, marks):
        if not 1 <= v <= rs.rank:
            raise ParseError(f"simple index {v} out of range 1..{rs.rank}", pos)
    mu, _, i = _parse_int_list(s, i, "mu")
    i = _skip_ws(s, i)
    if i != len(s):
        raise ParseError("unexpected trailing input", i)
    if len(mu) != rs.rank:
        raise ParseError(f"need {rs.rank} pairings, got {len(mu)}", 0)
    return ext_elt(rs.weyl_from_word(v - 1 for v in letters), tuple(mu))


def format_element(x: ExtAffElt) -> str:
    w = ",".join(str(i + 1) for i in x.w.word)
    mu = ",".join(str(v) for v in x.mu.pairings)
    return f"w:[{w}] mu:[{mu}]"


def element_json(x: ExtAffElt) -> dict:
    return {"w": [i + 1 for i in x.w.word], "mu": list(x.mu.pairings)}


def word_json(w) -> list[int]:
    return [i + 1 for i in w.word]


def parse_aff_subset(s: str, rs: RootSystem) -> AffSubset:
    """JSON list of (simple-root-index | "theta:<component>", level) pairs."""
    try:
        raw = json.loads(s)
    except json.JSONDecodeError as e:
        raise ParseError(f"bad subset literal: {e.msg}", e.pos)
    if not isinstance(raw, list):
        raise ParseError("subset must be a JSON list", 0)
    members = []
    for item in raw:
        if not isinstance(item, list) or len(item) != 2 or not isinstance(item[1], int):
            raise ParseError(f"bad subset entry {item!r}", 0)
        head, k = item
        if isinstance(head, int):
            if not 1 <= head <= rs.rank:
                raise ParseError(f"simple index {head} out of range 1..{rs.rank}", 0)
            members.append(AffineRoot(head - 1, k))
        elif isinstance(head, str) and head.startswith("theta:"):
            c = int(head.split(":", 1)[1])
            if not 1 <= c <= len(rs.highest_root):
                raise ParseError(f"component {c} out of range", 0)
            members.append(AffineRoot(rs.neg(rs.highest_root[c - 1]), k))
        else:
            raise ParseError(f"bad subset entry {item!r}", 0)
    return AffSubset(rs, members)


def _sigma_by_name(rs: RootSystem, name: str):
    if name == "id":
        return sigma_identity(rs)
    if name == "flip":
        return sigma_flip(rs)
    raise UnknownType(f"unknown automorphism {name!r}")


def _fractions(pairings) -> list[str]:
    return [str(v) for v in pairings]


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "table":
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, list):
                print(f"{key}:")
                for row in val:
                    print("  " + json.dumps(row, sort_keys=True))
            else:
                print(f"{key}\t{json.dumps(val, sort_keys=True)}")
    else:
        print(json.dumps(obj, sort_keys=True))


def _cmd_bruhat(args) -> int:
    rs = build_root_system(args.rs)
    x = parse_element(args.x, rs)
    y = parse_element(args.y, rs)
    if args.method == "oracle":
        verdict = bruhat_leq_oracle(x, y)
    elif args.method == "thm1":
        verdict = bruhat_leq_thm1(x, y)
    elif args.method == "deodhar":
        lefts = tuple(parse_aff_subset(s, rs) for s in args.left) or (AffSubset(rs, []),)
        rights = tuple(parse_aff_subset(s, rs) for s in args.right) or (AffSubset(rs, []),)
        verdict = deodhar_leq(x, y, default_deodhar_datum(x, lefts, rights))
    else:
        verdict = bruhat_leq_thm2(x, y)
    _emit(
        {
            "leq": verdict,
            "method": args.method,
            "rs": rs.label,
            "x": element_json(x),
            "y": element_json(y),
        },
        args.format,
    )
    return 0 if verdict else 1


def _cmd_demazure(args) -> int:
    rs = build_root_system(args.rs)
    x = parse_element(args.x, rs)
    y = parse_element(args.y, rs)
    prod = demazure_closed(x, y)
    mps = minimal_pairs(x, y)
    witnesses = sorted(
        [[word_json(v1), word_json(v2)] for v1, v2 in mps.pairs],
        key=lambda p: (p[0], p[1]),
    )
    _emit(
        {
            "length": prod.length,
            "min_distance": mps.min_distance,
            "product": element_json(prod),
            "rs": rs.label,
            "witnesses": witnesses,
            "x": element_json(x),
            "y": element_json(y),
        },
        args.format,
    )
    return 0


def _cmd_qbg(args) -> int:
    rs = build_root_system(args.rs)
    subset = []
    if args.subset:
        for part in args.subset.split(","):
            v = int(part)
            if not 1 <= v <= rs.rank:
                raise ParseError(f"simple index {v} out of range 1..{rs.rank}", 0)
            subset.append(v - 1)
    o = build_qbg(rs, subset)
    if args.format == "dot":
        sys.stdout.write(to_dot(o))
        return 0
    verts = list(o.vertices)
    edges = [
        {
            "from": word_json(e.src),
            "kind": e.kind,
            "to": word_json(e.dst),
            "via": e.via_root + 1,
            "weight": list(e.weight),
        }
        for bunch in o.edges
        for e in bunch
    ]
    table = [
        {
            "distance": o.distance(u, v),
            "from": word_json(u),
            "to": word_json(v),
            "weight": list(o.weight(u, v)),
        }
        for u in verts
        for v in verts
    ]
    _emit(
        {
            "edges": edges,
            "nodes": [word_json(w) for w in verts],
            "rs": rs.label,
            "subset": [i + 1 for i in sorted(subset)],
            "table": table,
        },
        args.format,
    )
    return 0


def _cmd_newton(args) -> int:
    rs = build_root_system(args.rs)
    x = parse_element(args.x, rs)
    sigma = _sigma_by_name(rs, args.sigma)
    if args.method == "xinf":
        nu = newton_point(x_infinity(x, sigma)[0], sigma)
    elif args.method == "oracle":
        nu = generic_newton_point_oracle(x, sigma)
    else:
        nu = generic_newton_point(x, sigma)
    _emit(
        {
            "method": args.method,
            "nu": _fractions(nu.nu.pairings),
            "rs": rs.label,
            "sigma": args.sigma,
            "x": element_json(x),
        },
        args.format,
    )
    return 0


def _cmd_adm(args) -> int:
    rs = build_root_system(args.rs)
    lam = parse_coweight(args.lam, rs)
    rows = [
        {"in": in_admissible(x, lam), "x": element_json(x)}
        for x in enumerate_ball(rs, args.max_length)
    ]
    _emit(
        {
            "lambda": list(lam.pairings),
            "max_length": args.max_length,
            "rs": rs.label,
            "table": rows,
        },
        args.format,
    )
    return 0


def run_sweep(config: dict) -> dict:
    suite = config.get("suite")
    rs = build_root_system(config.get("rs", "A2"))
    max_length = int(config.get("max_length", 0))
    max_mu = config.get("max_mu")
    budget = int(config.get("budget", 5_000_000))
    report = {
        "cases": 0,
        "max_length": max_length,
        "rs": rs.label,
        "suite": suite,
        "vacuous": False,
        "violations": [],
    }
    if suite == "bruhat-master":
        if max_length <= 0:
            report["vacuous"] = True
        else:
            ball = enumerate_ball(rs, max_length, max_mu, budget=budget)
            for x in ball:
                for y in ball:
                    want = bruhat_leq_oracle(x, y)
                    got1 = bruhat_leq_thm1(x, y)
                    got2 = bruhat_leq_thm2(x, y)
                    report["cases"] += 1
                    if not (want == got1 == got2):
                        report["violations"].append(
                            {
                                "oracle": want,
                                "thm1": got1,
                                "thm2": got2,
                                "x": format_element(x),
                                "y": format_element(y),
                            }
                        )
    elif suite == "qbg-weight2rho":
        o = build_qbg(rs)
        for u in rs.weyl_elements():
            for v in rs.weyl_elements():
                wt = coweight_from_coroot_coords(rs, o.weight(u, v))
                lhs = wt.pair_root_coords(rs.two_rho)
                rhs = o.distance(u, v) - v.length + u.length
                report["cases"] += 1
                if lhs != rhs:
                    report["violations"].append(
                        {"from": word_json(u), "lhs": str(lhs), "rhs": rhs, "to": word_json(v)}
                    )
    else:
        raise UnknownType(f"unknown sweep suite {suite!r}")
    report["pass"] = not report["violations"]
    return report


def _cmd_sweep(args) -> int:
    config: dict = {}
    if args.config:
        with open(args.config, "rb") as fh:
            config.update(tomllib.load(fh))
    if args.suite:
        config["suite"] = args.suite
    if args.rs:
        config["rs"] = args.rs
    if args.max_length is not None:
        config["max_length"] = args.max_length
    if args.max_mu is not None:
        config["max_mu"] = args.max_mu
    report = run_sweep(config)
    _emit(report, args.format)
    return 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="affweyl", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, fmt=("json", "table")):
        p.add_argument("--rs", required=True, help="root system label, e.g. A2 or B3xA1")
        p.add_argument("--format", choices=fmt, default="json")

    p = sub.add_parser("bruhat", help="order comparison of two elements")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--method", choices=("oracle", "thm1", "thm2", "deodhar"), default="thm2")
    p.add_argument("--left", action="append", default=[], help="deodhar: left subset family")
    p.add_argument("--right", action="append", default=[], help="deodhar: right subset family")
    p.set_defaults(func=_cmd_bruhat)

    p = sub.add_parser("demazure", help="closed Demazure product with witnesses")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=_cmd_demazure)

    p = sub.add_parser("qbg", help="quantum Bruhat graph tables or DOT export")
    common(p, fmt=("json", "table", "dot"))
    p.add_argument("--subset", default="", help="comma-separated 1-based simple indices")
    p.set_defaults(func=_cmd_qbg)

    p = sub.add_parser("newton", help="generic Newton point")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--sigma", choices=("id", "flip"), default="id")
    p.add_argument("--method", choices=("formula", "xinf", "oracle"), default="formula")
    p.set_defaults(func=_cmd_newton)

    p = sub.add_parser("adm", help="admissible-set membership table over a ball")
    common(p)
    p.add_argument("--lambda", dest="lam", required=True, help="dominant bound, mu:[...]")
    p.add_argument("--max-length", type=int, required=True)
    p.set_defaults(func=_cmd_adm)

    p = sub.add_parser("sweep", help="run a verification suite")
    p.add_argument("--config", help="TOML file with suite, rs, and budgets")
    p.add_argument("--suite")
    p.add_argument("--rs")
    p.add_argument("--max-length", type=int, dest="max_length")
    p.add_argument("--max-mu", type=int, dest="max_mu")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=_cmd_sweep)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e.args[0]} at position {e.position}", file=sys.stderr)
        return 2
    except (AffWeylError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
