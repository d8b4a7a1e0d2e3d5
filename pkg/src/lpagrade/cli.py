"""Command-line front end.

Exit codes: 0 success, 1 domain error (LpaError), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence, Union

from . import __version__
from .algebra import LpaElement, grade_decompose, star
from .certificates import load_certificates, verify_all
from .core import embed_in_fd, fd_dimension, matrix_units, verify_embedding
from .errors import InvalidInput, LpaError
from .graph import Graph, LadderGraph, ladder_instantiate
from .groupoid import element_validate, factor_element
from .lasso import parse_infinite_path
from .lengths import ExhaustedProof, decide_property_y, decide_strongly_graded, property_y_witness
from .oracle import oracle_property_y
from .selftest import run_selftest
from .syntax import format_leg, parse_element, parse_graph
from .witness import NEG_POS, POS_NEG, NotFoundUpTo, factor_homogeneous, factor_local_unit

AnyGraph = Union[Graph, LadderGraph]


class Report:
    """A JSON payload plus its text rendering."""

    def __init__(self, payload: dict, lines: list[str]):
        self.payload = payload
        self.lines = lines

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.payload, indent=2, sort_keys=True)
        return "\n".join(self.lines)


def load_graph(args) -> AnyGraph:
    g = parse_graph(args.graph)
    truncate = getattr(args, "truncate", None)
    if truncate is not None:
        if not isinstance(g, LadderGraph):
            raise InvalidInput("--truncate applies to ladder graphs only")
        g = ladder_instantiate(g, truncate)
    return g


def finite_graph(args) -> Graph:
    g = load_graph(args)
    if isinstance(g, LadderGraph):
        raise InvalidInput("this command needs a finite graph; pass --truncate N for a ladder")
    return g


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> Report:
    g = load_graph(args)
    rep = decide_strongly_graded(g, args.allow_empty_prefix)
    payload = rep.to_json()
    if not isinstance(g, LadderGraph):
        payload["enumeration"] = list(g.enumeration)
    lines = [f"strongly_graded: {str(rep.strongly_graded).lower()}"] + [f"  {n}" for n in rep.explanation]
    return Report(payload, lines)


def cmd_nf(args) -> Report:
    g = finite_graph(args)
    x = parse_element(args.expr, g)
    return Report({"normal_form": str(x), "degrees": sorted(x.degrees())}, [str(x)])


def cmd_mul(args) -> Report:
    g = finite_graph(args)
    x = parse_element(args.lhs, g) * parse_element(args.rhs, g)
    return Report({"product": str(x), "degrees": sorted(x.degrees())}, [str(x)])


def cmd_star(args) -> Report:
    g = finite_graph(args)
    x = star(parse_element(args.expr, g))
    return Report({"star": str(x)}, [str(x)])


def cmd_grade(args) -> Report:
    g = finite_graph(args)
    comps = grade_decompose(parse_element(args.expr, g))
    payload = {"components": {str(d): str(c) for d, c in sorted(comps.items())}}
    lines = [f"degree {d}: {c}" for d, c in sorted(comps.items())] or ["0"]
    return Report(payload, lines)


def _outcome_report(out) -> Report:
    if isinstance(out, NotFoundUpTo):
        payload = {"found": False, **out.to_json()}
        return Report(payload, [f"no witness up to level {out.level}"] + [f"  {r}" for r in out.reasons])
    payload = {"found": True, **out.certificate()}
    lines = [f"target: {out.target}", f"split: {tuple(out.split)}", f"level: {out.level}"]
    lines += [f"  ({x}) * ({y})" for x, y in out.pairs]
    return Report(payload, lines)


def cmd_factor_unit(args) -> Report:
    g = load_graph(args)
    return _outcome_report(factor_local_unit(g, args.vertex, args.degree, args.direction, args.max_level))


def cmd_factor_homog(args) -> Report:
    g = finite_graph(args)
    x = parse_element(args.expr, g)
    if not x.is_homogeneous():
        raise InvalidInput("element is not homogeneous")
    n = next(iter(x.degrees()), args.degree)
    return _outcome_report(factor_homogeneous(g, x, (args.degree, n - args.degree), args.max_level))


def cmd_core_embed(args) -> Report:
    from .syntax import parse_raw

    g = finite_graph(args)
    emb = embed_in_fd(g, parse_raw(args.expr, g))
    ok = verify_embedding(emb, seed=args.seed)
    payload = {**emb.certificate(), "closure_verified": ok}
    lines = [
        f"element: {emb.element}",
        f"k={emb.k} J={emb.J} W={{{', '.join(emb.extra_vertices)}}} dimension={emb.dimension}",
        "coordinates: " + ", ".join(f"{c}*<{b}>" for c, b in zip(emb.coordinates, emb.basis) if c),
        f"closure verified: {str(ok).lower()}",
    ]
    return Report(payload, lines)


def cmd_fd_dim(args) -> Report:
    g = finite_graph(args)
    d = fd_dimension(g, args.k, args.J)
    return Report({"k": args.k, "J": args.J, "dimension": d}, [str(d)])


def cmd_matrix_units(args) -> Report:
    g = finite_graph(args)
    mus = matrix_units(g, args.k, args.J, args.vertex)
    lines = [f"size {mus.size} over {', '.join(format_leg(p) for p in mus.index) or '(none)'}",
             f"relations hold: {str(mus.ok).lower()}"] + mus.failures
    return Report(mus.to_json(), lines)


def cmd_property_y(args) -> Report:
    g = load_graph(args)
    if args.x is None:
        v = decide_property_y(g, args.allow_empty_prefix)
        payload = v.to_json()
        if not v.holds:
            payload["certificate"] = v.certificate()
            lines = [f"property (Y) fails at k={v.k} along {v.witness.to_text()} (checked n <= {v.bound})"]
        else:
            lines = [f"property (Y) holds ({v.criterion})"]
        return Report(payload, lines)
    if args.k is None:
        raise InvalidInput("-k is required with --x")
    x = parse_infinite_path(args.x, g)
    found = property_y_witness(g, x, args.k, args.allow_empty_prefix)
    if isinstance(found, ExhaustedProof):
        payload = {"found": False, "k": found.k, "bound": found.bound, "exact": found.exact, "x": x.to_text()}
        return Report(payload, [f"no initial segment up to n={found.bound} works for k={found.k}"])
    payload = {"found": True, "x": x.to_text(), "k": found.k, "n": found.n, "beta": format_leg(found.beta)}
    return Report(payload, [f"n={found.n} beta={format_leg(found.beta)}"])


def cmd_groupoid_factor(args) -> Report:
    g = load_graph(args)
    x = parse_infinite_path(args.x, g)
    y = parse_infinite_path(args.y, g) if args.y is not None else x
    h = element_validate(g, x, 0, y)
    res = factor_element(g, h, args.degree, args.allow_empty_prefix)
    payload = res.to_json()
    fmt = lambda e: f"({e.x.to_text()}, {e.k}, {e.y.to_text()})"  # noqa: E731
    lines = [f"element: {fmt(h)}", f"(+{args.degree},-{args.degree}): {fmt(res.pos_neg[0])} * {fmt(res.pos_neg[1])}"]
    if isinstance(res.neg_pos, ExhaustedProof):
        lines.append(f"(-{args.degree},+{args.degree}): none (checked n <= {res.neg_pos.bound})")
    else:
        lines.append(f"(-{args.degree},+{args.degree}): {fmt(res.neg_pos[0])} * {fmt(res.neg_pos[1])}")
    return Report(payload, lines)


def cmd_oracle_y(args) -> Report:
    g = parse_graph(args.graph)
    x = parse_infinite_path(args.x, g) if args.x is not None else None
    res = oracle_property_y(g, args.k or 3, truncate=args.truncate, x=x, allow_empty_prefix=args.allow_empty_prefix)
    bad = [r for r in res["checks"] if not r["agree"]]
    lines = [f"{res['count']} checks, {'all agree' if res['agree'] else f'{len(bad)} disagreements'}"]
    lines += [f"  DISAGREE x={r['x']} k={r['k']} brute={r['brute']} engine={r['engine']}" for r in bad]
    return Report(res, lines)


def cmd_selftest(args) -> Report:
    if args.verify:
        results = []
        for path in args.verify:
            with open(path, encoding="utf-8") as fh:
                try:
                    certs = load_certificates(fh.read())
                except ValueError as exc:
                    raise InvalidInput(f"{path}: not a certificate file ({exc})") from None
            results += [(path, ok, msg) for ok, msg in verify_all(certs)]
        payload = {"certificates": [{"file": p, "ok": ok, "detail": m} for p, ok, m in results],
                   "ok": all(ok for _, ok, _ in results)}
        lines = [f"{'PASS' if ok else 'FAIL'} {p}: {m}" for p, ok, m in results]
        return Report(payload, lines)
    results = run_selftest(args.seed)
    payload = {"seed": args.seed, "checks": [r.__dict__ for r in results], "ok": all(r.ok for r in results)}
    return Report(payload, [r.line() for r in results])


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lpagrade", description="Strong Z-gradings of Leavitt path algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, fn, help_, graph=True):
        sp = sub.add_parser(name, help=help_)
        if graph:
            sp.add_argument("--graph", required=True, metavar="PATH", help="graph JSON file or inline JSON")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--seed", type=int, default=0)
        sp.set_defaults(fn=fn)
        return sp

    def truncate(sp):
        sp.add_argument("--truncate", type=int, metavar="N", help="use the ladder truncation at depth N")

    sp = verb("analyze", cmd_analyze, "strong-grading verdict with evidence")
    sp.add_argument("--allow-empty-prefix", action="store_true")
    truncate(sp)
    for name, fn, help_ in (("nf", cmd_nf, "normal form"), ("star", cmd_star, "involution"),
                            ("grade", cmd_grade, "homogeneous components"),
                            ("core-embed", cmd_core_embed, "locate a degree-0 element in F_{k,J}")):
        sp = verb(name, fn, help_)
        sp.add_argument("--expr", required=True)
        truncate(sp)
    sp = verb("mul", cmd_mul, "product of two elements")
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    truncate(sp)

    sp = verb("factor-unit", cmd_factor_unit, "factor p_v through degrees (k,-k) or (-k,k)")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--direction", choices=[POS_NEG, NEG_POS], required=True)
    sp.add_argument("--max-level", type=int, default=10)
    truncate(sp)
    sp = verb("factor-homog", cmd_factor_homog, "factor a homogeneous element; --degree is the left factor's degree")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--max-level", type=int, default=10)
    truncate(sp)

    sp = verb("fd-dim", cmd_fd_dim, "dimension of F_{k,J}")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("-J", type=int, required=True)
    truncate(sp)
    sp = verb("matrix-units", cmd_matrix_units, "matrix units of G_{k,J}(v)")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("-J", type=int, required=True)
    sp.add_argument("--vertex", required=True)
    truncate(sp)

    sp = verb("property-y", cmd_property_y, "decide property (Y), or search one path with --x and -k")
    sp.add_argument("--x", metavar="LASSO")
    sp.add_argument("-k", type=int)
    sp.add_argument("--allow-empty-prefix", action="store_true")
    truncate(sp)
    sp = verb("groupoid-factor", cmd_groupoid_factor, "factor (x,0,y) in the boundary path groupoid")
    sp.add_argument("--x", required=True, metavar="LASSO")
    sp.add_argument("--y", metavar="LASSO")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--allow-empty-prefix", action="store_true")
    truncate(sp)
    sp = verb("oracle-y", cmd_oracle_y, "cross-check property (Y) against brute force")
    sp.add_argument("--x", metavar="LASSO")
    sp.add_argument("-k", type=int, help="largest k to check (default 3)")
    sp.add_argument("--truncate", type=int, metavar="N", help="brute-force depth for ladders")
    sp.add_argument("--allow-empty-prefix", action="store_true")

    sp = verb("selftest", cmd_selftest, "run the invariant suite or re-verify certificates", graph=False)
    sp.add_argument("--verify", nargs="+", metavar="FILE", help="certificate files to re-verify")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.fn(args)
    except LpaError as exc:
        msg = {"error": type(exc).__name__, "message": str(exc)}
        if getattr(args, "json", False):
            print(json.dumps(msg, indent=2, sort_keys=True))
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.render(args.json))
    if args.verb == "selftest" and not report.payload["ok"]:
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
