"""Command-line front end: one subcommand per operation, JSON in and out.

Exit status is 0 on success, 1 when the input is well formed but the
operation is undefined on it (e.g. an empty union, a tuple outside [V]),
and 2 for syntax errors.  Documents go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import codec
from .errors import DomainError, ParseError
from .homeo import compose, image_closed_union
from .hyperspace import (
    FiniteSet,
    bridge,
    canonical_rep,
    canonicalize,
    equiv_approx,
    equiv_sim,
    varrho,
)
from .order import Space, compare, parse_point, parse_rational, predecessor, successor
from .sequences import build_seq_homeo, verify_seq_map
from .vietoris import (
    Form,
    Kind,
    SaturatedBoxSpec,
    box_for_lower,
    box_for_upper,
    mem_lower,
    mem_upper,
    saturation_check,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _space(args) -> Optional[Space]:
    space = getattr(args, "space", None)
    return Space(space) if space else None


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ARROWHYP_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise ParseError(f"ARROWHYP_SEED is not an integer: {env!r}") from exc


def _point_or_null(p):
    return None if p is None else codec.point_doc(p)


def _is_set_doc(doc) -> bool:
    if isinstance(doc, dict):
        return "elements" in doc
    return isinstance(doc, list) and all(isinstance(p, str) for p in doc)


# -- handlers ---------------------------------------------------------------

def cmd_canon(args):
    return codec.union_to_json(canonicalize(codec.intervals_from_json(codec.load(args.intervals), _space(args))))


def cmd_rep(args):
    return codec.tuple_to_json(canonical_rep(codec.union_from_json(codec.load(args.union), _space(args)), args.m))


def cmd_varrho(args):
    return codec.union_to_json(varrho(codec.tuple_from_json(codec.load(args.tuple), _space(args))))


def _pair(args):
    x = codec.tuple_from_json(codec.load(args.x), _space(args))
    y = codec.tuple_from_json(codec.load(args.y), _space(args))
    return x, y


def cmd_equiv(args):
    return {"equiv": equiv_approx(*_pair(args))}


def cmd_simequiv(args):
    return {"equiv": equiv_sim(*_pair(args))}


def cmd_bridge(args):
    doc = codec.load(args.value)
    if _is_set_doc(doc):
        value = codec.set_from_json(doc, _space(args))
    else:
        value = codec.union_from_json(doc, _space(args))
    out = bridge(value)
    if isinstance(out, FiniteSet):
        return codec.set_to_json(out)
    return codec.union_to_json(out)


def cmd_member(args):
    F = codec.union_from_json(codec.load(args.union), _space(args))
    V = codec.open_set_from_json(codec.load_open(args.open), F.space)
    test = mem_lower if args.kind == Kind.LOWER.value else mem_upper
    return {"kind": args.kind, "member": test(F, V)}


def cmd_box(args):
    x = codec.tuple_from_json(codec.load(args.tuple), _space(args))
    V = codec.open_set_from_json(codec.load_open(args.open), x.space)
    if args.kind == Kind.LOWER.value:
        box = box_for_lower(x, V)
    else:
        box = box_for_upper(x, V)
    doc = codec.box_to_json(box)
    doc["kind"] = args.kind
    return doc


def cmd_check_saturated(args):
    spec = SaturatedBoxSpec(Form(args.form), parse_rational(args.r), args.m, args.coord)
    seed = _seed(args)
    rep = saturation_check(spec, args.trials, seed)
    return {
        "form": spec.form.value,
        "r": codec.format_rational(spec.r),
        "m": spec.m,
        "coord": spec.coord,
        "trials": rep.trials,
        "seed": seed,
        "violations": rep.violations,
        "saturated": rep.saturated,
        "witnesses": [[codec.tuple_to_json(x)["entries"], codec.tuple_to_json(y)["entries"]] for x, y in rep.witnesses],
    }


def _seqs(args):
    S = codec.seq_from_json(codec.load(args.source))
    T = codec.seq_from_json(codec.load(args.target))
    return S, T


def cmd_homeo_build(args):
    return codec.homeo_to_json(build_seq_homeo(*_seqs(args)))


def _homeo(arg):
    return codec.homeo_from_json(codec.load(arg))


def cmd_homeo_eval(args):
    h = _homeo(args.homeo)
    p = parse_point(args.point, h.space)
    return {"point": codec.point_doc(p), "image": codec.point_doc(h(p))}


def cmd_homeo_inverse(args):
    return codec.homeo_to_json(_homeo(args.homeo).inverse())


def cmd_homeo_compose(args):
    return codec.homeo_to_json(compose(_homeo(args.first), _homeo(args.second)))


def cmd_homeo_image(args):
    h = _homeo(args.homeo)
    F = codec.union_from_json(codec.load(args.union), h.space)
    return codec.union_to_json(image_closed_union(h, F))


def cmd_seq_map(args):
    S, T = _seqs(args)
    h = _homeo(args.homeo) if args.homeo else build_seq_homeo(S, T)
    rep = verify_seq_map(h, S, T, args.check)
    return {
        "checked": rep.checked,
        "mapped": rep.mapped,
        "limit_ok": rep.limit_ok,
        "misses": [[codec.point_doc(p), codec.point_doc(q)] for p, q in rep.misses],
        "ok": rep.ok,
    }


def cmd_succ(args):
    return {"point": _point_or_null(successor(parse_point(args.point, _space(args))))}


def cmd_pred(args):
    return {"point": _point_or_null(predecessor(parse_point(args.point, _space(args))))}


def cmd_cmp(args):
    return {"cmp": compare(parse_point(args.p, _space(args)), parse_point(args.q, _space(args)))}


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS so that an option given before the subcommand survives
    common.add_argument("--space", choices=[s.value for s in Space], default=argparse.SUPPRESS,
                        help="interpret untagged input in this space")
    common.add_argument("--output", choices=["json", "pretty"], default=argparse.SUPPRESS)

    parser = _Parser(prog="arrowhyp", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help, *positional):
        p = sub.add_parser(name, help=help, parents=[common])
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(fn=fn)
        return p

    add("canon", cmd_canon, "canonical form of a list of closed intervals", "intervals")
    add("rep", cmd_rep, "canonical 2m-tuple of a union", "union").add_argument("--m", type=int, required=True)
    add("varrho", cmd_varrho, "union of consecutive pairs of a tuple", "tuple")
    add("equiv", cmd_equiv, "do two tuples have the same union", "x", "y")
    add("simequiv", cmd_simequiv, "do two tuples have the same set of entries", "x", "y")
    add("bridge", cmd_bridge, "two-point set <-> one-interval union", "value")
    for name, fn, first, help in (
        ("member", cmd_member, "union", "subbasic membership of a union"),
        ("box", cmd_box, "tuple", "neighbourhood box around a tuple"),
    ):
        p = add(name, fn, help, first, "open")
        p.add_argument("--kind", choices=[k.value for k in Kind], required=True)

    p = add("check-saturated", cmd_check_saturated, "randomised saturation test for a clopen box")
    p.add_argument("--form", choices=[f.value for f in Form], required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--coord", type=int, default=0, help="coordinate used by --form projection")

    for name, fn, help in (
        ("homeo-build", cmd_homeo_build, "homeomorphism carrying one sequence onto another"),
        ("seq-map", cmd_seq_map, "check that a homeomorphism maps one sequence onto another"),
    ):
        p = add(name, fn, help)
        p.add_argument("--from", dest="source", required=True)
        p.add_argument("--to", dest="target", required=True)
    p.add_argument("--check", type=int, default=50)
    p.add_argument("--homeo", help="map to check instead of the constructed one")

    add("homeo-eval", cmd_homeo_eval, "image of a point", "homeo", "point")
    add("homeo-inverse", cmd_homeo_inverse, "inverse map", "homeo")
    add("homeo-compose", cmd_homeo_compose, "apply the first map, then the second", "first", "second")
    add("homeo-image", cmd_homeo_image, "image of a closed union", "homeo", "union")
    add("succ", cmd_succ, "immediate successor of a point", "point")
    add("pred", cmd_pred, "immediate predecessor of a point", "point")
    add("cmp", cmd_cmp, "compare two points", "p", "q")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        doc = args.fn(args)
    except ParseError as exc:
        print(json.dumps({"error": str(exc), "kind": "parse"}), file=stderr)
        return 2
    except (DomainError, ValueError, TypeError) as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}), file=stderr)
        return 1
    print(codec.dumps(doc, pretty=getattr(args, "output", "json") == "pretty"), file=stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
