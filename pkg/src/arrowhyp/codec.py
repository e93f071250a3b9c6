"""JSON documents for every value the CLI reads or writes.

Rationals are always ``"p/q"`` strings and double-arrow points ``"p/q|b"``;
no floats appear anywhere.  Homeomorphisms with tails are infinite objects,
so their documents carry a ``recipe`` (the construction that produced them)
from which the decoder rebuilds the map exactly; ``pieces`` and ``tail``
describe the finite part and the accumulation points for human readers.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .errors import ParseError
from .homeo import AffinePiece, PiecewiseHomeo, cell, cell_ends, compose
from .hyperspace import ClosedUnion, DeltaTuple, FiniteSet, canonicalize, delta_tuple, finite_set
from .order import (
    ARROW,
    ClosedInterval,
    OpenSet,
    Point,
    Space,
    format_piece,
    format_point,
    format_rational,
    parse_piece,
    parse_point,
    parse_rational,
)
from .sequences import ConvergentSeq, build_seq_homeo, build_to_canonical


def load(arg: str):
    """A JSON value from a file path or an inline literal."""
    text = arg
    if arg.lstrip()[:1] not in ('[', '{', '"'):
        try:
            path = Path(arg)
            if path.is_file():
                text = path.read_text()
        except OSError:
            pass
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {arg[:60]!r}: {exc}") from exc


def dumps(doc, pretty: bool = False) -> str:
    return json.dumps(doc, indent=2 if pretty else None, sort_keys=False)


def _space(doc, default: Optional[Space] = None) -> Optional[Space]:
    tag = doc.get("tag") if isinstance(doc, dict) else None
    if tag is None:
        return default
    try:
        return Space(tag)
    except ValueError as exc:
        raise ParseError(f"unknown space tag {tag!r}") from exc


def _field(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}")
    return doc[key]


def point_doc(p: Point) -> str:
    return format_point(p)


def space_tag(space: Space) -> str:
    return space.value


# -- unions, tuples, sets ---------------------------------------------------

def intervals_from_json(doc, space: Optional[Space] = None) -> list:
    """Intervals from ``[["lo","hi"], ...]`` or a union document."""
    if isinstance(doc, dict):
        space = _space(doc, space)
        doc = _field(doc, "components")
    if not isinstance(doc, list):
        raise ParseError("expected a list of [lo, hi] pairs")
    out = []
    for pair in doc:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ParseError(f"expected [lo, hi], got {pair!r}")
        out.append(ClosedInterval(parse_point(pair[0], space), parse_point(pair[1], space)))
    return out


def union_to_json(u: ClosedUnion) -> dict:
    return {"tag": u.space.value, "components": [[point_doc(c.lo), point_doc(c.hi)] for c in u.components]}


def union_from_json(doc, space: Optional[Space] = None) -> ClosedUnion:
    """Parse a union and check that it is already canonical."""
    raw = intervals_from_json(doc, space)
    u = canonicalize(raw)
    if list(u.components) != raw:
        raise ParseError("union document is not in canonical form; use canon first")
    return u


def tuple_to_json(x: DeltaTuple) -> dict:
    return {"tag": x.space.value, "entries": [point_doc(p) for p in x]}


def tuple_from_json(doc, space: Optional[Space] = None) -> DeltaTuple:
    if isinstance(doc, dict):
        space = _space(doc, space)
        doc = _field(doc, "entries")
    if not isinstance(doc, list):
        raise ParseError("expected a list of points")
    return delta_tuple([parse_point(p, space) for p in doc])


def set_to_json(s: FiniteSet) -> dict:
    return {"tag": s.space.value, "elements": [point_doc(p) for p in s]}


def set_from_json(doc, space: Optional[Space] = None) -> FiniteSet:
    if isinstance(doc, dict):
        space = _space(doc, space)
        doc = _field(doc, "elements")
    return finite_set(parse_point(p, space) for p in doc)


def load_open(arg: str):
    """Like :func:`load`, but a bare piece such as ``(1/3|0,+inf)`` or ``[0,1/2)`` is accepted too."""
    try:
        return load(arg)
    except ParseError:
        if arg.strip()[:1] in ("(", "["):
            return arg.strip()
        raise


def open_set_to_json(v: OpenSet) -> dict:
    return {"tag": v.space.value, "pieces": [format_piece(p) for p in v.pieces]}


def open_set_from_json(doc, space: Optional[Space] = None) -> OpenSet:
    if isinstance(doc, str):
        doc = [doc]
    if isinstance(doc, dict):
        space = _space(doc, space)
        doc = _field(doc, "pieces")
    pieces = [parse_piece(s, space) for s in doc]
    if not pieces:
        raise ParseError("open set needs at least one piece")
    return OpenSet(pieces[0].space, pieces)


def box_to_json(box) -> dict:
    return {"tag": box.space.value, "factors": [format_piece(f) for f in box.factors]}


# -- sequences ----------------------------------------------------------------

def seq_to_json(s: ConvergentSeq) -> dict:
    tail = {
        "family": "geometric",
        "base": format_rational(s.base),
        "scale": format_rational(s.scale),
        "ratio": format_rational(s.ratio),
    }
    if s.space is ARROW:
        tail["side"] = s.side
    return {
        "tag": s.space.value,
        "limit": point_doc(s.limit),
        "exceptional": [point_doc(p) for p in s.exceptional],
        "tail": tail,
    }


def seq_from_json(doc) -> ConvergentSeq:
    space = _space(doc)
    if space is None:
        raise ParseError("sequence document needs a tag")
    tail = _field(doc, "tail")
    if tail.get("family", "geometric") != "geometric":
        raise ParseError(f"unsupported tail family {tail.get('family')!r}")
    side = int(tail.get("side", 1))
    return ConvergentSeq(
        space,
        parse_point(_field(doc, "limit"), space),
        tuple(parse_point(p, space) for p in doc.get("exceptional", [])),
        parse_rational(_field(tail, "base")),
        parse_rational(_field(tail, "scale")),
        parse_rational(_field(tail, "ratio")),
        side,
    )


# -- homeomorphisms -------------------------------------------------------------

def _cell_text(space: Space, rng) -> str:
    u, v = cell_ends(rng)
    if space is ARROW:
        return f"[{format_rational(u)}|1,{format_rational(v)}|0]"
    return f"[{format_rational(u)},{format_rational(v)})"


def _cell_from_text(space: Space, text: str):
    t = text.strip()
    if space is ARROW:
        iv = ClosedInterval(*(parse_point(s, ARROW) for s in t[1:-1].split(",")))
        if iv.lo.side != 1 or iv.hi.side != 0 or not (t[0], t[-1]) == ("[", "]"):
            raise ParseError(f"piece source {text!r} is not a clopen interval")
        u, v = iv.lo.coord, iv.hi.coord
    else:
        if (t[0], t[-1]) != ("[", ")"):
            raise ParseError(f"Sorgenfrey piece source must look like [u,v): {text!r}")
        u, v = (parse_rational(s) for s in t[1:-1].split(","))
    return cell(u, v)


def piece_to_json(space: Space, p: AffinePiece) -> dict:
    return {"source": _cell_text(space, p.source), "slope": format_rational(p.slope), "offset": format_rational(p.offset)}


def piece_from_json(space: Space, doc) -> AffinePiece:
    return AffinePiece(_cell_from_text(space, _field(doc, "source")),
                       parse_rational(_field(doc, "slope")), parse_rational(_field(doc, "offset")))


def _recipe(h: PiecewiseHomeo) -> dict:
    origin = h.origin
    if not h.tails or origin is None:
        return {"op": "pieces", "pieces": [piece_to_json(h.space, p) for p in h.pieces]}
    kind = origin[0]
    if kind == "canonical":
        return {"op": "canonical", "seq": seq_to_json(origin[1])}
    if kind == "seq":
        return {"op": "seq", "from": seq_to_json(origin[1]), "to": seq_to_json(origin[2])}
    if kind == "inverse":
        return {"op": "inverse", "of": _recipe(origin[1])}
    if kind == "compose":
        return {"op": "compose", "first": _recipe(origin[1]), "second": _recipe(origin[2])}
    raise ValueError(f"cannot serialize homeomorphism of origin {kind!r}")


def _tail_doc(t) -> dict:
    info = t.info
    return {
        "limit": point_doc(t.limit),
        "image_limit": point_doc(t.image_limit),
        "cut_rule": info.get("cut_rule", "inherited from the composed maps"),
        "family": info.get("kind", "composite"),
    }


def homeo_to_json(h: PiecewiseHomeo) -> dict:
    tails = [_tail_doc(t) for t in h.tails]
    doc = {
        "tag": h.space.value,
        "pieces": [piece_to_json(h.space, p) for p in h.pieces],
        "tail": None if not tails else tails[0] if len(tails) == 1 else tails,
    }
    if h.tails:
        doc["recipe"] = _recipe(h)
    return doc


def _from_recipe(space: Space, r) -> PiecewiseHomeo:
    op = _field(r, "op")
    if op == "pieces":
        return PiecewiseHomeo(space, tuple(piece_from_json(space, p) for p in _field(r, "pieces")))
    if op == "canonical":
        return build_to_canonical(seq_from_json(_field(r, "seq")))
    if op == "seq":
        return build_seq_homeo(seq_from_json(_field(r, "from")), seq_from_json(_field(r, "to")))
    if op == "inverse":
        return _from_recipe(space, _field(r, "of")).inverse()
    if op == "compose":
        return compose(_from_recipe(space, _field(r, "first")), _from_recipe(space, _field(r, "second")))
    raise ParseError(f"unknown recipe op {op!r}")


def homeo_from_json(doc) -> PiecewiseHomeo:
    space = _space(doc)
    if space is None:
        raise ParseError("homeomorphism document needs a tag")
    if "recipe" in doc:
        return _from_recipe(space, doc["recipe"])
    if doc.get("tail"):
        raise ParseError("a homeomorphism with a tail needs its recipe")
    return PiecewiseHomeo(space, tuple(piece_from_json(space, p) for p in _field(doc, "pieces")))
