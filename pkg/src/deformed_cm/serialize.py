"""Canonical JSON for operators and coefficient polynomials.

    {"n": 3, "m": "2/1",
     "terms": [{"d": [1, 0, 0],
                "coeff": [{"c": "3/1", "mon": [{"pair": [1, 2], "kind": "P", "exp": 1}]}]}]}

Terms are sorted by multi-index and monomials by (i, j, kind); rationals are
always "p/q" strings.  Dumping is byte-deterministic.
"""
from __future__ import annotations

import json
from typing import Optional

from .opalg import DiffOp
from .ring import KINDS, CoeffPoly, Q, RingContext, fmt, iter_monomial


def poly_to_obj(p: CoeffPoly) -> list:
    out = []
    for mono, c in p.sorted_terms():
        out.append({"c": fmt(c),
                    "mon": [{"pair": [g.i, g.j], "kind": g.kind, "exp": e}
                            for g, e in iter_monomial(p.ctx, mono)]})
    return out


def poly_from_obj(ctx: RingContext, items) -> CoeffPoly:
    terms = {}
    for item in items:
        mono = [0] * ctx.ngen
        for f in item["mon"]:
            i, j = f["pair"]
            if f["kind"] not in KINDS:
                raise ValueError("unknown generator kind %r" % f["kind"])
            mono[ctx.gen_id(i, j, f["kind"])] += int(f["exp"])
        key = tuple(mono)
        terms[key] = terms.get(key, Q(0)) + Q(item["c"])
    return CoeffPoly(ctx, terms)


def op_to_obj(op: DiffOp, m=None) -> dict:
    return {
        "n": op.n,
        "m": None if m is None else fmt(m),
        "terms": [{"d": list(alpha), "coeff": poly_to_obj(c)} for alpha, c in op.sorted_terms()],
    }


def op_from_obj(obj: dict, g2=0, g3=0) -> DiffOp:
    ctx = RingContext(int(obj["n"]), g2, g3)
    terms = {}
    for t in obj["terms"]:
        terms[tuple(int(a) for a in t["d"])] = poly_from_obj(ctx, t["coeff"])
    return DiffOp(ctx, terms)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def op_dumps(op: DiffOp, m=None) -> str:
    return dumps(op_to_obj(op, m))


def op_loads(text: str, g2=0, g3=0) -> DiffOp:
    return op_from_obj(json.loads(text), g2, g3)
