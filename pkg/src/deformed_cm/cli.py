"""Command-line front end.

    deformed-cm gamma --k 4 --g2 1 --g3 1 [--json]
    deformed-cm build I --n 3 --m 2
    deformed-cm verify integral --n 4 --m 3/2 --backend elliptic --trials 5 --seed 7
    deformed-cm tower --n 3 --m 2
    deformed-cm lemma3 --k 7 --order 24

Reports go to stdout as one JSON object per line, diagnostics to stderr.
Exit status: 0 if everything passed, 1 if any check failed, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .cmbuild import CMSystem
from .errors import ZetaNotEvaluable
from .ring import Q, fmt
from .serialize import dumps, op_to_obj
from .series import gamma_table
from .verify.backends import BACKENDS, make_backend
from .verify.identities import DEFAULT_M, DEFAULT_TRIALS, IDENTITIES, check_identity
from .verify.lemma3 import DEFAULT_ORDER, laurent_K0, laurent_W, laurent_Y

ORDER_ENV = "DEFORMED_CM_ORDER"
OBJECTS = ("D", "theta", "X", "H", "I", "L")
SUITES = ("integral", "tower", "lemmas", "lemma3", "all")
LEMMAS = ("lemma2", "lemma4", "lemma5", "lemma6", "theta_derivative", "theta3", "addition", "curve")
TOWER_EXTRA = ("thetah",)
LEMMA3_Y = range(1, 9)
LEMMA3_W = range(5, 11)
LEMMA3_K0 = range(2, 7)


class UsageError(Exception):
    pass


def default_order() -> int:
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return DEFAULT_ORDER
    try:
        return int(raw)
    except ValueError:
        raise UsageError("%s must be an integer, got %r" % (ORDER_ENV, raw))


def _rational(text: str):
    try:
        return Q(text)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError("not a rational literal: %r" % text)


def _rational_list(text: str):
    return [_rational(t) for t in str(text).split(",") if t.strip()]


def _index_set(text: str):
    try:
        return tuple(int(t) for t in str(text).split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("not an index list: %r" % text)


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="JSON file whose keys mirror the command-line flags")
    common.add_argument("--output", "-o", default=argparse.SUPPRESS,
                        help="write results to this file instead of stdout")
    p = argparse.ArgumentParser(prog="deformed-cm", parents=[common],
                                description="Integrals of the deformed elliptic "
                                "Calogero-Moser system: construction and exact verification.")
    sub = p.add_subparsers(dest="command", required=True)
    add = sub.add_parser

    def sub_parser(name, **kw):
        return add(name, parents=[common], **kw)

    sub.add_parser = sub_parser

    g = sub.add_parser("gamma", help="Laurent coefficients gamma_2 .. gamma_2K of wp")
    g.add_argument("--k", type=int)
    g.add_argument("--g2", type=_rational)
    g.add_argument("--g3", type=_rational)
    g.add_argument("--json", action="store_true", default=None)

    b = sub.add_parser("build", help="dump an operator as canonical JSON")
    b.add_argument("object", choices=OBJECTS)
    b.add_argument("--n", type=int)
    b.add_argument("--m", type=_rational)
    b.add_argument("--k", type=int, help="power for D, tower index for L")
    b.add_argument("--set", type=_index_set, dest="subset", help="index set, e.g. 1,2,4")
    b.add_argument("--g2", type=_rational)
    b.add_argument("--g3", type=_rational)

    def verify_flags(q, with_suite):
        if with_suite:
            q.add_argument("suite", choices=SUITES)
        q.add_argument("--n", type=int)
        q.add_argument("--m", type=_rational_list, help="comma-separated m samples")
        q.add_argument("--backend", choices=BACKENDS + ("all",))
        q.add_argument("--trials", type=int)
        q.add_argument("--seed", type=int)
        q.add_argument("--order", type=int)
        q.add_argument("--k", type=int, help="lemma3: single index for Y_k / W_k")
        q.add_argument("--identity", choices=sorted(IDENTITIES), help="lemmas: run only this identity")

    verify_flags(sub.add_parser("verify", help="run a verification suite"), True)
    verify_flags(sub.add_parser("tower", help="same as 'verify tower'"), False)
    verify_flags(sub.add_parser("lemma3", help="same as 'verify lemma3'"), False)
    return p


DEFAULTS = {
    "k": None, "g2": "0", "g3": "0", "json": False, "n": 3, "m": None, "subset": None,
    "backend": "rational", "trials": DEFAULT_TRIALS, "seed": 0, "order": None, "identity": None,
}


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    cfg = {}
    args.config = getattr(args, "config", None)
    args.output = getattr(args, "output", None)
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, ValueError) as e:
            raise UsageError("cannot read config %s: %s" % (args.config, e))
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
    for key, fallback in DEFAULTS.items():
        if getattr(args, key, None) is None and hasattr(args, key):
            value = cfg.get(key, fallback)
            if key == "m" and isinstance(value, (str, int)) and value is not None:
                value = _rational_list(str(value)) if args.command != "build" else _rational(str(value))
            elif key == "m" and isinstance(value, list):
                value = [_rational(str(v)) for v in value]
            elif key in ("g2", "g3"):
                value = _rational(str(value))
            setattr(args, key, value)
    if args.output is None:
        args.output = cfg.get("output")
    if getattr(args, "order", "absent") is None:
        args.order = default_order()
    return args


# ---------------------------------------------------------------------------


def cmd_gamma(args, out) -> int:
    if args.k is None or args.k < 1:
        raise UsageError("--k must be a positive integer")
    table = gamma_table(args.k, args.g2, args.g3)
    if args.json:
        out.write(dumps({"g2": fmt(args.g2), "g3": fmt(args.g3),
                         "gamma": {str(2 * k): fmt(table[2 * k]) for k in range(1, args.k + 1)}}) + "\n")
    else:
        for k in range(1, args.k + 1):
            out.write("gamma_%d = %s\n" % (2 * k, fmt(table[2 * k])))
    return 0


def build_object(obj: str, n: int, m, k=None, subset=None, g2=0, g3=0):
    if n is None or n < 2:
        raise UsageError("--n must be >= 2")
    S = CMSystem(n, m, g2, g3)
    if obj == "D":
        if k is None or k < 0:
            raise UsageError("build D needs --k >= 0")
        return S.D(k)
    if obj == "L":
        if k is None or not 0 <= k < n:
            raise UsageError("build L needs 0 <= --k < n")
        if not S.m:
            raise UsageError("the tower needs m != 0")
        return S.tower()[k]
    target = subset if subset else None
    if obj == "theta":
        return S.theta(target)
    if obj == "X":
        return S.X(target)
    if obj == "H":
        return S.H(target)
    return S.I(target)


def cmd_build(args, out) -> int:
    m = args.m if args.m is not None else Q(2)
    try:
        op = build_object(args.object, args.n, m, args.k, args.subset, args.g2, args.g3)
    except ValueError as e:
        raise UsageError(str(e))
    out.write(dumps(op_to_obj(op, m)) + "\n")
    return 0


def _backends(name):
    return list(BACKENDS) if name == "all" else [name]


def _identity_runs(suite, args):
    if suite == "integral":
        return ["integral"]
    if suite == "tower":
        return ["tower"] + list(TOWER_EXTRA)
    if suite == "lemmas":
        names = [args.identity] if args.identity else list(LEMMAS)
        return [x for x in names if args.n >= IDENTITIES[x][1]]
    return []


def run_verify(suite: str, args, out) -> int:
    if args.n is None or args.n < 2:
        raise UsageError("--n must be >= 2")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    m_values = args.m if args.m else [Q(x) for x in DEFAULT_M]
    if any(not m for m in m_values):
        raise UsageError("m must be nonzero")
    suites = ("integral", "tower", "lemmas", "lemma3") if suite == "all" else (suite,)
    failed = 0
    for s in suites:
        if s == "lemma3":
            reports = lemma3_reports(args)
        else:
            reports = []
            for be_name in _backends(args.backend):
                backend = make_backend(be_name, args.seed)
                for name in _identity_runs(s, args):
                    reports.append(check_identity(name, args.n, backend, m_values, args.trials, args.seed))
        for r in reports:
            out.write(r.to_json() + "\n")
            out.flush()
            print(r.line(), file=sys.stderr)
            failed += not r.passed
    return 1 if failed else 0


def lemma3_reports(args):
    N = args.order
    seed = args.seed
    if args.k is not None:
        if args.k < 1:
            raise UsageError("--k must be >= 1")
        reps = [laurent_Y(args.k, N, seed=seed)]
        if args.k >= 5:
            reps.append(laurent_W(args.k, N, seed=seed))
        return reps
    reps = [laurent_Y(n, N, seed=seed) for n in LEMMA3_Y]
    reps += [laurent_W(k, N, seed=seed) for k in LEMMA3_W]
    reps += [laurent_K0(l, N, seed=seed) for l in LEMMA3_K0]
    return reps


def main(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    out = sys.stdout
    try:
        args = _merge_config(args)
        if args.output:
            out = open(args.output, "w")
        if args.command == "gamma":
            return cmd_gamma(args, out)
        if args.command == "build":
            return cmd_build(args, out)
        suite = args.suite if args.command == "verify" else args.command
        return run_verify(suite, args, out)
    except (UsageError, ZetaNotEvaluable, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
