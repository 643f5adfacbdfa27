"""Randomised exact zero-testing of operators and the named identity suite.

An operator vanishes as a function iff each of its coefficients does.  The
coefficients are polynomials in wp, wp' (and zeta) of the differences, so
each is evaluated exactly at sampled group points of a backend.  One
nonzero value certifies failure; vanishing at every sample for several m
is accepted as the identity, with the parameter degree bounded by n + 2.
"""
from __future__ import annotations

import random
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Sequence

from ..cmbuild import CMSystem, complement, sum_partials
from ..errors import ContextMismatch, ZetaNotEvaluable
from ..opalg import DiffOp, ad_theta, op_commutator, op_mul
from ..ring import CoeffPoly, Q, fmt, poly_eval
from .backends import Backend, make_backend
from .report import Report

DEFAULT_M = ("2", "3/2", "-3/7")
DEFAULT_TRIALS = 5

Builder = Callable[..., List[DiffOp]]


def _components(obj) -> List[DiffOp]:
    if isinstance(obj, DiffOp):
        return [obj]
    if isinstance(obj, CoeffPoly):
        return [DiffOp.mult(obj.ctx, obj)]
    out = []
    for x in obj:
        out.extend(_components(x))
    return out


def _trial_rng(seed: int, mi: int, t: int) -> random.Random:
    return random.Random("%d:%d:%d" % (seed, mi, t))


def verify_zero(target, backend: Backend, m_values: Sequence = DEFAULT_M, trials: int = DEFAULT_TRIALS,
                seed: int = 0, name: str = "zero", n: int | None = None) -> Report:
    """Evaluate every coefficient of ``target`` at sampled points.

    ``target`` is an operator (or polynomial, or list of them) built for a
    fixed m, or a callable ``build(m, g2, g3)`` returning such objects, which
    is then rebuilt for each m in ``m_values`` over the backend's curve.
    """
    if callable(target):
        builds = [(Q(m), (lambda m=m: _components(target(Q(m), backend.g2, backend.g3))))
                  for m in m_values]
    else:
        fixed = _components(target)
        for op in fixed:
            if (op.ctx.g2, op.ctx.g3) != (backend.g2, backend.g3):
                raise ContextMismatch("operator built over (g2, g3) = (%s, %s), backend has (%s, %s)"
                                      % (fmt(op.ctx.g2), fmt(op.ctx.g3), fmt(backend.g2), fmt(backend.g3)))
        builds = [(None, lambda: fixed)]
    report = Report(name=name, n=0, m_values=[None if m is None else fmt(m) for m, _ in builds],
                    backend=backend.describe(), trials=trials, seed=seed)
    evals = 0
    for mi, (m, make) in enumerate(builds):
        ops = make()
        if not ops:
            continue
        nn = n if n is not None else ops[0].n
        report.n = nn
        if not backend.zeta and any(op.has_zeta() for op in ops):
            raise ZetaNotEvaluable("%s: zeta generators survive; backend %s cannot evaluate them"
                                   % (name, backend.name))
        for t in range(trials):
            A = backend.sample_assignment(nn, _trial_rng(seed, mi, t))
            vals = backend.values(A, nn)
            cache: Dict = {}
            for k, op in enumerate(ops):
                for alpha, c in op.sorted_terms():
                    v = poly_eval(c, vals, allow_zeta=backend.zeta, cache=cache)
                    evals += 1
                    if v:
                        report.status = "FAIL"
                        report.witness = {
                            "m": None if m is None else fmt(m), "trial": t, "assignment": A.to_json(),
                            "component": k, "d": list(alpha), "value": fmt(v),
                        }
                        report.evaluations = evals
                        return report
    report.evaluations = evals
    if not evals:
        report.details["syntactic_zero"] = True
    return report


# ---------------------------------------------------------------------------
# identity builders: (n, m, g2, g3, zeta_ok) -> list of operators that must vanish


def _full_minus(S: CMSystem, *drop) -> tuple:
    return complement(S.full, drop)


def build_integral(n, m, g2, g3, zeta_ok=False):
    S = CMSystem(n, m, g2, g3)
    return [op_commutator(S.I(), S.H())]


def build_tower(n, m, g2, g3, zeta_ok=False):
    """[L_k, L_l], [L_k, H] and [sum d_j, L_k] for all k < l < n."""
    S = CMSystem(n, m, g2, g3)
    L = S.tower()
    H = S.H()
    P = sum_partials(S.ctx)
    out = []
    for k in range(n):
        out.append(op_commutator(L[k], H))
        out.append(op_commutator(P, L[k]))
        for l in range(k + 1, n):
            out.append(op_commutator(L[k], L[l]))
    return out


def build_lemma2(n, m, g2, g3, zeta_ok=False):
    """Tail form of [I, H] for the ordinary system on {2..n}, and [I, H] itself."""
    if n < 3:
        raise ValueError("lemma2 needs n >= 3")
    S = CMSystem(n, m, g2, g3)
    rest = S.full[1:]
    H = S.H(rest)
    Xm = lambda A: DiffOp.mult(S.ctx, S.X_matching(A))
    tail = op_commutator(Xm(rest), H)
    for j in rest:
        V = CoeffPoly(S.ctx)
        for l in rest:
            if l != j:
                V = V + S.u(j, l)
        tail = tail + op_commutator(Xm(complement(rest, (j,))).rmul_partial(j),
                                    DiffOp.mult(S.ctx, V.scale(2)))
    for k, l in combinations(rest, 2):
        tail = tail + op_commutator(Xm(complement(rest, (k, l))).rmul_partial(k, l),
                                    DiffOp.mult(S.ctx, S.u(k, l).scale(2)))
    return [tail, op_commutator(S.I(rest), H)]


def build_lemma4(n, m, g2, g3, zeta_ok=False):
    S = CMSystem(n, m, g2, g3)
    m = S.m
    ctx = S.ctx
    U = lambda p: DiffOp.mult(ctx, p)
    js = S.full[1:]
    total = CoeffPoly(ctx)
    for j in js:
        total = total + S.u(1, j)
    out = op_commutator(S.theta(), U(total))
    for j in js:
        Tj = S.theta(_full_minus(S, j))
        out = out + op_commutator(Tj, U(S.u(1, j))).rmul_partial(1).scale(m)
        out = out - Tj.lmul(S.du1(j)).scale((1 + m) / 2)
        out = out - op_mul(Tj, U(S.du1(j))).scale((1 - m) / 2)
    for k in js:
        for l in js:
            if k != l:
                Tkl = S.theta(_full_minus(S, k, l))
                out = out + op_mul(op_commutator(Tkl, U(S.u(1, k))), U(S.u(1, l))).scale(m)
    return [out]


def _lemma5_rhs(S: CMSystem) -> DiffOp:
    m = S.m
    U = lambda p: DiffOp.mult(S.ctx, p)
    js = S.full[1:]
    out = DiffOp(S.ctx)
    acc = DiffOp(S.ctx)
    for k in js:
        c = op_commutator(U(S.u(1, k)), S.theta(_full_minus(S, k)))
        out = out + c.rmul_partial(k).scale(2)
        acc = acc + c
        out = out - op_commutator(U(S.du1(k)), S.theta(_full_minus(S, k))).scale(1 + m)
    out = out - acc.rmul_partial(1).scale(2 * m)
    for k in js:
        for l in js:
            if k != l:
                inner = op_commutator(U(S.u(1, l)), S.theta(_full_minus(S, k, l)))
                out = out + op_commutator(U(S.u(1, k)), inner).scale(m)
    return out


def build_lemma5(n, m, g2, g3, zeta_ok=False):
    S = CMSystem(n, m, g2, g3)
    lhs = op_commutator(S.laplacian(), S.theta())
    return [lhs - _lemma5_rhs(S)]


def build_theta_derivative(n, m, g2, g3, zeta_ok=False):
    """d Theta / d x_k = [u_1k, Theta without k] for k = 2..n."""
    S = CMSystem(n, m, g2, g3)
    th = S.theta()
    return [th.coeff_diff(k) - op_commutator(DiffOp.mult(S.ctx, S.u(1, k)), S.theta(_full_minus(S, k)))
            for k in S.full[1:]]


def lemma6_scalar(S: CMSystem, k: int, l: int, with_zeta: bool) -> CoeffPoly:
    """(zeta(x1-xl) - zeta(x1-xk)) wp'_kl - (wp_1k + wp_1l) wp_kl + wp_1k wp_1l, or its d/dx_1."""
    c = S.ctx
    wp, wp1 = CoeffPoly.wp, CoeffPoly.wp1
    if with_zeta:
        return ((CoeffPoly.zeta(c, 1, l) - CoeffPoly.zeta(c, 1, k)) * wp1(c, k, l)
                - (wp(c, 1, k) + wp(c, 1, l)) * wp(c, k, l) + wp(c, 1, k) * wp(c, 1, l))
    return ((wp(c, 1, k) - wp(c, 1, l)) * wp1(c, k, l) - (wp1(c, 1, k) + wp1(c, 1, l)) * wp(c, k, l)
            + wp1(c, 1, k) * wp(c, 1, l) + wp(c, 1, k) * wp1(c, 1, l))


def build_lemma6(n, m, g2, g3, zeta_ok=False):
    S = CMSystem(n, m, g2, g3)
    ctx = S.ctx
    U = lambda p: DiffOp.mult(ctx, p)
    js = S.full[1:]
    R = op_commutator(S.theta(), S.H())
    for j in js:
        V = CoeffPoly(ctx)
        for l in S.full:
            if l != j:
                V = V + S.u(j, l)
        R = R + op_commutator(S.theta(_full_minus(S, j)).rmul_partial(j), U(V.scale(2)))
    for k, l in combinations(js, 2):
        c = op_commutator(S.theta(_full_minus(S, k, l)), U((S.u(1, k) + S.u(1, l)).scale(2)))
        R = R + op_mul(c, U(S.u(k, l)))
    out = [R]
    for k, l in combinations(js, 2):
        out.append(U(lemma6_scalar(S, k, l, False)))
        if zeta_ok:
            out.append(U(lemma6_scalar(S, k, l, True)))
    return out


def build_theta3(n, m, g2, g3, zeta_ok=False):
    """Three-particle commutator formula, for every pair 2 <= k < l <= n."""
    if n < 3:
        raise ValueError("theta3 needs n >= 3")
    S = CMSystem(n, m, g2, g3)
    U = lambda p: DiffOp.mult(S.ctx, p)
    out = []
    for k, l in combinations(S.full[1:], 2):
        lhs = op_commutator(S.theta((1, k, l)), S.H((1, k, l)))
        rhs = -op_mul(op_commutator(DiffOp.partial(S.ctx, 1), U((S.u(1, k) + S.u(1, l)).scale(2))),
                      U(S.u(k, l)))
        rhs = rhs - op_commutator(S.theta((1, l)).rmul_partial(k), U((S.u(1, k) + S.u(k, l)).scale(2)))
        rhs = rhs - op_commutator(S.theta((1, k)).rmul_partial(l), U((S.u(1, l) + S.u(k, l)).scale(2)))
        out.append(lhs - rhs)
    return out


def addition_determinant(ctx, i, j, k) -> CoeffPoly:
    """det [[wp_ij, wp_jk, wp_ki], [wp'_ij, wp'_jk, wp'_ki], [1, 1, 1]]."""
    wp, wp1 = CoeffPoly.wp, CoeffPoly.wp1
    a = (wp(ctx, i, j), wp(ctx, j, k), wp(ctx, k, i))
    b = (wp1(ctx, i, j), wp1(ctx, j, k), wp1(ctx, k, i))
    return a[0] * (b[1] - b[2]) - a[1] * (b[0] - b[2]) + a[2] * (b[0] - b[1])


def build_addition(n, m, g2, g3, zeta_ok=False):
    S = CMSystem(n, m, g2, g3)
    return [DiffOp.mult(S.ctx, addition_determinant(S.ctx, i, j, k))
            for i, j, k in combinations(S.full, 3)]


def build_curve(n, m, g2, g3, zeta_ok=False):
    """wp'^2 - 4 wp^3 + g2 wp + g3 for every pair."""
    S = CMSystem(n, m, g2, g3)
    out = []
    for i, j in combinations(S.full, 2):
        w, w1 = CoeffPoly.wp(S.ctx, i, j), CoeffPoly.wp1(S.ctx, i, j)
        out.append(DiffOp.mult(S.ctx, w1 * w1 - w * w * w * 4 + w.scale(S.ctx.g2) + S.ctx.g3))
    return out


def build_htheta(n, m, g2, g3, zeta_ok=False):
    """[H, theta] - 2 sum d_j, taking [H, theta] = -[theta, H] literally."""
    S = CMSystem(n, m, g2, g3)
    return [-ad_theta(S.H(), S.m) - sum_partials(S.ctx).scale(2)]


def build_thetah(n, m, g2, g3, zeta_ok=False):
    """[theta, H] - 2 sum d_j."""
    S = CMSystem(n, m, g2, g3)
    return [ad_theta(S.H(), S.m) - sum_partials(S.ctx).scale(2)]


IDENTITIES: Dict[str, tuple] = {
    # name: (builder, minimum n)
    "integral": (build_integral, 2),
    "tower": (build_tower, 2),
    "lemma2": (build_lemma2, 3),
    "lemma4": (build_lemma4, 2),
    "lemma5": (build_lemma5, 2),
    "lemma6": (build_lemma6, 2),
    "theta_derivative": (build_theta_derivative, 2),
    "theta3": (build_theta3, 3),
    "addition": (build_addition, 3),
    "curve": (build_curve, 2),
    "htheta": (build_htheta, 1),
    "thetah": (build_thetah, 1),
}

LEMMA_SUITE = ("lemma2", "lemma4", "lemma5", "lemma6", "theta_derivative", "theta3", "addition", "htheta")


def check_identity(name: str, n: int, backend: Backend | str = "rational", m_values: Sequence = DEFAULT_M,
                   trials: int = DEFAULT_TRIALS, seed: int = 0) -> Report:
    try:
        builder, nmin = IDENTITIES[name]
    except KeyError:
        raise ValueError("unknown identity %r; known: %s" % (name, ", ".join(sorted(IDENTITIES))))
    if n < nmin:
        raise ValueError("%s needs n >= %d" % (name, nmin))
    if isinstance(backend, str):
        backend = make_backend(backend, seed)
    zeta_ok = backend.zeta
    rep = verify_zero(lambda m, g2, g3: builder(n, m, g2, g3, zeta_ok), backend, m_values, trials, seed,
                      name=name, n=n)
    return rep


def run_suite(names: Iterable[str], n: int, backend: Backend | str, m_values=DEFAULT_M,
              trials=DEFAULT_TRIALS, seed=0) -> List[Report]:
    return [check_identity(name, n, backend, m_values, trials, seed) for name in names]
