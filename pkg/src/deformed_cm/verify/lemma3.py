"""Univariate identities in d = d/dz checked on truncated Laurent series.

Operators here act on functions of z = x_1 - x_i only; coefficients are
:class:`LaurentSeries`.  Each coefficient of the identities below is a
polynomial in wp and its derivatives, hence elliptic, so a coefficient whose
retained expansion vanishes (principal part and constant term included)
vanishes identically.
"""
from __future__ import annotations

import random
from math import comb, factorial
from typing import Dict, Iterable, List, Sequence, Tuple

from gmpy2 import mpq

from ..cmbuild import ConstantTable
from ..errors import TruncationError
from ..ring import Q, fmt
from ..series import LaurentSeries, gamma_table, wp_series, zeta_series
from .report import Report

DEFAULT_ORDER = 24


class LaurentOp:
    """sum_k c_k(z) d^k with Laurent-series coefficients (coefficients on the left)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[int, LaurentSeries] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items()
                      if not (v.order is None and v.is_zero())}

    @classmethod
    def d(cls, k: int, c=1):
        return cls({k: LaurentSeries.constant(c)})

    @classmethod
    def mult(cls, f: LaurentSeries):
        return cls({0: f})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return LaurentOp(out)

    def __neg__(self):
        return LaurentOp({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return LaurentOp({k: v.scale(c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentOp):
            return self.scale(other)
        out: Dict[int, LaurentSeries] = {}
        for a, f in self.terms.items():
            for b, g in other.terms.items():
                for mu in range(a + 1):
                    t = f * g.diff(mu) if mu else f * g
                    if mu:
                        t = t.scale(comb(a, mu))
                    k = a - mu + b
                    out[k] = out[k] + t if k in out else t
        return LaurentOp(out)

    def rmul_d(self, times: int = 1):
        return LaurentOp({k + times: v for k, v in self.terms.items()})

    def order(self):
        return max(self.terms, default=-1)


def commutator(A: LaurentOp, B: LaurentOp) -> LaurentOp:
    return A * B - B * A


class LaurentContext:
    """wp, wp' and zeta to a common order for one curve."""

    def __init__(self, N: int, g2, g3, gamma=None):
        K = max(N // 2 + 2, 4)
        self.N = N
        self.g2, self.g3 = Q(g2), Q(g3)
        self.gamma = gamma if gamma is not None else gamma_table(K, g2, g3)
        self.wp = wp_series(N, self.gamma)
        self.zeta = zeta_series(N, self.gamma)
        self.wp1 = self.wp.diff()

    def D(self, k: int, table: ConstantTable) -> LaurentOp:
        if k == 0:
            return LaurentOp.d(0)
        out = LaurentOp.d(k, table.p0_at(k))
        for i in range(2, k // 2 + 1):
            c = table.p_at(2 * i, k)
            if c:
                out = out + LaurentOp.d(k - 2 * i, c)
        return out


def build_Y(n: int, m, L: LaurentContext, table: ConstantTable) -> LaurentOp:
    """[D^n, wp] + (1+m)[[zeta, D^(n-1)], wp] + m[D^(n-1), wp] d
    - (1+m)/2 wp' D^(n-1) - (1-m)/2 D^(n-1) wp'."""
    if n < 1:
        raise ValueError("Y_n needs n >= 1")
    m = Q(m)
    W = LaurentOp.mult(L.wp)
    W1 = LaurentOp.mult(L.wp1)
    Zt = LaurentOp.mult(L.zeta)
    Dn, Dm = L.D(n, table), L.D(n - 1, table)
    out = commutator(Dn, W)
    out = out + commutator(commutator(Zt, Dm), W).scale(1 + m)
    out = out + commutator(Dm, W).rmul_d().scale(m)
    out = out - (W1 * Dm).scale((1 + m) / 2)
    out = out - (Dm * W1).scale((1 - m) / 2)
    return out


def build_W(k: int, m, L: LaurentContext) -> LaurentOp:
    """W_k: the p_{0,k-1}-normalised leading part of Y_k."""
    if k < 5:
        raise ValueError("W_k needs k >= 5")
    m = Q(m)
    W = LaurentOp.mult(L.wp)
    W1 = LaurentOp.mult(L.wp1)
    Zt = LaurentOp.mult(L.zeta)
    dk1 = LaurentOp.d(k - 1)
    out = commutator(LaurentOp.d(k, (1 - m * (k - 1)) / mpq(k)), W)
    out = out + commutator(commutator(Zt, dk1), W).scale(1 + m)
    out = out + commutator(dk1, W).rmul_d().scale(m)
    out = out - (W1 * dk1).scale((1 + m) / 2)
    out = out - (dk1 * W1).scale((1 - m) / 2)
    for i in range(2, (k - 1) // 2 + 1):
        c = factorial(2 * i - 2) * comb(k - 1, k - 2 * i) * L.gamma[2 * i - 2]
        out = out - commutator(LaurentOp.d(k - 2 * i, c), W).scale(1 + m)
    return out


def K0(l: int, L: LaurentContext) -> LaurentSeries:
    """wp^(2l)/(2l(2l-1)) - (wp' wp^(2l-3) + wp wp^(2l-2))
    + sum_{j=2}^{l-1} (2l-2)!/(2l-2j)! gamma_{2j-2} wp^(2l-2j)."""
    if l < 2:
        raise ValueError("K0 needs l >= 2")
    w = L.wp
    out = w.diff(2 * l).scale(mpq(1, 2 * l * (2 * l - 1)))
    out = out - (L.wp1 * w.diff(2 * l - 3) + w * w.diff(2 * l - 2))
    for j in range(2, l):
        c = mpq(factorial(2 * l - 2), factorial(2 * l - 2 * j)) * L.gamma[2 * j - 2]
        out = out + w.diff(2 * l - 2 * j).scale(c)
    return out


def _first_nonzero(series: LaurentSeries):
    """(exponent, value) of the first retained nonzero coefficient, or None.

    The retained window must reach z^0 so that principal part and constant
    term are both decided.
    """
    if series.order is not None and series.order <= 0:
        raise TruncationError("coefficient known only below z^%d; need z^0" % series.order)
    for e in series.known_exponents():
        if series[e]:
            return e, series[e]
    return None


def op_witness(T: LaurentOp):
    for k in sorted(T.terms):
        hit = _first_nonzero(T.terms[k])
        if hit is not None:
            return {"d": k, "z": hit[0], "value": fmt(hit[1])}
    return None


def laurent_samples(count: int, seed: int) -> List[Tuple]:
    """Random nonsingular (m, g2, g3) with m outside {0, -1}."""
    rng = random.Random("laurent:%d" % seed)
    out = []
    while len(out) < count:
        m = mpq(rng.randint(-9, 9), rng.randint(1, 5))
        g2 = mpq(rng.randint(-9, 9), rng.randint(1, 4))
        g3 = mpq(rng.randint(-9, 9), rng.randint(1, 4))
        if m in (0, -1) or g2 ** 3 == 27 * g3 ** 2:
            continue
        out.append((m, g2, g3))
    return out


def _run(name, idx, builder, N, samples, seed) -> Report:
    rep = Report(name=name, n=idx, m_values=[fmt(s[0]) for s in samples],
                 backend={"name": "laurent", "order": N,
                          "curves": [[fmt(s[1]), fmt(s[2])] for s in samples]},
                 trials=len(samples), seed=seed)
    for t, (m, g2, g3) in enumerate(samples):
        T = builder(m, g2, g3)
        rep.evaluations += len(T.terms)
        orders = [s.order for s in T.terms.values() if s.order is not None]
        if orders:
            low = min(orders)
            rep.details["min_order"] = min(low, rep.details.get("min_order", low))
        w = op_witness(T)
        if w is not None:
            w.update({"m": fmt(m), "g2": fmt(g2), "g3": fmt(g3), "trial": t})
            rep.status, rep.witness = "FAIL", w
            break
    return rep


def _resolve_samples(m, g2, g3, samples, seed):
    if samples is not None:
        return [tuple(map(Q, s)) for s in samples]
    if m is not None:
        return [(Q(m), Q(g2 or 0), Q(g3 or 0))]
    return laurent_samples(3, seed)


def _context(N, g2, g3, gamma_hook):
    if gamma_hook is None:
        return LaurentContext(N, g2, g3)
    base = gamma_table(max(N // 2 + 2, 4), g2, g3)
    return LaurentContext(N, g2, g3, gamma=gamma_hook(base))


def laurent_Y(n: int, N: int = DEFAULT_ORDER, m=None, g2=None, g3=None, samples=None, seed: int = 0,
              table_hook=None, gamma_hook=None) -> Report:
    """The D^n commutator relation checked on Laurent expansions.

    ``gamma_hook(gamma) -> gamma`` replaces the wp coefficients and
    ``table_hook(table)`` may alter the constant table; both exist to probe
    perturbed data.
    """
    def build(m_, g2_, g3_):
        L = _context(N, g2_, g3_, gamma_hook)
        table = ConstantTable(m_, L.gamma)
        if table_hook is not None:
            table_hook(table)
        return build_Y(n, m_, L, table)

    return _run("laurent_Y", n, build, N, _resolve_samples(m, g2, g3, samples, seed), seed)


def laurent_W(k: int, N: int = DEFAULT_ORDER, m=None, g2=None, g3=None, samples=None, seed: int = 0,
              gamma_hook=None) -> Report:
    def build(m_, g2_, g3_):
        return build_W(k, m_, _context(N, g2_, g3_, gamma_hook))

    return _run("laurent_W", k, build, N, _resolve_samples(m, g2, g3, samples, seed), seed)


def laurent_K0(l: int, N: int = DEFAULT_ORDER, samples=None, seed: int = 0) -> Report:
    def build(m_, g2_, g3_):
        return LaurentOp.mult(K0(l, LaurentContext(N, g2_, g3_)))

    return _run("laurent_K0", l, build, N, _resolve_samples(None, None, None, samples, seed), seed)
