"""Normal-ordered differential operators with :class:`CoeffPoly` coefficients.

An operator is a finite sum ``sum_alpha c_alpha(x) d^alpha`` with every
derivative to the right of its coefficient.  Multi-indices are plain tuples
of length n.
"""
from __future__ import annotations

from itertools import product
from math import comb
from typing import Dict, Iterable, Tuple

from .errors import ContextMismatch
from .ring import CoeffPoly, Q, RingContext, ZERO

MultiIndex = Tuple[int, ...]


def _sub_indices(alpha: MultiIndex):
    """All mu <= alpha (componentwise) with the product of binomials C(alpha, mu)."""
    for mu in product(*(range(a + 1) for a in alpha)):
        c = 1
        for a, u in zip(alpha, mu):
            if u:
                c *= comb(a, u)
        yield mu, c


class _Derivs:
    """Lazily computed partial derivatives d^mu of one coefficient."""

    __slots__ = ("base", "cache")

    def __init__(self, poly: CoeffPoly):
        self.base = poly
        self.cache = {}

    def get(self, mu: MultiIndex) -> CoeffPoly:
        if not any(mu):
            return self.base
        hit = self.cache.get(mu)
        if hit is not None:
            return hit
        k = next(i for i, u in enumerate(mu) if u)
        lower = list(mu)
        lower[k] -= 1
        hit = self.get(tuple(lower)).diff(k + 1)
        self.cache[mu] = hit
        return hit


class DiffOp:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: RingContext, terms: Dict[MultiIndex, CoeffPoly] | None = None):
        self.ctx = ctx
        self.terms: Dict[MultiIndex, CoeffPoly] = {}
        if terms:
            for a, c in terms.items():
                if len(a) != ctx.n:
                    raise ValueError("multi-index %r has wrong length for n=%d" % (a, ctx.n))
                if c.ctx != ctx:
                    raise ContextMismatch("coefficient context differs from operator context")
                if c:
                    self.terms[tuple(a)] = c

    # construction -----------------------------------------------------------
    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def scalar(cls, ctx, c):
        return cls.mult(ctx, CoeffPoly.const(ctx, c))

    @classmethod
    def mult(cls, ctx, poly: CoeffPoly):
        """Multiplication operator by ``poly``."""
        return cls(ctx, {(0,) * ctx.n: poly})

    @classmethod
    def d(cls, ctx, *powers, coeff=1):
        """``coeff * d_1^p1 ... d_n^pn``; trailing powers may be omitted."""
        alpha = tuple(powers) + (0,) * (ctx.n - len(powers))
        return cls(ctx, {alpha: CoeffPoly.const(ctx, coeff)})

    @classmethod
    def partial(cls, ctx, *indices):
        """Product of d_j over the given (1-based) indices, repeats allowed."""
        alpha = [0] * ctx.n
        for j in indices:
            alpha[j - 1] += 1
        return cls(ctx, {tuple(alpha): CoeffPoly.const(ctx, 1)})

    # inspection -------------------------------------------------------------
    @property
    def n(self):
        return self.ctx.n

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def order(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def coeff(self, alpha) -> CoeffPoly:
        return self.terms.get(tuple(alpha), CoeffPoly(self.ctx))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def has_zeta(self) -> bool:
        return any(c.has_zeta() for c in self.terms.values())

    def depends_only_on_d1(self) -> bool:
        return all(not any(a[1:]) for a in self.terms)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((a, hash(c)) for a, c in self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, c in self.sorted_terms():
            d = "".join("d%d" % (k + 1) + ("^%d" % e if e > 1 else "")
                        for k, e in enumerate(a) if e)
            parts.append("(%r)%s" % (c, ("*" + d) if d else ""))
        return " + ".join(parts)

    # linear structure ---------------------------------------------------------
    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatch("operators live over different rings")

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            v = out.get(a)
            if v is None:
                out[a] = c
            else:
                v = v + c
                if v:
                    out[a] = v
                else:
                    del out[a]
        return _raw(self.ctx, out)

    def __neg__(self):
        return _raw(self.ctx, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, CoeffPoly):
            return self.lmul(c)
        c = Q(c)
        if not c:
            return DiffOp(self.ctx)
        return _raw(self.ctx, {a: v.scale(c) for a, v in self.terms.items()})

    def lmul(self, poly: CoeffPoly) -> "DiffOp":
        """Left multiplication by a function (no Leibniz terms)."""
        out = {}
        for a, c in self.terms.items():
            v = poly * c
            if v:
                out[a] = v
        return _raw(self.ctx, out)

    def rmul_partial(self, *indices) -> "DiffOp":
        """Right multiplication by d_j (j in indices): only shifts multi-indices."""
        shift = [0] * self.n
        for j in indices:
            shift[j - 1] += 1
        return _raw(self.ctx, {tuple(x + s for x, s in zip(a, shift)): c
                               for a, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return op_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, CoeffPoly):
            return self.lmul(other)
        return self.scale(other)

    def coeff_diff(self, k: int) -> "DiffOp":
        """Differentiate every coefficient with respect to x_k."""
        out = {}
        for a, c in self.terms.items():
            v = c.diff(k)
            if v:
                out[a] = v
        return _raw(self.ctx, out)

    def symbol_degree_part(self, degree: int) -> "DiffOp":
        return _raw(self.ctx, {a: c for a, c in self.terms.items() if sum(a) == degree})


def _raw(ctx, terms):
    op = DiffOp.__new__(DiffOp)
    op.ctx = ctx
    op.terms = terms
    return op


def _accumulate(out: Dict[MultiIndex, Dict], alpha, poly: CoeffPoly, scale: int):
    bucket = out.get(alpha)
    if bucket is None:
        bucket = out[alpha] = {}
    for m, c in poly.terms.items():
        v = bucket.get(m)
        bucket[m] = c * scale if v is None else v + c * scale


def _finish(ctx, out) -> DiffOp:
    terms = {}
    for a, bucket in out.items():
        p = CoeffPoly(ctx, bucket)
        if p:
            terms[a] = p
    return _raw(ctx, terms)


def _leibniz_into(out, a: CoeffPoly, alpha, bd: _Derivs, beta, sign: int, skip_zero: bool):
    """Add sign * (a d^alpha)(b d^beta) (optionally without the mu=0 term) to out."""
    for mu, c in _sub_indices(alpha):
        if skip_zero and not any(mu):
            continue
        db = bd.get(mu)
        if not db:
            continue
        prod = a * db
        if not prod:
            continue
        gamma = tuple(x - u + y for x, u, y in zip(alpha, mu, beta))
        _accumulate(out, gamma, prod, sign * c)


def op_mul(A: DiffOp, B: DiffOp) -> DiffOp:
    """Normal-ordered composition A*B."""
    A._check(B)
    out: Dict[MultiIndex, Dict] = {}
    derivs = [(beta, _Derivs(b)) for beta, b in B.terms.items()]
    for alpha, a in A.terms.items():
        for beta, bd in derivs:
            _leibniz_into(out, a, alpha, bd, beta, 1, False)
    return _finish(A.ctx, out)


def op_commutator(A: DiffOp, B: DiffOp) -> DiffOp:
    """[A, B] = AB - BA.

    The top Leibniz terms a*b*d^(alpha+beta) cancel pairwise because the
    coefficients commute, so only terms with at least one derivative landing
    on a coefficient are formed.
    """
    A._check(B)
    out: Dict[MultiIndex, Dict] = {}
    bders = [(beta, _Derivs(b)) for beta, b in B.terms.items()]
    aders = [(alpha, _Derivs(a)) for alpha, a in A.terms.items()]
    for alpha, a in A.terms.items():
        if any(alpha):
            for beta, bd in bders:
                _leibniz_into(out, a, alpha, bd, beta, 1, True)
    for beta, b in B.terms.items():
        if any(beta):
            for alpha, ad in aders:
                _leibniz_into(out, b, beta, ad, alpha, -1, True)
    return _finish(A.ctx, out)


def op_add(A: DiffOp, B: DiffOp) -> DiffOp:
    return A + B


def op_scale(T: DiffOp, c) -> DiffOp:
    return T.scale(c)


def op_equal(A: DiffOp, B: DiffOp) -> bool:
    return A == B


def op_is_zero(T: DiffOp) -> bool:
    return T.is_zero()


def commutator_with_function(f: CoeffPoly, T: DiffOp) -> DiffOp:
    """[f, T] for a multiplication operator f: -sum a * C(alpha,mu) (d^mu f) d^(alpha-mu)."""
    return op_commutator(DiffOp.mult(T.ctx, f), T)


def ad_zeta(j: int, T: DiffOp, m) -> DiffOp:
    """[(m+1) zeta(x_1 - x_j), T]."""
    if not 2 <= j <= T.n:
        raise ValueError("ad_zeta index must lie in 2..n, got %d" % j)
    f = CoeffPoly.gen(T.ctx, 1, j, "Z").scale(Q(m) + 1)
    return commutator_with_function(f, T)


def ad_zeta_set(sigma: Iterable[int], T: DiffOp, m) -> DiffOp:
    """Nested ad_zeta over the indices of sigma (innermost = smallest index)."""
    for j in sorted(sigma):
        T = ad_zeta(j, T, m)
    return T


def theta_weights(n: int, m) -> tuple:
    m = Q(m)
    if not m:
        raise ValueError("theta = x_1/m + x_2 + ... + x_n needs m != 0")
    return (1 / m,) + (Q(1),) * (n - 1)


def ad_theta(T: DiffOp, m) -> DiffOp:
    """[theta, T] for theta = x_1/m + x_2 + ... + x_n.

    [x_j, d^alpha] = -alpha_j d^(alpha - e_j), and theta commutes with the
    coefficients, so no position variables survive.
    """
    w = theta_weights(T.n, m)
    out: Dict[MultiIndex, Dict] = {}
    for alpha, c in T.terms.items():
        for j, aj in enumerate(alpha):
            if aj:
                lower = alpha[:j] + (aj - 1,) + alpha[j + 1:]
                bucket = out.setdefault(lower, {})
                s = -aj * w[j]
                for mono, v in c.terms.items():
                    x = bucket.get(mono)
                    bucket[mono] = v * s if x is None else x + v * s
    return _finish(T.ctx, out)


def laplacian(ctx: RingContext, weights) -> DiffOp:
    """sum_k w_k d_k^2."""
    out = DiffOp(ctx)
    for k, w in enumerate(weights):
        if Q(w):
            out = out + DiffOp.partial(ctx, k + 1, k + 1).scale(w)
    return out
