"""Builders for the deformed elliptic Calogero-Moser operators and their integrals.

Particle 1 carries mass 1/m; particles 2..n have unit mass.  Everything is
built for fixed exact values of m, g2, g3 held by a :class:`CMSystem`, which
also memoises the subset recursion.

Index sets are sorted tuples of 1-based particle labels.  A set containing
1 selects the deformed branch, any other set the ordinary (non-deformed)
elliptic Calogero-Moser subsystem.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial
from typing import Dict, Iterable, List, Tuple

from gmpy2 import mpq

from .opalg import DiffOp, ad_theta, ad_zeta_set, laplacian
from .ring import CoeffPoly, Q, Rational, RingContext, ZERO
from .series import BernoulliTable, GammaTable, bernoulli_table, gamma_table

IndexSet = Tuple[int, ...]


def index_set(S: Iterable[int]) -> IndexSet:
    items = list(S)
    s = tuple(sorted(set(items)))
    if len(s) != len(items):
        raise ValueError("index set has duplicates: %r" % (items,))
    return s


def subsets(S: Iterable[int], t: int) -> List[IndexSet]:
    """All t-element subsets of S in lexicographic order."""
    return [tuple(c) for c in combinations(sorted(S), t)]


def complement(S: Iterable[int], sigma: Iterable[int]) -> IndexSet:
    sig = set(sigma)
    return tuple(j for j in sorted(S) if j not in sig)


# ---------------------------------------------------------------------------
# constants


def p0(k: int, m) -> Rational:
    """Leading coefficient of D^k: 1/k! * prod_{l=1}^{k-1} (1 - l m)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    m = Q(m)
    out = mpq(1)
    for l in range(1, k):
        out *= 1 - l * m
    return out / factorial(k)


@dataclass
class ConstantTable:
    """The constants p_{0,k} and p_{2i,k} for one value of m and one curve."""

    m: Rational
    gamma: GammaTable
    p0: Dict[int, Rational] = field(default_factory=dict)
    p2i: Dict[Tuple[int, int], Rational] = field(default_factory=dict)

    def __post_init__(self):
        self.m = Q(self.m)

    @classmethod
    def for_curve(cls, m, g2=0, g3=0, K: int = 8):
        return cls(Q(m), gamma_table(K, g2, g3))

    def gamma_at(self, two_k: int) -> Rational:
        if two_k // 2 > len(self.gamma):
            self.gamma = self.gamma.extended(two_k // 2 + 4)
        return self.gamma[two_k]

    def p0_at(self, k: int) -> Rational:
        v = self.p0.get(k)
        if v is None:
            v = self.p0[k] = p0(k, self.m)
        return v

    def p_at(self, two_i: int, k: int) -> Rational:
        """p_{two_i, k} with the convention that p_{2,k} does not exist (is 0)."""
        if two_i == 0:
            return self.p0_at(k)
        if two_i == 2:
            return ZERO
        return p2i(two_i // 2, k, self)


def p2i(i: int, k: int, table: ConstantTable) -> Rational:
    """p_{2i,k} for i >= 2, k >= 2i.

    p_{2i,2i} = 0 and for k > 2i

        p_{2i,k} = (1 - m(k-2i-1))/(k-2i) p_{2i,k-1}
                   - (1+m) sum_{j=1, j!=2}^{i-1} (2i-2j)! C(k-2j+1, k-2i) gamma_{2i-2j} p_{2j-2,k-1}
    """
    if i < 2:
        raise ValueError("p_{2i,k} is defined for i >= 2")
    if k < 2 * i:
        raise ValueError("p_{%d,k} needs k >= %d, got %d" % (2 * i, 2 * i, k))
    key = (i, k)
    hit = table.p2i.get(key)
    if hit is not None:
        return hit
    m = table.m
    # iterate upwards in k so deep recursions never happen
    val = ZERO
    start = 2 * i
    for kk in range(start, k + 1):
        cached = table.p2i.get((i, kk))
        if cached is not None:
            val = cached
            continue
        if kk == start:
            val = ZERO
        else:
            val = (1 - m * (kk - 2 * i - 1)) / (kk - 2 * i) * val
            s = ZERO
            for j in range(1, i):
                if j == 2:
                    continue
                s += (factorial(2 * i - 2 * j) * comb(kk - 2 * j + 1, kk - 2 * i)
                      * table.gamma_at(2 * i - 2 * j) * table.p_at(2 * j - 2, kk - 1))
            val -= (1 + m) * s
        table.p2i[(i, kk)] = val
    return val


def trig_p2i(i: int, k: int, m, bern: BernoulliTable, _memo=None) -> Rational:
    """p_{2i,k} from the recursion written directly with Bernoulli numbers.

    Valid for the degeneration wp = 1/3 + 1/sinh^2; it must agree with
    :func:`p2i` evaluated on the invariants (4/3, -8/27).
    """
    m = Q(m)
    memo = {} if _memo is None else _memo

    def p(two_j, kk):
        if two_j == 0:
            return p0(kk, m)
        if two_j == 2:
            return ZERO
        return trig_p2i(two_j // 2, kk, m, bern, memo)

    key = (i, k)
    if key in memo:
        return memo[key]
    if k == 2 * i:
        val = ZERO
    else:
        val = (1 - m * (k - 2 * i - 1)) / (k - 2 * i) * trig_p2i(i, k - 1, m, bern, memo)
        s = ZERO
        for j in range(1, i):
            if j == 2:
                continue
            e = 2 * i - 2 * j + 2
            s += comb(k - 2 * j + 1, k - 2 * i) * mpq(2 ** e, e) * bern[e] * p(2 * j - 2, k - 1)
        val += (1 + m) * s
    memo[key] = val
    return val


# ---------------------------------------------------------------------------
# operators


class CMSystem:
    """Operators of the n-particle deformed system for fixed m, g2, g3."""

    def __init__(self, n: int, m, g2=0, g3=0):
        if n < 1:
            raise ValueError("need n >= 1")
        self.n = n
        self.m = Q(m)
        self.ctx = RingContext(n, g2, g3)
        self.table = ConstantTable.for_curve(self.m, g2, g3, K=max(4, n))
        self._D: Dict[int, DiffOp] = {}
        self._adz: Dict[Tuple[IndexSet, int], DiffOp] = {}
        self._theta: Dict[IndexSet, DiffOp] = {}
        self._xm: Dict[IndexSet, CoeffPoly] = {}
        self._I: Dict[IndexSet, DiffOp] = {}

    @property
    def full(self) -> IndexSet:
        return tuple(range(1, self.n + 1))

    def _set(self, S) -> IndexSet:
        S = tuple(sorted(S)) if S is not None else self.full
        if len(set(S)) != len(S) or any(not 1 <= j <= self.n for j in S):
            raise ValueError("bad index set %r for n=%d" % (S, self.n))
        return S

    # potentials -------------------------------------------------------------
    def wp(self, a, b) -> CoeffPoly:
        return CoeffPoly.wp(self.ctx, a, b)

    def wp1(self, a, b) -> CoeffPoly:
        return CoeffPoly.wp1(self.ctx, a, b)

    def u(self, a, b) -> CoeffPoly:
        """(m+1) wp_1j if the pair touches particle 1, else m(m+1) wp_kl."""
        a, b = min(a, b), max(a, b)
        c = self.m + 1 if a == 1 else self.m * (self.m + 1)
        return self.wp(a, b).scale(c)

    def du1(self, j) -> CoeffPoly:
        """d/dx_1 of u_1j = (m+1) wp'(x_1 - x_j)."""
        return self.wp1(1, j).scale(self.m + 1)

    # D^k, Theta, X ---------------------------------------------------------------
    def D(self, k: int) -> DiffOp:
        """Constant-coefficient operator D^k in d_1 (D^0 = 1)."""
        hit = self._D.get(k)
        if hit is None:
            hit = self._D[k] = build_D(k, self.table, self.ctx)
        return hit

    def adz(self, sigma: IndexSet, k: int) -> DiffOp:
        key = (tuple(sigma), k)
        hit = self._adz.get(key)
        if hit is None:
            if not sigma:
                hit = self.D(k)
            else:
                # nesting order is irrelevant; peel the largest index
                inner = self.adz(sigma[:-1], k)
                hit = ad_zeta_set((sigma[-1],), inner, self.m)
            self._adz[key] = hit
        return hit

    def theta(self, S=None) -> DiffOp:
        S = self._set(S)
        if 1 not in S:
            raise ValueError("Theta_S needs 1 in S, got %r" % (S,))
        hit = self._theta.get(S)
        if hit is None:
            k = len(S)
            rest = S[1:]
            hit = DiffOp(self.ctx)
            for t in range(0, k // 2 + 1):
                for sigma in subsets(rest, t):
                    hit = hit + self.adz(sigma, k - t)
            self._theta[S] = hit
        return hit

    def X_matching(self, A) -> CoeffPoly:
        A = self._set(A)
        if 1 in A:
            raise ValueError("X_A is a non-deformed quantity; 1 must not be in A")
        hit = self._xm.get(A)
        if hit is None:
            if not A:
                hit = CoeffPoly.const(self.ctx, 1)
            elif len(A) % 2:
                hit = CoeffPoly(self.ctx)
            else:
                top = A[-1]
                hit = CoeffPoly(self.ctx)
                for j in A[:-1]:
                    hit = hit + self.u(j, top) * self.X_matching(complement(A, (j, top)))
            self._xm[A] = hit
        return hit

    def X(self, S=None) -> DiffOp:
        S = self._set(S)
        if 1 not in S:
            return DiffOp.mult(self.ctx, self.X_matching(S))
        k = len(S)
        out = self.theta(S)
        for t in range(1, (k - 2) // 2 + 1):
            for sigma in subsets(S[1:], 2 * t):
                out = out + self.theta(complement(S, sigma)).lmul(self.X_matching(sigma))
        return out

    # Hamiltonian and integrals ---------------------------------------------------
    def laplacian(self, S=None) -> DiffOp:
        S = self._set(S)
        w = [0] * self.n
        for j in S:
            w[j - 1] = self.m if j == 1 else 1
        return laplacian(self.ctx, w)

    def potential(self, S=None) -> CoeffPoly:
        S = self._set(S)
        V = CoeffPoly(self.ctx)
        for a, b in combinations(S, 2):
            V = V + self.u(a, b)
        return V.scale(2)

    def H(self, S=None) -> DiffOp:
        S = self._set(S)
        if not S:
            raise ValueError("H_S needs a nonempty S")
        return -self.laplacian(S) + DiffOp.mult(self.ctx, self.potential(S))

    def I(self, S=None) -> DiffOp:
        """Highest-order integral of the subsystem S (order |S|)."""
        S = self._set(S)
        if len(S) < 2:
            raise ValueError("I_S needs |S| >= 2")
        hit = self._I.get(S)
        if hit is not None:
            return hit
        k = len(S)
        out = self.X(S)
        for t in range(1, k - 1):
            sign = 1 if t % 2 else -1
            for sigma in subsets(S, t):
                term = self.I(complement(S, sigma)).rmul_partial(*sigma)
                out = out + (term if sign > 0 else -term)
        out = out + DiffOp.partial(self.ctx, *S).scale((-1) ** k * (k - 1))
        self._I[S] = out
        return out

    def tower(self) -> List[DiffOp]:
        """[L_0 = I, L_1, ..., L_{n-1}] with L_{k+1} = [theta, L_k]."""
        if not self.m:
            raise ValueError("the tower needs m != 0")
        L = [self.I()]
        for _ in range(1, self.n):
            L.append(ad_theta(L[-1], self.m))
        return L

    def total_momentum(self) -> DiffOp:
        return sum_partials(self.ctx)


def sum_partials(ctx: RingContext) -> DiffOp:
    out = DiffOp(ctx)
    for j in range(1, ctx.n + 1):
        out = out + DiffOp.partial(ctx, j)
    return out


def build_D(k: int, table: ConstantTable, ctx_or_n) -> DiffOp:
    """p_{0,k} d_1^k + sum_{i=2}^{[k/2]} p_{2i,k} d_1^(k-2i)."""
    ctx = ctx_or_n if isinstance(ctx_or_n, RingContext) else RingContext(ctx_or_n, table.gamma.g2,
                                                                         table.gamma.g3)
    if k < 0:
        raise ValueError("k must be >= 0")
    out = DiffOp.d(ctx, k, coeff=table.p0_at(k)) if table.p0_at(k) else DiffOp(ctx)
    for i in range(2, k // 2 + 1):
        c = p2i(i, k, table)
        if c:
            out = out + DiffOp.d(ctx, k - 2 * i, coeff=c)
    return out


# module-level mirrors of the builder methods ------------------------------------


def build_theta(S, system: CMSystem) -> DiffOp:
    return system.theta(S)


def build_X_matching(A, system: CMSystem) -> CoeffPoly:
    return system.X_matching(A)


def build_X(system: CMSystem, S=None) -> DiffOp:
    return system.X(S)


def build_H(S, system: CMSystem) -> DiffOp:
    return system.H(S)


def build_I(S, system: CMSystem) -> DiffOp:
    return system.I(S)


def tower(system: CMSystem) -> List[DiffOp]:
    return system.tower()


def theta_function_commutator(system: CMSystem, T: DiffOp) -> DiffOp:
    return ad_theta(T, system.m)
