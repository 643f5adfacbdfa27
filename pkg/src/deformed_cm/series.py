"""Truncated Laurent series and the Laurent data of wp and zeta.

A :class:`LaurentSeries` stores coefficients for exponents
``lead .. lead + len(coeffs) - 1`` and a truncation ``order``: every
exponent ``>= order`` is unknown.  ``order=None`` marks an exact (finite)
series such as a constant.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import List, Optional

from gmpy2 import mpq

from .errors import TruncationError
from .ring import Q, Rational, ZERO


def _min_order(*orders):
    known = [o for o in orders if o is not None]
    return min(known) if known else None


class LaurentSeries:
    __slots__ = ("lead", "coeffs", "order")

    def __init__(self, lead: int, coeffs, order: Optional[int] = None):
        coeffs = [Q(c) for c in coeffs]
        if order is not None:
            coeffs = coeffs[: max(0, order - lead)]
        # normalise: strip leading and trailing zeros
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        coeffs = coeffs[i:]
        lead += i
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs and order is not None:
            lead = order
        self.lead = lead
        self.coeffs = coeffs
        self.order = order

    @classmethod
    def constant(cls, c, order=None):
        return cls(0, [c], order)

    @classmethod
    def zero(cls, order=None):
        return cls(0 if order is None else order, [], order)

    def __getitem__(self, e: int) -> Rational:
        if self.order is not None and e >= self.order:
            raise TruncationError("coefficient of z^%d is beyond truncation order %d" % (e, self.order))
        k = e - self.lead
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def known_exponents(self, upto: Optional[int] = None):
        """Exponents whose coefficient is determined, optionally capped below ``upto``."""
        stop = self.lead + len(self.coeffs) if self.order is None else self.order
        if upto is not None:
            stop = min(stop, upto)
        return range(self.lead, stop)

    def is_zero_below(self, bound: int) -> bool:
        """True if every coefficient with exponent < bound is known and zero."""
        if self.order is not None and self.order < bound:
            raise TruncationError("series known only below z^%d, need z^%d" % (self.order, bound))
        return all(not self[e] for e in range(self.lead, bound))

    def is_zero(self) -> bool:
        """Every retained coefficient vanishes (says nothing past ``order``)."""
        return not self.coeffs

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        order = _min_order(self.order, other.order)
        lo = min(self.lead, other.lead)
        hi = max(self.lead + len(self.coeffs), other.lead + len(other.coeffs))
        if order is not None:
            hi = min(hi, order)
        return LaurentSeries(lo, [self._at(e) + other._at(e) for e in range(lo, hi)], order)

    __radd__ = __add__

    def _at(self, e):
        k = e - self.lead
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __neg__(self):
        return LaurentSeries(self.lead, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Q(c)
        return LaurentSeries(self.lead, [c * x for x in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        if not self.coeffs and self.order is None or not other.coeffs and other.order is None:
            return LaurentSeries.zero()
        lead = self.lead + other.lead
        order = _min_order(
            None if self.order is None else self.order + other.lead,
            None if other.order is None else other.order + self.lead,
        )
        n = len(self.coeffs) + len(other.coeffs) - 1
        if order is not None:
            n = min(n, order - lead)
        out = [ZERO] * max(n, 0)
        a, b = self.coeffs, other.coeffs
        for i, x in enumerate(a):
            if not x or i >= n:
                continue
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y:
                    out[i + j] += x * y
        return LaurentSeries(lead, out, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            raise TypeError("division of Laurent series is not supported")
        return self.scale(1 / Q(other))

    def __call__(self, *args):
        raise TypeError("composition of Laurent series is not supported")

    def __pow__(self, e: int):
        out = LaurentSeries.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def diff(self, times: int = 1):
        s = self
        for _ in range(times):
            s = LaurentSeries(
                s.lead - 1,
                [c * (s.lead + k) for k, c in enumerate(s.coeffs)],
                None if s.order is None else s.order - 1,
            )
        return s

    def scale_arg(self, a):
        """Substitute z -> a*z."""
        a = Q(a)
        if not a:
            raise ValueError("scale factor must be nonzero")
        return LaurentSeries(self.lead, [c * a ** (self.lead + k) for k, c in enumerate(self.coeffs)],
                             self.order)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.order == other.order and self.lead == other.lead
                and self.coeffs == other.coeffs)

    def __repr__(self):
        terms = ["%s*z^%d" % (c, self.lead + k) for k, c in enumerate(self.coeffs) if c]
        tail = "" if self.order is None else " + O(z^%d)" % self.order
        return (" + ".join(terms) or "0") + tail


# ---------------------------------------------------------------------------
# wp-coefficients and Bernoulli numbers


@dataclass(frozen=True)
class GammaTable:
    """Laurent coefficients gamma_2, gamma_4, ..., gamma_2K of wp."""

    g2: Rational
    g3: Rational
    values: tuple

    def __getitem__(self, two_k: int) -> Rational:
        """gamma indexed by its even subscript: ``table[4]`` is gamma_4."""
        if two_k == 0:
            return ZERO
        if two_k % 2 or two_k < 0:
            raise KeyError(two_k)
        k = two_k // 2
        if k > len(self.values):
            raise KeyError("gamma_%d not computed (table has K=%d)" % (two_k, len(self.values)))
        return self.values[k - 1]

    def __len__(self):
        return len(self.values)

    def extended(self, K: int) -> "GammaTable":
        return self if K <= len(self.values) else gamma_table(K, self.g2, self.g3)


def gamma_table(K: int, g2, g3) -> GammaTable:
    """gamma_2 .. gamma_2K from g2, g3 via the quadratic recursion."""
    if K < 1:
        raise ValueError("K must be >= 1")
    g2, g3 = Q(g2), Q(g3)
    gam = {1: g2 / 20, 2: g3 / 28}
    for k in range(2, K):
        s = sum((gam[j] * gam[k - j] for j in range(1, k)), ZERO)
        gam[k + 1] = mpq(3, (k - 1) * (2 * k + 5)) * s
    return GammaTable(g2, g3, tuple(gam[k] for k in range(1, K + 1)))


def bernoulli_hurwitz(two_k: int, gamma: GammaTable) -> Rational:
    """BH(2k+2) recovered from gamma_2k = BH(2k+2) / ((2k)! (2k+2))."""
    return gamma[two_k] * factorial(two_k) * (two_k + 2)


@dataclass(frozen=True)
class BernoulliTable:
    values: tuple  # B_2, B_4, ..., B_2K

    def __getitem__(self, two_k: int) -> Rational:
        if two_k % 2 or two_k < 2:
            raise KeyError(two_k)
        return self.values[two_k // 2 - 1]

    def __len__(self):
        return len(self.values)


def bernoulli_table(K: int) -> BernoulliTable:
    """B_2 .. B_2K from the recurrence sum_{j<=n} C(n+1, j) B_j = 0."""
    if K < 1:
        raise ValueError("K must be >= 1")
    N = 2 * K
    B = [mpq(1)]
    for n in range(1, N + 1):
        s = sum((_binom(n + 1, j) * B[j] for j in range(n)), ZERO)
        B.append(-s / (n + 1))
    return BernoulliTable(tuple(B[2 * k] for k in range(1, K + 1)))


def _binom(n, k):
    from math import comb
    return comb(n, k)


def trig_gamma(k: int, bern: BernoulliTable) -> Rational:
    """gamma_2k of the degenerate wp(z) = 1/3 + 1/sinh(z)^2."""
    if 2 * k + 2 > 2 * len(bern):
        raise ValueError("Bernoulli table too short for gamma_%d" % (2 * k))
    return -mpq(2 ** (2 * k + 2), 2 * k + 2) * bern[2 * k + 2] / factorial(2 * k)


TRIG_G2 = mpq(4, 3)
TRIG_G3 = mpq(-8, 27)


def invariants_from_roots(e1, e2, e3):
    """(g2, g3) of 4(x-e1)(x-e2)(x-e3) with e1+e2+e3 = 0."""
    e1, e2, e3 = Q(e1), Q(e2), Q(e3)
    if e1 + e2 + e3:
        raise ValueError("roots must sum to zero")
    return -4 * (e1 * e2 + e1 * e3 + e2 * e3), 4 * e1 * e2 * e3


# ---------------------------------------------------------------------------
# wp and zeta expansions


def _need(gamma: GammaTable, N: int):
    # z^(2k) with 2k < N needs gamma_2k
    kmax = (N - 1) // 2
    if kmax > len(gamma):
        raise TruncationError("gamma table has K=%d, order %d needs K=%d" % (len(gamma), N, kmax))
    return kmax


def wp_series(N: int, gamma: GammaTable) -> LaurentSeries:
    """z^-2 + sum gamma_2k z^2k, known for exponents < N."""
    kmax = _need(gamma, N)
    coeffs = [ZERO] * (N + 2)
    coeffs[0] = mpq(1)
    for k in range(1, kmax + 1):
        coeffs[2 * k + 2] = gamma[2 * k]
    return LaurentSeries(-2, coeffs, N)


def zeta_series(N: int, gamma: GammaTable) -> LaurentSeries:
    """z^-1 - sum gamma_2k z^(2k+1)/(2k+1), known for exponents < N+1.

    The antiderivative of a series known below N is known below N+1.
    """
    kmax = _need(gamma, N)
    coeffs = [ZERO] * (N + 2)
    coeffs[0] = mpq(1)
    for k in range(1, kmax + 1):
        coeffs[2 * k + 2] = -gamma[2 * k] / (2 * k + 1)
    return LaurentSeries(-1, coeffs, N + 1)


def weierstrass_defect(W: LaurentSeries, g2, g3) -> LaurentSeries:
    """(W')^2 - 4 W^3 + g2 W + g3; vanishes for the true wp expansion."""
    dW = W.diff()
    return dW * dW - 4 * W * W * W + W.scale(g2) + Q(g3)
