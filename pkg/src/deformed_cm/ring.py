"""Exact rationals and the coefficient ring of pair generators.

Every coefficient of every operator in this package is a polynomial in the
generators

    P[i,j]  = wp(x_i - x_j)
    P1[i,j] = wp'(x_i - x_j)
    Z[i,j]  = zeta(x_i - x_j)          (1 <= i < j <= n)

with rational coefficients.  The ring is closed under d/dx_k through

    wp''  = 6 wp^2 - g2/2,      zeta' = -wp.

Relations such as the curve equation wp'^2 = 4 wp^3 - g2 wp - g3 are *not*
imposed; two polynomials are equal only if their canonical term maps agree.
Functional vanishing is decided by evaluation (see :mod:`deformed_cm.verify`).

Internally a monomial is a dense tuple of exponents indexed by generator id
``3 * pair_index + kind`` with pairs enumerated lexicographically, so sorting
monomials by generator id is the canonical (i, j, kind) order with
P < P1 < Z.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple

from gmpy2 import mpq

from .errors import ContextMismatch, UnassignedGenerator, ZetaNotEvaluable

Rational = type(mpq())
Monomial = Tuple[int, ...]

KINDS = ("P", "P1", "Z")
P, P1, Z = 0, 1, 2

ZERO = mpq(0)
ONE = mpq(1)


def Q(x) -> Rational:
    """Coerce ints, Fractions, mpq and 'p/q' strings to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals: %r" % x)
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def fmt(q) -> str:
    """Render a rational as ``"p/q"`` (denominator always present)."""
    q = Q(q)
    return "%d/%d" % (q.numerator, q.denominator)


def to_fraction(q) -> Fraction:
    q = Q(q)
    return Fraction(int(q.numerator), int(q.denominator))


class PairGen(NamedTuple):
    """A generator ``kind`` evaluated at ``x_i - x_j`` (i < j)."""

    i: int
    j: int
    kind: str

    def __str__(self):
        # P12, P'12, Z12; indices above 9 are separated by a comma
        head = {"P": "P", "P1": "P'", "Z": "Z"}[self.kind]
        if self.j > 9:
            return "%s%d,%d" % (head, self.i, self.j)
        return "%s%d%d" % (head, self.i, self.j)


def pair_index(i: int, j: int, n: int) -> int:
    if not 1 <= i < j <= n:
        raise ValueError("pair (%d, %d) not canonical for n=%d" % (i, j, n))
    # pairs (1,2),(1,3),...,(1,n),(2,3),...
    return (i - 1) * n - (i - 1) * i // 2 + (j - i - 1)


@dataclass(frozen=True)
class RingContext:
    """Variable count and the curve invariants shared by a family of polynomials."""

    n: int
    g2: Rational = field(default=ZERO)
    g3: Rational = field(default=ZERO)
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")
        object.__setattr__(self, "g2", Q(self.g2))
        object.__setattr__(self, "g3", Q(self.g3))
        pairs = [(i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)]
        object.__setattr__(self, "pairs", tuple(pairs))
        object.__setattr__(self, "ngen", 3 * len(pairs))

    def gen_id(self, i: int, j: int, kind) -> int:
        k = KINDS.index(kind) if isinstance(kind, str) else int(kind)
        return 3 * pair_index(i, j, self.n) + k

    def gen(self, gid: int) -> PairGen:
        i, j = self.pairs[gid // 3]
        return PairGen(i, j, KINDS[gid % 3])

    @property
    def unit(self) -> Monomial:
        return (0,) * self.ngen

    def mono_diff(self, mono: Monomial, k: int) -> Dict[Monomial, Rational]:
        """d/dx_k of a single monomial, memoised per context."""
        key = (mono, k)
        cache = self._cache
        hit = cache.get(key)
        if hit is None:
            hit = self._mono_diff(mono, k)
            cache[key] = hit
        return hit

    def _mono_diff(self, mono, k):
        out: Dict[Monomial, Rational] = {}
        for gid, e in enumerate(mono):
            if not e:
                continue
            i, j = self.pairs[gid // 3]
            if k == i:
                s = 1
            elif k == j:
                s = -1
            else:
                continue
            base = list(mono)
            base[gid] -= 1
            kind = gid % 3
            if kind == P:
                # e * P^(e-1) * s * P1
                m = list(base)
                m[gid + 1] += 1
                _acc(out, tuple(m), mpq(s * e))
            elif kind == P1:
                # e * P1^(e-1) * s * (6 P^2 - g2/2)
                m = list(base)
                m[gid - 1] += 2
                _acc(out, tuple(m), mpq(6 * s * e))
                if self.g2:
                    _acc(out, tuple(base), -s * e * self.g2 / 2)
            else:
                # e * Z^(e-1) * (-s) * P
                m = list(base)
                m[gid - 2] += 1
                _acc(out, tuple(m), mpq(-s * e))
        return {mo: c for mo, c in out.items() if c}


def _acc(d, key, c):
    v = d.get(key)
    d[key] = c if v is None else v + c


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))


class CoeffPoly:
    """Sparse polynomial in the pair generators with exact rational coefficients.

    ``terms`` maps dense exponent tuples to nonzero rationals; the empty
    monomial (all zeros) is the constant term.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: RingContext, terms: Mapping[Monomial, Rational] | None = None):
        self.ctx = ctx
        self.terms: Dict[Monomial, Rational] = (
            {} if terms is None else {m: c for m, c in terms.items() if c})

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, ctx, c=1):
        c = Q(c)
        return cls(ctx, {ctx.unit: c} if c else None)

    @classmethod
    def gen(cls, ctx, i, j, kind="P", power=1):
        m = [0] * ctx.ngen
        m[ctx.gen_id(i, j, kind)] = power
        return cls(ctx, {tuple(m): ONE})

    @classmethod
    def wp(cls, ctx, a, b):
        """wp(x_a - x_b) for any distinct a, b (wp is even)."""
        return cls.gen(ctx, min(a, b), max(a, b), "P")

    @classmethod
    def wp1(cls, ctx, a, b):
        """wp'(x_a - x_b) for any distinct a, b (wp' is odd)."""
        g = cls.gen(ctx, min(a, b), max(a, b), "P1")
        return g if a < b else -g

    @classmethod
    def zeta(cls, ctx, a, b):
        """zeta(x_a - x_b) for any distinct a, b (zeta is odd)."""
        g = cls.gen(ctx, min(a, b), max(a, b), "Z")
        return g if a < b else -g

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, CoeffPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction, Rational)):
            c = Q(other)
            if not c:
                return not self.terms
            return self.terms == {self.ctx.unit: c}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def constant(self) -> Rational:
        return self.terms.get(self.ctx.unit, ZERO)

    def generators(self) -> set:
        """Generator ids that occur with positive exponent."""
        out = set()
        for m in self.terms:
            out.update(g for g, e in enumerate(m) if e)
        return out

    def has_zeta(self) -> bool:
        return any(g % 3 == Z for g in self.generators())

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    # arithmetic -------------------------------------------------------
    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatch("coefficient rings differ: %r vs %r" % (self.ctx, other.ctx))

    def _lift(self, other):
        if isinstance(other, CoeffPoly):
            self._check(other)
            return other
        return CoeffPoly.const(self.ctx, other)

    def __add__(self, other):
        other = self._lift(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return _raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "CoeffPoly":
        c = Q(c)
        if not c:
            return _raw(self.ctx, {})
        return _raw(self.ctx, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, CoeffPoly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return _raw(self.ctx, {})
        unit = self.ctx.unit
        if len(a) == 1 and unit in a:
            return other.scale(a[unit])
        if len(b) == 1 and unit in b:
            return self.scale(b[unit])
        out: Dict[Monomial, Rational] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                v = out.get(m)
                out[m] = ca * cb if v is None else v + ca * cb
        return CoeffPoly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = CoeffPoly.const(self.ctx, 1)
        for _ in range(e):
            out = out * self
        return out

    def diff(self, k: int) -> "CoeffPoly":
        """Formal d/dx_k."""
        if not 1 <= k <= self.ctx.n:
            raise ValueError("variable index %d out of range 1..%d" % (k, self.ctx.n))
        out: Dict[Monomial, Rational] = {}
        md = self.ctx.mono_diff
        for m, c in self.terms.items():
            for m2, c2 in md(m, k).items():
                v = out.get(m2)
                out[m2] = c * c2 if v is None else v + c * c2
        return CoeffPoly(self.ctx, out)

    def evaluate(self, values, allow_zeta: bool = True) -> Rational:
        return poly_eval(self, values, allow_zeta=allow_zeta)

    # display ----------------------------------------------------------
    def sorted_terms(self):
        """Terms in canonical monomial order."""
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for g, e in enumerate(m):
                if e:
                    name = str(self.ctx.gen(g))
                    factors.append(name if e == 1 else "%s^%d" % (name, e))
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
        return " + ".join(parts).replace("+ -", "- ")


def _raw(ctx, terms):
    p = CoeffPoly.__new__(CoeffPoly)
    p.ctx = ctx
    p.terms = terms
    return p


def _mono_key(m: Monomial):
    # canonical order: by generator id sequence, then exponents
    return tuple((g, e) for g, e in enumerate(m) if e)


def poly_add(a: CoeffPoly, b: CoeffPoly) -> CoeffPoly:
    return a + b


def poly_mul(a: CoeffPoly, b: CoeffPoly) -> CoeffPoly:
    return a * b


def poly_diff(a: CoeffPoly, k: int) -> CoeffPoly:
    return a.diff(k)


def gen_values(ctx: RingContext, values) -> list:
    """Normalise a value assignment to a list indexed by generator id.

    ``values`` may map :class:`PairGen` (or ``(i, j, kind)`` tuples) to
    rationals, or already be a list indexed by generator id (``None`` for
    unassigned entries).
    """
    if isinstance(values, list):
        return values
    out = [None] * ctx.ngen
    for g, v in values.items():
        i, j, kind = g
        out[ctx.gen_id(i, j, kind)] = Q(v)
    return out


def poly_eval(a: CoeffPoly, values, allow_zeta: bool = True, cache: dict | None = None) -> Rational:
    """Substitute rational values for the generators.

    ``cache`` may be shared between calls with the same assignment to reuse
    monomial values.
    """
    vals = gen_values(a.ctx, values)
    if cache is None:
        cache = {}
    total = ZERO
    for m, c in a.terms.items():
        v = cache.get(m)
        if v is None:
            v = ONE
            for g, e in enumerate(m):
                if e:
                    x = vals[g]
                    if x is None:
                        if g % 3 == Z and not allow_zeta:
                            raise ZetaNotEvaluable()
                        raise UnassignedGenerator(str(a.ctx.gen(g)))
                    v *= x if e == 1 else x ** e
            cache[m] = v
        total += c * v
    return total


def iter_monomial(ctx: RingContext, m: Monomial) -> Iterable[Tuple[PairGen, int]]:
    for g, e in enumerate(m):
        if e:
            yield ctx.gen(g), e
