"""Exact evaluation regimes for the pair generators.

rational      wp(z) = z^-2, zeta(z) = 1/z                    (g2 = g3 = 0)
trig          wp(z) = 1/3 + 1/sinh(z)^2, via q_i ~ e^(x_i)    (g2, g3) = (4/3, -8/27)
elliptic      x_i -> a_i P1 + b_i P2 on a random rational curve

Only the rational regime has a closed rational form for zeta.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from gmpy2 import mpq

from ..errors import DegeneratePoint, RetryBudgetExhausted, ZetaNotEvaluable
from ..ring import P, P1, Z, PairGen, Q, Rational, RingContext, ZERO
from ..series import TRIG_G2, TRIG_G3
from .curve import CurveContext, wp_pair

MAX_RETRIES = 32


def _rand_rational(rng: random.Random, num: int = 40, den: int = 7) -> Rational:
    return mpq(rng.randint(-num, num), rng.randint(1, den))


@dataclass(frozen=True)
class PointAssignment:
    """Per-variable sample: rationals c_i, q_i or integer pairs (a_i, b_i)."""

    backend: str
    data: tuple

    def to_json(self):
        if self.backend == "elliptic":
            return [list(ab) for ab in self.data]
        return ["%d/%d" % (v.numerator, v.denominator) for v in self.data]


class Backend:
    name = "abstract"
    zeta = False

    g2: Rational = ZERO
    g3: Rational = ZERO

    def ring(self, n: int) -> RingContext:
        return RingContext(n, self.g2, self.g3)

    def describe(self) -> dict:
        return {"name": self.name, "g2": _f(self.g2), "g3": _f(self.g3)}

    def _draw(self, n: int, rng: random.Random) -> PointAssignment:
        raise NotImplementedError

    def _pair(self, A: PointAssignment, i: int, j: int) -> Tuple[Rational, Rational, Optional[Rational]]:
        raise NotImplementedError

    def sample_assignment(self, n: int, rng_or_seed) -> PointAssignment:
        """A valid assignment for n variables; resamples degenerate draws."""
        rng = rng_or_seed if isinstance(rng_or_seed, random.Random) else random.Random(rng_or_seed)
        for _ in range(MAX_RETRIES):
            A = self._draw(n, rng)
            try:
                self.values(A, n)
            except DegeneratePoint:
                continue
            return A
        raise RetryBudgetExhausted("%s: %d degenerate samples in a row" % (self.name, MAX_RETRIES))

    def values(self, A: PointAssignment, n: int) -> List[Optional[Rational]]:
        """Generator values indexed by generator id (None for zeta off the rational backend)."""
        ctx = RingContext(n)  # only for pair enumeration
        out: List[Optional[Rational]] = [None] * ctx.ngen
        for pidx, (i, j) in enumerate(ctx.pairs):
            w, w1, z = self._pair(A, i, j)
            out[3 * pidx + P] = w
            out[3 * pidx + P1] = w1
            out[3 * pidx + Z] = z
        return out

    def eval_generator(self, g: PairGen, A: PointAssignment) -> Rational:
        w, w1, z = self._pair(A, g.i, g.j)
        if g.kind == "P":
            return w
        if g.kind == "P1":
            return w1
        if z is None:
            raise ZetaNotEvaluable()
        return z


def _f(q):
    q = Q(q)
    return "%d/%d" % (q.numerator, q.denominator)


class RationalDeg(Backend):
    name = "rational"
    zeta = True

    def _draw(self, n, rng):
        return PointAssignment(self.name, tuple(_rand_rational(rng) for _ in range(n)))

    def _pair(self, A, i, j):
        d = A.data[i - 1] - A.data[j - 1]
        if not d:
            raise DegeneratePoint("c_%d = c_%d" % (i, j))
        inv = 1 / d
        return inv * inv, -2 * inv ** 3, inv


class Trig(Backend):
    """wp(z) = 1/3 + 4Q/(Q-1)^2 and wp'(z) = -8Q(Q+1)/(Q-1)^3 with Q = e^(2z)."""

    name = "trig"
    g2 = TRIG_G2
    g3 = TRIG_G3

    def _draw(self, n, rng):
        vals = []
        for _ in range(n):
            q = ZERO
            while not q:
                q = _rand_rational(rng, 12, 5)
            vals.append(q)
        return PointAssignment(self.name, tuple(vals))

    def _pair(self, A, i, j):
        qi, qj = A.data[i - 1], A.data[j - 1]
        if not qi or not qj:
            raise DegeneratePoint("q must be nonzero")
        Qv = (qi / qj) ** 2
        if Qv == 1:
            raise DegeneratePoint("q_%d = +-q_%d" % (i, j))
        d = Qv - 1
        return mpq(1, 3) + 4 * Qv / (d * d), -8 * Qv * (Qv + 1) / d ** 3, None


class Elliptic(Backend):
    name = "elliptic"

    def __init__(self, curve: CurveContext | None = None, seed: int = 0, box: int = 2):
        self.curve = curve if curve is not None else CurveContext.random(random.Random(seed))
        self.g2 = self.curve.g2
        self.g3 = self.curve.g3
        self.box = box
        self._points = {}
        # P1 -> +Y(Pi - Pj) must satisfy the addition theorem; check once
        if not _addition_sanity(self):
            raise AssertionError("elliptic backend fails the addition-theorem sign check")

    def describe(self):
        d = super().describe()
        d["P1"] = [_f(c) for c in self.curve.P1]
        d["P2"] = [_f(c) for c in self.curve.P2]
        return d

    def _draw(self, n, rng):
        b = self.box
        seen = set()
        data = []
        while len(data) < n:
            ab = (rng.randint(-b, b), rng.randint(-b, b))
            if ab not in seen:
                seen.add(ab)
                data.append(ab)
        return PointAssignment(self.name, tuple(data))

    def point(self, ab):
        hit = self._points.get(ab)
        if hit is None:
            hit = self._points[ab] = self.curve.combo(*ab)
        return hit

    def _pair(self, A, i, j):
        x, y = wp_pair(self.curve, self.point(A.data[i - 1]), self.point(A.data[j - 1]))
        return x, y, None


def _addition_sanity(be: Elliptic) -> bool:
    """det [[wp_12, wp_23, wp_31], [wp'_12, wp'_23, wp'_31], [1, 1, 1]] = 0 at a sample."""
    A = be.sample_assignment(3, random.Random(12345))
    vals = be.values(A, 3)
    ctx = RingContext(3)
    w = lambda i, j: vals[ctx.gen_id(i, j, "P")]
    w1 = lambda i, j: vals[ctx.gen_id(i, j, "P1")]
    a = (w(1, 2), w(2, 3), w(1, 3))
    b = (w1(1, 2), w1(2, 3), -w1(1, 3))
    det = (a[0] * (b[1] - b[2]) - a[1] * (b[0] - b[2]) + a[2] * (b[0] - b[1]))
    return det == 0


def make_backend(name: str, seed: int = 0) -> Backend:
    key = name.lower()
    if key in ("rational", "rationaldeg", "rat"):
        return RationalDeg()
    if key in ("trig", "trigonometric"):
        return Trig()
    if key in ("elliptic", "ell"):
        return Elliptic(seed=seed)
    raise ValueError("unknown backend %r (rational|trig|elliptic)" % name)


BACKENDS = ("rational", "trig", "elliptic")
