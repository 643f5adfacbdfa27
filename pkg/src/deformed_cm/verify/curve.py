"""Exact rational arithmetic on y^2 = 4x^3 - g2 x - g3.

The map z -> (wp(z), wp'(z)) is a group homomorphism onto this curve, so
wp and wp' of x_i - x_j can be read off the difference of two rational
points.  Arithmetic is done in the short form y'^2 = x^3 + a x + b with
y = 2y', a = -g2/4, b = -g3/4.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Tuple

from ..errors import DegeneratePoint, RetryBudgetExhausted
from ..ring import Q, Rational

Point = Optional[Tuple[Rational, Rational]]  # None is the point at infinity
INFINITY: Point = None


def on_curve(P: Point, g2, g3) -> bool:
    if P is None:
        return True
    x, y = P
    return y * y == 4 * x ** 3 - g2 * x - g3


@dataclass(frozen=True)
class CurveContext:
    g2: Rational
    g3: Rational
    P1: Point
    P2: Point

    def __post_init__(self):
        object.__setattr__(self, "g2", Q(self.g2))
        object.__setattr__(self, "g3", Q(self.g3))
        if self.g2 ** 3 - 27 * self.g3 ** 2 == 0:
            raise ValueError("singular curve: g2^3 = 27 g3^2")
        for P in (self.P1, self.P2):
            if P is None or not on_curve(P, self.g2, self.g3):
                raise ValueError("base point %r is not an affine point of the curve" % (P,))
        if self.P1[0] == self.P2[0]:
            raise ValueError("base points must satisfy P1 != +-P2")

    @classmethod
    def through(cls, P1, P2) -> "CurveContext":
        """The curve through two affine points with distinct x coordinates.

        Solves  g2 x_i + g3 = 4 x_i^3 - y_i^2  for (g2, g3).
        """
        (x1, y1), (x2, y2) = (tuple(map(Q, P1)), tuple(map(Q, P2)))
        if x1 == x2:
            raise ValueError("need distinct x coordinates")
        r1 = 4 * x1 ** 3 - y1 ** 2
        r2 = 4 * x2 ** 3 - y2 ** 2
        g2 = (r1 - r2) / (x1 - x2)
        g3 = r1 - g2 * x1
        return cls(g2, g3, (x1, y1), (x2, y2))

    @classmethod
    def random(cls, rng: random.Random, box: int = 5, retries: int = 32) -> "CurveContext":
        for _ in range(retries):
            pts = []
            for _ in range(2):
                x = Q(rng.randint(-box, box)) / rng.randint(1, 3)
                y = Q(rng.randint(-box, box)) / rng.randint(1, 3)
                pts.append((x, y))
            if pts[0][0] == pts[1][0] or pts[0][1] == 0 or pts[1][1] == 0:
                continue
            try:
                return cls.through(*pts)
            except ValueError:
                continue
        raise RetryBudgetExhausted("could not sample a nonsingular curve")

    # group law -------------------------------------------------------------
    def add(self, P: Point, Q_: Point) -> Point:
        R = curve_add(P, Q_, self.g2)
        if not on_curve(R, self.g2, self.g3):
            raise AssertionError("group law left the curve")
        return R

    def neg(self, P: Point) -> Point:
        return None if P is None else (P[0], -P[1])

    def sub(self, P: Point, Q_: Point) -> Point:
        return self.add(P, self.neg(Q_))

    def mul(self, k: int, P: Point) -> Point:
        """k*P by double-and-add (k may be negative)."""
        if k < 0:
            return self.mul(-k, self.neg(P))
        R: Point = None
        A = P
        while k:
            if k & 1:
                R = self.add(R, A)
            A = self.add(A, A)
            k >>= 1
        return R

    def combo(self, a: int, b: int) -> Point:
        return self.add(self.mul(a, self.P1), self.mul(b, self.P2))


def curve_add(P: Point, Q_: Point, g2) -> Point:
    """Chord-tangent addition on y^2 = 4x^3 - g2 x - g3 (g3 is not needed)."""
    if P is None:
        return Q_
    if Q_ is None:
        return P
    x1, y1 = P
    x2, y2 = Q_
    # short form: y' = y/2, a = -g2/4
    a = -Q(g2) / 4
    s1, s2 = y1 / 2, y2 / 2
    if x1 == x2:
        if s1 == -s2:
            return None
        lam = (3 * x1 * x1 + a) / (2 * s1)
    else:
        lam = (s2 - s1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    s3 = lam * (x1 - x3) - s1
    return (x3, 2 * s3)


def wp_pair(ctx: CurveContext, Pi: Point, Pj: Point) -> Tuple[Rational, Rational]:
    """(wp, wp') at the difference of two group elements."""
    D = ctx.sub(Pi, Pj)
    if D is None:
        raise DegeneratePoint("x_i - x_j hits a lattice point")
    return D
