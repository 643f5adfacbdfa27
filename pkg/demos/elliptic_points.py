"""Exact evaluation on an elliptic curve through two rational points, and
what a single wrong constant in I looks like to the checker.

    python3 demos/elliptic_points.py [seed]
"""
import sys

from deformed_cm import CMSystem, op_commutator, verify_zero
from deformed_cm.opalg import DiffOp
from deformed_cm.ring import CoeffPoly
from deformed_cm.verify import Elliptic

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
be = Elliptic(seed=seed)
print("curve:", be.describe())

A = be.sample_assignment(3, seed)
print("x_i -> a_i P1 + b_i P2 with (a_i, b_i) =", A.data)
vals = be.values(A, 3)
ctx = be.ring(3)
for i, j in ctx.pairs:
    w, w1 = vals[ctx.gen_id(i, j, "P")], vals[ctx.gen_id(i, j, "P1")]
    print("  wp(x%d - x%d) = %s, wp' = %s, on curve: %s"
          % (i, j, w, w1, w1 * w1 == 4 * w ** 3 - be.g2 * w - be.g3))

S = CMSystem(3, "3/2", be.g2, be.g3)
I, H = S.I(), S.H()
print("\n[I, H]:", verify_zero(op_commutator(I, H), be).status)

alpha, c = I.sorted_terms()[-1]
mono, v = sorted(c.terms.items())[0]
bad = DiffOp(I.ctx, {**I.terms, alpha: CoeffPoly(c.ctx, {**c.terms, mono: v + 1})})
rep = verify_zero(op_commutator(bad, H), be)
print("after adding 1 to the coefficient of d^%s:" % (alpha,), rep.status)
print("witness:", rep.witness)
