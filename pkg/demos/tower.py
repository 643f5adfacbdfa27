"""The tower L_0 = I, L_{k+1} = [theta, L_k] with theta = x_1/m + x_2 + ... + x_n,
and the commutator of theta with H.

    python3 demos/tower.py [n] [m]
"""
import sys

from deformed_cm import CMSystem, Q, ad_theta, check_identity
from deformed_cm.cmbuild import sum_partials

n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
m = Q(sys.argv[2] if len(sys.argv) > 2 else "2")
S = CMSystem(n, m)

for k, L in enumerate(S.tower()):
    print("L_%d (order %d): %d terms" % (k, L.order(), len(L.terms)))
print("L_%d is constant:" % n, ad_theta(S.tower()[-1], m))

print()
print("[theta, H] =", ad_theta(S.H(), m))
print("2 * sum d_j =", sum_partials(S.ctx).scale(2))
print()
for name in ("tower", "thetah", "htheta"):
    rep = check_identity(name, n, "rational", m_values=[m], trials=3)
    print("%-7s %s" % (name, rep.status), "" if rep.passed else rep.witness)
print("(htheta states [H, theta] = +2 sum d_j, which has the wrong sign)")
