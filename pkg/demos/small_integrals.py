"""Build the integral for two, three and four particles and check it
commutes with the Hamiltonian on all three evaluation backends.

    python3 demos/small_integrals.py [m]
"""
import sys

from deformed_cm import CMSystem, Q, check_identity, op_commutator

m = Q(sys.argv[1] if len(sys.argv) > 1 else "3/2")

for n in (2, 3):
    S = CMSystem(n, m)
    print("n = %d, m = %s" % (n, m))
    print("  H =", S.H())
    print("  I =", S.I())
    # on g2 = g3 = 0 the commutator may already vanish term by term
    print("  [I, H] syntactically zero:", op_commutator(S.I(), S.H()).is_zero())
    print()

S4 = CMSystem(4, m, "4/3", "-8/27")
print("n = 4 on the trigonometric curve: %d derivative monomials in I" % len(S4.I().terms))
for n in (3, 4, 5):
    for backend in ("rational", "trig", "elliptic"):
        if backend == "elliptic" and n > 4:
            continue
        rep = check_identity("integral", n, backend, m_values=[m], trials=5, seed=1)
        print("  [I, H] = 0  n=%d  %-8s  %s  (%d coefficient evaluations)"
              % (n, backend, rep.status, rep.evaluations))
