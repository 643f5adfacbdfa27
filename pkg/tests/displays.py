"""Hand transcriptions of the explicit small-n integrals, built directly from
partials and multiplication operators (no use of the recursive builders)."""
from deformed_cm.opalg import DiffOp, ad_zeta


def _kit(S):
    c = S.ctx
    d = lambda *i: DiffOp.partial(c, *i)
    M = lambda p: DiffOp.mult(c, p)
    return S.m, d, M, S.wp


def I2(S):
    m, d, M, P = _kit(S)
    return d(1, 2) + d(1, 1).scale((1 - m) / 2) + M(P(1, 2)).scale(m + 1)


def I3(S):
    m, d, M, P = _kit(S)
    out = d(1, 2, 3) + ((d(2) + d(3)) * d(1, 1)).scale((1 - m) / 2)
    out = out + d(1, 1, 1).scale((1 - m) * (1 - 2 * m) / 6)
    out = out + (M(P(2, 3).scale(m)) * d(1) + M(P(1, 3)) * d(2) + M(P(1, 2)) * d(3)).scale(m + 1)
    w = M(P(1, 2) + P(1, 3))
    return out + (w * d(1) + d(1) * w).scale((1 - m) / 2 * (m + 1))


def _I4_common(S):
    m, d, M, P = _kit(S)
    out = d(1, 2, 3, 4) + ((d(2, 3) + d(2, 4) + d(3, 4)) * d(1, 1)).scale((1 - m) / 2)
    out = out + ((d(2) + d(3) + d(4)) * d(1, 1, 1)).scale((1 - m) * (1 - 2 * m) / 6)
    out = out + d(1, 1, 1, 1).scale((1 - m) * (1 - 2 * m) * (1 - 3 * m) / 24)
    out = out + (M(P(3, 4)) * d(1, 2) + M(P(2, 4)) * d(1, 3) + M(P(2, 3)) * d(1, 4)).scale(m * (m + 1))
    out = out + (M(P(1, 4)) * d(2, 3) + M(P(1, 3)) * d(2, 4) + M(P(1, 2)) * d(3, 4)).scale(m + 1)
    inner = M(P(1, 3) + P(1, 4)) * d(2) + M(P(1, 2) + P(1, 4)) * d(3) + M(P(1, 2) + P(1, 3)) * d(4)
    out = out + (d(1) * inner + inner * d(1)).scale((1 - m) / 2 * (m + 1))
    w = M(P(1, 2) + P(1, 3) + P(1, 4))
    out = out + (w * d(1, 1) + d(1) * w * d(1) + d(1, 1) * w).scale((1 - m) * (1 - 2 * m) / 6 * (m + 1))
    out = out + (M(P(3, 4) + P(2, 4) + P(2, 3)) * d(1, 1)).scale((1 - m) / 2 * m * (m + 1))
    out = out + M(P(1, 2) * P(3, 4) + P(1, 3) * P(2, 4) + P(1, 4) * P(2, 3)).scale(m * (m + 1) ** 2)
    return out


def I4_printed(S):
    """Four-particle display exactly as printed, quadratic (1-m) block included."""
    m, d, M, P = _kit(S)
    quad = P(1, 4) * P(2, 4) + P(1, 4) * P(3, 4) + P(2, 4) * P(3, 4)
    return _I4_common(S) + M(quad).scale((1 - m) * (m + 1) ** 2)


def I4_reindexed(S):
    """Same display with the (1-m)(m+1)^2 block over the pairs touching particle 1."""
    m, d, M, P = _kit(S)
    quad = P(1, 2) * P(1, 3) + P(1, 2) * P(1, 4) + P(1, 3) * P(1, 4)
    return _I4_common(S) + M(quad).scale((1 - m) * (m + 1) ** 2)


def X4(S):
    """X for n = 4 written with nested zeta commutators of D^k."""
    m = S.m
    z = lambda j, T: ad_zeta(j, T, m)
    D1, D2, D3, D4 = (S.D(k) for k in (1, 2, 3, 4))
    out = D4 + z(2, D3) + z(3, D3) + z(4, D3) + z(2, z(3, D2)) + z(2, z(4, D2)) + z(3, z(4, D2))
    out = out + (D2 + z(4, D1)).lmul(S.u(2, 3)) + (D2 + z(3, D1)).lmul(S.u(2, 4))
    return out + (D2 + z(2, D1)).lmul(S.u(3, 4))


def I3_recursive(S):
    d = lambda *i: DiffOp.partial(S.ctx, *i)
    return (S.I((2, 3)) * d(1) + S.I((1, 3)) * d(2) + S.I((1, 2)) * d(3)
            - d(1, 2, 3).scale(2) + S.X())


def I4_recursive(S):
    d = lambda *i: DiffOp.partial(S.ctx, *i)
    full = (1, 2, 3, 4)
    out = d(*full).scale(3) + S.X()
    for j in full:
        out = out + S.I(tuple(x for x in full if x != j)) * d(j)
    for k in range(1, 5):
        for l in range(k + 1, 5):
            out = out - S.I(tuple(x for x in full if x not in (k, l))) * d(k, l)
    return out
