import pytest
import sympy as sp
from gmpy2 import mpq

from deformed_cm.errors import TruncationError
from deformed_cm.ring import Q
from deformed_cm.series import (TRIG_G2, TRIG_G3, LaurentSeries, bernoulli_table, gamma_table,
                                invariants_from_roots, trig_gamma, weierstrass_defect, wp_series,
                                zeta_series)

G2, G3 = mpq(7, 3), mpq(-5, 2)


def sym_gammas(K):
    """Coefficients of wp by matching (wp')^2 = 4 wp^3 - g2 wp - g3 order by order."""
    z, g2, g3 = sp.symbols("z g2 g3")
    cs = sp.symbols("c1:%d" % (K + 1))
    wp = z ** -2 + sum(c * z ** (2 * k) for k, c in enumerate(cs, 1))
    eq = sp.expand(sp.diff(wp, z) ** 2 - 4 * wp ** 3 + g2 * wp + g3)
    sol = {}
    # z^(2k-4) first involves c_k linearly
    for k, c in enumerate(cs, 1):
        e = eq.coeff(z, 2 * k - 4).subs(sol)
        sol[c] = sp.factor(sp.solve(e, c)[0])
    return [sol[c] for c in cs], g2, g3


def test_gamma_seeds():
    t = gamma_table(2, G2, G3)
    assert t[2] == G2 / 20
    assert t[4] == G3 / 28
    assert t.values == (G2 / 20, G3 / 28)


def test_gamma_against_coefficient_matching():
    sols, g2, g3 = sym_gammas(6)
    assert sols[2] == g2 ** 2 / 1200
    t = gamma_table(6, G2, G3)
    for k, expr in enumerate(sols, 1):
        val = expr.subs({g2: sp.Rational(7, 3), g3: sp.Rational(-5, 2)})
        assert t[2 * k] == mpq(int(val.p), int(val.q)), k


def test_gamma_rejects_empty_table():
    with pytest.raises(ValueError):
        gamma_table(0, 1, 1)


def test_bernoulli_against_generating_function():
    z = sp.symbols("z")
    ser = sp.series(z / (sp.exp(z) - 1), z, 0, 17).removeO()
    B = bernoulli_table(8)
    assert B[2] == mpq(1, 6) and B[4] == mpq(-1, 30)
    for k in range(1, 9):
        c = ser.coeff(z, 2 * k) * sp.factorial(2 * k)
        assert B[2 * k] == mpq(int(c.p), int(c.q))


def test_trig_gamma_examples():
    B = bernoulli_table(10)
    assert trig_gamma(1, B) == mpq(1, 15)
    assert trig_gamma(2, B) == -mpq(2 ** 6, 6) * B[6] / 24


def test_trig_gamma_against_sinh_expansion():
    z = sp.symbols("z")
    ser = sp.series(sp.Rational(1, 3) + 1 / sp.sinh(z) ** 2, z, 0, 18).removeO()
    B = bernoulli_table(10)
    for k in range(1, 9):
        c = ser.coeff(z, 2 * k)
        assert trig_gamma(k, B) == mpq(int(c.p), int(c.q))


def test_trig_invariants_from_roots():
    assert invariants_from_roots("1/3", "1/3", "-2/3") == (TRIG_G2, TRIG_G3)
    B = bernoulli_table(10)
    t = gamma_table(8, TRIG_G2, TRIG_G3)
    assert all(trig_gamma(k, B) == t[2 * k] for k in range(1, 9))


def test_wp_and_zeta_coefficients():
    t = gamma_table(12, G2, G3)
    W, Z = wp_series(24, t), zeta_series(24, t)
    assert W[-2] == 1 and W[0] == 0 and W[2] == t[2]
    assert all(W[e] == 0 for e in range(-1, 24, 2))
    assert Z[-1] == 1 and Z[0] == 0 and Z[3] == -t[2] / 3
    assert all(Z[e] == 0 for e in range(-2, 24, 2))
    assert (Z.diff() + W).is_zero()


def test_defect_vanishes_below_n_minus_6():
    N = 24
    for g2, g3 in [(G2, G3), (0, 0), (1, 1), (TRIG_G2, TRIG_G3)]:
        d = weierstrass_defect(wp_series(N, gamma_table(12, g2, g3)), g2, g3)
        assert d.is_zero_below(N - 6)


def test_defect_detects_wrong_gamma():
    t = gamma_table(12, G2, G3)
    vals = list(t.values)
    vals[2] += 1
    bad = type(t)(t.g2, t.g3, tuple(vals))
    d = weierstrass_defect(wp_series(24, bad), G2, G3)
    assert not d.is_zero_below(18)


def test_series_ops():
    W = wp_series(12, gamma_table(6, G2, G3))
    assert W.diff()[-3] == -2
    assert (W * W).lead == -4 and (W * W)[-4] == 1
    assert W.scale_arg(2)[-2] == mpq(1, 4)


def test_truncation_is_respected():
    W = wp_series(10, gamma_table(6, G2, G3))
    with pytest.raises(TruncationError):
        W[10]
    assert (W * W).order == 8
    with pytest.raises(TruncationError):
        wp_series(30, gamma_table(4, G2, G3))


def test_series_equality_and_constant():
    a = LaurentSeries(-1, [1, 0, 2])
    assert a + LaurentSeries.zero() == a
    assert LaurentSeries.constant(Q(3))[0] == 3
