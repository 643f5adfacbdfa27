"""Exact construction and verification of the quantum integrals of the
deformed elliptic Calogero-Moser system."""

from .ring import CoeffPoly, PairGen, Q, RingContext, fmt
from .series import LaurentSeries, bernoulli_table, gamma_table, trig_gamma, wp_series, zeta_series
from .opalg import DiffOp, ad_theta, ad_zeta, ad_zeta_set, op_commutator, op_mul
from .cmbuild import CMSystem, ConstantTable, build_D, p0, p2i
from .serialize import op_dumps, op_loads
from .verify import Report, check_identity, make_backend, verify_zero

__all__ = [
    "CoeffPoly", "PairGen", "Q", "RingContext", "fmt",
    "LaurentSeries", "bernoulli_table", "gamma_table", "trig_gamma", "wp_series", "zeta_series",
    "DiffOp", "ad_theta", "ad_zeta", "ad_zeta_set", "op_commutator", "op_mul",
    "CMSystem", "ConstantTable", "build_D", "p0", "p2i",
    "op_dumps", "op_loads", "Report", "check_identity", "make_backend", "verify_zero",
]

__version__ = "0.1.0"
