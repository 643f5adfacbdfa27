"""Exact functional zero-testing: evaluation backends, identities, Laurent checks."""

from .backends import BACKENDS, Elliptic, RationalDeg, Trig, make_backend
from .curve import CurveContext
from .identities import IDENTITIES, LEMMA_SUITE, check_identity, run_suite, verify_zero
from .report import Report

__all__ = [
    "BACKENDS", "Elliptic", "RationalDeg", "Trig", "make_backend", "CurveContext",
    "IDENTITIES", "LEMMA_SUITE", "check_identity", "run_suite", "verify_zero", "Report",
]
