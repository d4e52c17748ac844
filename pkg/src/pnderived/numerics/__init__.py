"""K-theoretic and cohomological invariants."""

from .chern import (
    ChernPolynomial,
    IntegralityError,
    chern_character,
    euler_pairing_ext,
    euler_pairing_hrr,
    line_bundle_ch,
    monad_chern_character,
    mukai_pairing,
    todd_class,
)
from .correspondence import (
    CorrespondenceClass,
    LatticeClass,
    corr_apply,
    corr_compose,
    elliptic_euler_form,
    fm_elliptic_apply,
)
from .hochschild import HochschildTables, HodgeTable, hh_curve, hh_pn, hkr_aggregate

__all__ = [
    "ChernPolynomial",
    "CorrespondenceClass",
    "HochschildTables",
    "HodgeTable",
    "IntegralityError",
    "LatticeClass",
    "chern_character",
    "corr_apply",
    "corr_compose",
    "elliptic_euler_form",
    "euler_pairing_ext",
    "euler_pairing_hrr",
    "fm_elliptic_apply",
    "hh_curve",
    "hh_pn",
    "hkr_aggregate",
    "line_bundle_ch",
    "monad_chern_character",
    "mukai_pairing",
    "todd_class",
]
