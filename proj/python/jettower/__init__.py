"""Exact intersection numbers on Demailly jet towers."""

from ._jettower import (
    bound_ledger,
    canonical_weight,
    check_2n5,
    chi_e_leading,
    chi_exact,
    degree_threshold,
    h0_threshold,
    morse_polynomials,
    reduce,
    verify_jets,
)

__all__ = [
    "bound_ledger",
    "canonical_weight",
    "check_2n5",
    "chi_e_leading",
    "chi_exact",
    "degree_threshold",
    "h0_threshold",
    "morse_polynomials",
    "reduce",
    "verify_jets",
]
