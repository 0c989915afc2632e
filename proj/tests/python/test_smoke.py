from fractions import Fraction

import pytest

import jettower


def test_central_monomial_top_coefficient():
    assert jettower.reduce(2, "u1^2 u2^2") == [0, 6, -4, 1]
    assert jettower.reduce(3, "c1 u1^3 u2^3 u3^2")[-1] == -1


def test_canonical_weight():
    assert jettower.canonical_weight(5) == [54, 18, 6, 2, 1]


def test_morse_n5_leading_coefficients():
    P, Pp = jettower.morse_polynomials(5)
    assert P[6] == 82970555252684668951323755447424
    assert Pp[6] == -81064936492382180549906181650347200
    assert P[0] == 0 and Pp[0] == 0


def test_thresholds():
    assert jettower.degree_threshold(3) == 1019
    assert jettower.degree_threshold(2, [2, 1]) == 114
    assert jettower.h0_threshold(2) == 15
    assert jettower.h0_threshold(3) == 97


def test_ledger_and_certificate():
    ledger = jettower.bound_ledger(2)
    assert ledger["lambda_bound"] == 4
    assert ledger["d_bound"] == 2**48
    assert not jettower.check_2n5(4)
    assert jettower.check_2n5(5)


def test_euler_characteristics():
    assert jettower.chi_exact(2, [1, 0]) == [0, Fraction(-7, 3), 2, Fraction(-2, 3)]
    assert jettower.chi_e_leading(2) == [0, Fraction(77, 324), Fraction(-17, 162), Fraction(1, 162)]


def test_jets():
    rows = jettower.verify_jets(3)
    assert rows and all(passed for _, _, passed in rows)


def test_errors_become_python_exceptions():
    with pytest.raises(ValueError):
        jettower.h0_threshold(4)
    with pytest.raises(ValueError):
        jettower.reduce(2, "u1^2")
