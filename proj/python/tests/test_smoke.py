"""Smoke tests for the pyu21 extension: exact values only."""

import pyu21
import pytest


def test_least_nonresidue():
    assert pyu21.least_nonresidue(3) == 2
    assert pyu21.least_nonresidue(5) == 2
    assert pyu21.least_nonresidue(7) == 3
    with pytest.raises(pyu21.U21DomainError):
        pyu21.least_nonresidue(2)


def test_additive_char_sum_vanishes():
    assert pyu21.additive_char_sum(3) == "0"
    assert pyu21.additive_char_sum(5) == "0"
    assert pyu21.additive_char_sum(3, lo=0) == "1"


def test_eigen_pairs():
    assert pyu21.eigen_pair("ru2-i", 3) == ("24", "32")
    assert pyu21.eigen_pair("ru3", 3) == ("36", "48")
    assert pyu21.eigen_pair("ru2-i", 5) == ("120", "144")
    assert pyu21.eigen_pair("ru3", 5) == ("150", "180")


def test_theta_values():
    assert pyu21.theta_value("ru2-i", 3) == "4"   # q + 1
    assert pyu21.theta_value("ru2-i", 5) == "6"
    assert pyu21.theta_value("ru3", 3) == "0"


def test_whittaker_coefficients():
    coeffs = pyu21.whittaker_coefficients("24", "32", "3", M=3)
    assert coeffs == ["1", "-1/27", "1/729", "-1/19683"]


def test_zeta_renders():
    assert pyu21.zeta_closed("24", "32", "3") == "1 / (1 + 1/3*X)"
    assert (
        pyu21.zeta_factored("24", "-1/3", "3")
        == "1 / (1 - 2/3*X - 1/3*X^2)"
    )


def test_classify_table():
    st = pyu21.classify("steinberg", 3)
    assert st["N"] == 2
    assert st["L"] == "1 / (1 - 1/9*X)"
    assert st["epsilon"] == "9*X^2"
    assert st["divides_bound"] is True

    ru3 = pyu21.classify("ru3", 3, c=1)
    assert ru3["N"] == 1
    assert ru3["L"] == "1 / (1 - 2*X + X^2)"

    ups = pyu21.classify("unramified-ps", 3, a="2")
    assert ups["N"] == 0


def test_cross_check_end_to_end():
    result = pyu21.cross_check("ru2", 3)
    assert result["ok"] is True
    assert result["values"]["nu"] == "24"
    result = pyu21.cross_check("ru3", 3, c=1)
    assert result["ok"] is True


def test_monomial_check():
    assert pyu21.monomial_check(False, 1, 3) is True
    assert pyu21.monomial_check(True, 1, 3) is False


def test_verify_suite():
    passed, failed, body = pyu21.verify("monomial,estimates", p=3, seed=1)
    assert failed == 0
    assert passed > 0
    assert "summary" in body
