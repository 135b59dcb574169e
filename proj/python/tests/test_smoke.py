from fractions import Fraction

import pytest

import hodgebox as hb


def test_mixed_volume_two_paths():
    assert hb.mixed_volume([[1, 2], [3, 1]]) == Fraction(7, 2)
    assert hb.mixed_volume([[1, 2], [3, 1]], derivatives=True) == Fraction(7, 2)
    assert hb.mixed_volume([["1/2", 2, 3]], [3]) == 3


def test_matrix_helpers():
    assert hb.det([[1, 2], [3, 1]]) == -5
    assert hb.inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert hb.is_hyperbolic([[1, 2], [2, 1]])
    assert hb.sylvester_violation([[1, 2], [2, 1]]) is None
    assert hb.sylvester_violation([[2, 1], [1, 2]]) == ([0, 1], Fraction(3))


def test_homothetic_pair():
    m = hb.fedotov_matrix([[1, 3], [2, 6]], 1)
    assert m == [[3, 6], [6, 12]]


def test_primitive_dimension():
    assert len(hb.primitive_basis(4, 2)) == 2


def test_certificate_round_trip():
    cert = hb.construct_certificate(4, 2)
    assert cert["kind"] == "hodge-k2"
    assert cert["pairings"]["xMy"] == "0"
    assert Fraction(cert["pairings"]["xMx"]) > 0
    ok, reason = hb.verify_certificate(cert)
    assert ok, reason
    cert["violation"]["det"] = "1"
    ok, _ = hb.verify_certificate(cert)
    assert not ok


def test_errors():
    with pytest.raises(ValueError):
        hb.det([[1, 2], ["x", 1]])
    with pytest.raises(TypeError):
        hb.det([[1.5]])
