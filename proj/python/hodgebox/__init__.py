"""Exact mixed volumes of boxes and Fedotov-matrix certificates.

Rationals are returned as fractions.Fraction. Inputs accept anything whose
str() parses as "p" or "p/q" (int, Fraction, or such a string).
"""

import json
from fractions import Fraction

from . import _hodgebox

__all__ = [
    "mixed_volume",
    "fedotov_matrix",
    "det",
    "inertia",
    "is_hyperbolic",
    "sylvester_violation",
    "primitive_basis",
    "construct_certificate",
    "verify_certificate",
]


def _s(x):
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass int, Fraction or str")
    return str(Fraction(x)) if not isinstance(x, str) else x


def _rows(rows):
    return [[_s(x) for x in row] for row in rows]


def _fracs(rows):
    return [[Fraction(x) for x in row] for row in rows]


def mixed_volume(widths, multiplicities=None, derivatives=False):
    """V(K_1[m_1], ..., K_r[m_r]) for boxes given by their widths."""
    return Fraction(_hodgebox.mixed_volume(_rows(widths), list(multiplicities or []), derivatives))


def fedotov_matrix(bodies, k, tail=(), threads=1):
    return _fracs(_hodgebox.fedotov_matrix(_rows(bodies), k, _rows(tail), threads))


def det(matrix):
    return Fraction(_hodgebox.det(_rows(matrix)))


def inertia(matrix):
    """(n_pos, n_neg, n_zero)"""
    return _hodgebox.inertia(_rows(matrix))


def is_hyperbolic(matrix):
    return _hodgebox.is_hyperbolic(_rows(matrix))


def sylvester_violation(matrix, threads=1):
    """(subset, det) for the first violating principal subset, or None."""
    v = _hodgebox.sylvester_violation(_rows(matrix), threads)
    if v is None:
        return None
    return list(v[0]), Fraction(v[1])


def primitive_basis(n, k):
    """Primitive operators for L = C = cube, coordinates over k-subsets in lex order."""
    return _fracs(_hodgebox.primitive_basis(n, k))


def construct_certificate(n, k, threads=1):
    """Certificate as a parsed JSON dict."""
    return json.loads(_hodgebox.construct_certificate(n, k, threads))


def verify_certificate(certificate, threads=1):
    """(ok, reason). Accepts a dict or JSON text."""
    text = certificate if isinstance(certificate, str) else json.dumps(certificate)
    return _hodgebox.verify_certificate(text, threads)
