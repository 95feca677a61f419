import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasisolve import (BaseKey, BasisSpec, InvalidBase, InvalidEquation, OperatorMatrix,
                        operator_polynomial, pascal_matrix, shift_matrix, shift_matrix_complex,
                        shift_matrix_real)
from quasisolve.matrices import rotation_block

from conftest import SQRT2, complex_bases, real_bases

# frozen reference matrices for the two trigonometric equations
COS_PI8_T = np.array([[math.cos(math.pi / 8), -math.sin(math.pi / 8)],
                       [math.sin(math.pi / 8), math.cos(math.pi / 8)]])
COS_PI8_R = np.array([[1 / SQRT2 + 1, -1 / SQRT2],
                       [1 / SQRT2, 1 / SQRT2 + 1]])
SIN_PI2_T = np.array([[0, -1, 0, -1], [1, 0, 1, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=float)
SIN_PI2_R = np.array([[0, 0, -2, 0], [0, 0, 0, -2], [0, 0, 0, 0], [0, 0, 0, 0]], dtype=float)


def test_pascal_examples():
    np.testing.assert_array_equal(pascal_matrix(3), [[1, 1, 1], [0, 1, 2], [0, 0, 1]])
    np.testing.assert_array_equal(pascal_matrix(1), [[1]])
    assert pascal_matrix(5)[2, 4] == 6


@pytest.mark.parametrize("size", range(1, 12))
def test_pascal_matches_binomials(size):
    expected = [[math.comb(j, i) for j in range(size)] for i in range(size)]
    np.testing.assert_array_equal(pascal_matrix(size), expected)


def test_pascal_rejects_empty():
    with pytest.raises(ValueError):
        pascal_matrix(0)


def test_cos_pi8_matrices():
    basis = BasisSpec(BaseKey.complex(1, pi_ratio=Fraction(1, 8)), 0, 0)
    T = shift_matrix(basis)
    np.testing.assert_allclose(T.entries, COS_PI8_T, atol=1e-12, rtol=0)
    R = operator_polynomial(T, [0.0, 1.0])
    np.testing.assert_allclose(R.entries, COS_PI8_R, atol=1e-12, rtol=0)


def test_sin_pi2_matrices():
    basis = BasisSpec(BaseKey.complex(1, pi_ratio=Fraction(1, 2)), 1, 0)
    T = shift_matrix_complex(basis.base, basis)
    assert T.size == 4 and T.basis == BasisSpec(basis.base, 0, 1)
    np.testing.assert_allclose(T.entries, SIN_PI2_T, atol=1e-12, rtol=0)
    R = operator_polynomial(T, [0.0, 1.0])
    np.testing.assert_allclose(R.entries, SIN_PI2_R, atol=1e-12, rtol=0)


def test_real_shift_for_minus_one():
    basis = BasisSpec(BaseKey.real(-1), 0, 1)
    T = shift_matrix_real(basis.base, basis)
    np.testing.assert_array_equal(T.entries, [[-1, -1], [0, -1]])


def test_operator_polynomial_scalar_case():
    T = OperatorMatrix(BasisSpec(BaseKey.real(2), 0, 0), np.array([[2.0]]))
    np.testing.assert_array_equal(operator_polynomial(T, [-2.0]).entries, [[0.0]])


def test_operator_polynomial_rejects_degenerate():
    T = shift_matrix(BasisSpec(BaseKey.real(2), 0, 0))
    with pytest.raises(InvalidEquation):
        operator_polynomial(T, [])
    with pytest.raises(InvalidEquation):
        operator_polynomial(T, [1.0, 0.0])


def test_kind_mismatch_rejected():
    real = BasisSpec(BaseKey.real(2), 0, 1)
    cplx = BasisSpec(BaseKey.complex(1, 1.0), 0, 1)
    with pytest.raises(InvalidBase):
        shift_matrix_real(cplx.base, cplx)
    with pytest.raises(InvalidBase):
        shift_matrix_complex(real.base, real)
    with pytest.raises(InvalidBase):
        shift_matrix_real(BaseKey.real(3), real)


def test_operator_matrix_is_read_only():
    T = shift_matrix(BasisSpec(BaseKey.real(2), 0, 1))
    with pytest.raises(ValueError):
        T.entries[0, 0] = 1.0


def reexpand_shift(basis: BasisSpec) -> np.ndarray:
    """Shift matrix recovered by least squares from sampled basis functions."""
    ns = np.arange(2 * basis.dimension + 4)
    now = basis.function_values(ns)
    nxt = basis.function_values(ns + 1)
    sol, *_ = np.linalg.lstsq(now, nxt, rcond=None)
    return sol


def test_reexpansion_minus_one():
    basis = BasisSpec(BaseKey.real(-1), 0, 1)
    np.testing.assert_allclose(reexpand_shift(basis), [[-1, -1], [0, -1]], atol=1e-8)


@settings(max_examples=60, deadline=None)
@given(st.one_of(real_bases(), complex_bases()), st.integers(0, 3))
def test_shift_matrix_matches_collocation(base, d):
    basis = BasisSpec(base, 0, d)
    T = shift_matrix(basis).entries
    np.testing.assert_allclose(T, reexpand_shift(basis), atol=1e-8)


@pytest.mark.parametrize("mu", [-2.0, -1.0, 0.5, 1.0, 3.0])
@pytest.mark.parametrize("d", range(0, 7))
def test_nilpotency(mu, d):
    T = shift_matrix(BasisSpec(BaseKey.real(mu), 0, d)).entries
    N = np.linalg.matrix_power(T - mu * np.eye(d + 1), d + 1)
    assert np.max(np.abs(N)) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(complex_bases(), st.integers(0, 5))
def test_kronecker_consistency(base, s):
    T = shift_matrix(BasisSpec(base, 0, s)).entries
    J = rotation_block(base.phi)
    for i in range(s + 1):
        for j in range(s + 1):
            block = T[2 * i:2 * i + 2, 2 * j:2 * j + 2]
            np.testing.assert_allclose(block, base.modulus * math.comb(j, i) * J, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.one_of(real_bases(), complex_bases()), st.integers(0, 3),
       st.lists(st.floats(-3, 3), min_size=1, max_size=4))
def test_operator_polynomial_matches_power_sum(base, d, coeffs):
    coeffs = coeffs[:-1] + [coeffs[-1] if coeffs[-1] != 0 else 1.0]
    T = shift_matrix(BasisSpec(base, 0, d))
    t = T.entries
    k = len(coeffs)
    direct = np.linalg.matrix_power(t, k)
    for i, a in enumerate(coeffs, start=1):
        direct = direct + a * np.linalg.matrix_power(t, k - i)
    got = operator_polynomial(T, coeffs).entries
    np.testing.assert_allclose(got, direct, atol=1e-9 * (1 + np.abs(direct).max()))


def test_real_shift_examples():
    basis = BasisSpec(BaseKey.real(2), 0, 2)
    np.testing.assert_array_equal(shift_matrix(basis).entries, 2 * pascal_matrix(3))
    np.testing.assert_array_equal(shift_matrix(BasisSpec(BaseKey.real(1), 0, 0)).entries, [[1]])


def test_quarter_turn_applied_twice():
    T = shift_matrix(BasisSpec(BaseKey.complex(1, math.pi / 2), 0, 0)).entries
    np.testing.assert_allclose(T @ T, [[-1, 0], [0, -1]], atol=1e-15)
