import numpy as np
import pytest
from hypothesis import assume, given

from camat import (
    CircScalar,
    NonRealSpectrumError,
    Relation,
    ZeroDivisorError,
    add,
    inverse,
    magnitude,
    mul,
    parse_scalar,
    partial_order,
    scalar_from_vec,
    spectral_map,
    to_circ_matrix,
)

from conftest import scalar_tuples, scalars
from oracles import dense_circ, dft_coeffs

S3 = np.sqrt(3.0)


def close(a, b, tol=1e-12):
    return np.abs(np.asarray(a) - np.asarray(b)).max() <= tol


# -- construction ----------------------------------------------------------------


def test_coeffs_of_example_scalar():
    a = scalar_from_vec([2, 3, 1])
    assert close(a.coeffs, [6, -S3 * 1j, S3 * 1j])


def test_identity_and_zero_coeffs():
    assert close(scalar_from_vec([1, 0, 0, 0]).coeffs, [1, 1, 1, 1])
    assert close(scalar_from_vec([0, 0, 0]).coeffs, [0, 0, 0])


def test_empty_params_rejected():
    with pytest.raises(ValueError):
        scalar_from_vec([])


def test_real_flag_follows_input_dtype():
    assert CircScalar([1.0, 2.0]).is_real
    assert not CircScalar([1.0 + 0j, 2.0]).is_real


def test_from_coeffs_detects_symmetry():
    assert CircScalar.from_coeffs([6, -S3 * 1j, S3 * 1j]).is_real
    assert not CircScalar.from_coeffs([6, -S3 * 1j, 2]).is_real


@given(scalars())
def test_coeffs_match_explicit_dft(a):
    assert close(a.coeffs, dft_coeffs(a.vec), 1e-10 * max(1.0, np.abs(a.vec).sum()))


@given(scalars())
def test_vec_roundtrip(a):
    b = CircScalar.from_coeffs(a.coeffs, a.is_real)
    assert close(a.vec, b.vec, 1e-12 * max(1.0, a.magnitude()))


# -- circulant matrix ---------------------------------------------------------------


@pytest.mark.parametrize("params,expected", [
    ([2, 3, 1], [[2, 1, 3], [3, 2, 1], [1, 3, 2]]),
    ([8, -2, 0], [[8, 0, -2], [-2, 8, 0], [0, -2, 8]]),
    ([1, 0], [[1, 0], [0, 1]]),
])
def test_to_circ_matrix(params, expected):
    assert np.array_equal(to_circ_matrix(CircScalar(params)), expected)


# -- arithmetic ---------------------------------------------------------------------


def test_add_examples():
    assert close(add(CircScalar([2, 3, 1]), CircScalar([3, 1, 1])).vec, [5, 4, 2])
    a = CircScalar([2, 3, 1])
    assert close((a + CircScalar.zero(3)).vec, a.vec)


def test_mul_examples():
    # first column of [[1,2],[2,1]] @ [[2,4],[4,2]]
    assert close(mul(CircScalar([1, 2]), CircScalar([2, 4])).vec, [10, 8])
    a = CircScalar([2, 3, 1])
    assert close((a * CircScalar.one(3)).vec, a.vec)
    b = CircScalar([3, 1, 1])
    assert close((a * b).vec, (dense_circ([2, 3, 1]) @ dense_circ([3, 1, 1]))[:, 0])


def test_mismatched_k():
    with pytest.raises(ValueError):
        CircScalar([1, 2]) + CircScalar([1, 2, 3])
    with pytest.raises(ValueError):
        CircScalar([1, 2]) * CircScalar([1, 2, 3])


def test_numbers_promote_to_constants():
    a = CircScalar([2, 3, 1])
    assert close((2 * a).vec, [4, 6, 2])
    assert close((a + 1).vec, [3, 3, 1])
    assert close((1 - a).vec, [-1, -3, -1])


def test_inverse_examples():
    assert close(inverse(CircScalar([2, 0, 0])).vec, [0.5, 0, 0])
    assert close(inverse(CircScalar([2, 1])).vec, [2 / 3, -1 / 3])
    assert close(np.linalg.inv(dense_circ([2, 1]))[:, 0], [2 / 3, -1 / 3])


def test_inverse_zero_divisor_reports_slice():
    with pytest.raises(ZeroDivisorError) as err:
        inverse(CircScalar([1, 1]))
    # coefficients (2, 0): the second slice, 0-based index 1
    assert err.value.slices == (1,)


def test_zero_divisor_tol_is_relative():
    a = CircScalar([1.0, 1.0 + 1e-9])
    assert not a.is_zero_divisor()
    assert (a * 1e6).is_zero_divisor() == a.is_zero_divisor()


@given(scalars())
def test_inverse_gives_identity(a):
    assume(not a.is_zero_divisor(1e-6 * max(1.0, a.magnitude())))
    assert close((a * a.inverse()).coeffs, np.ones(a.k), 1e-10)


def test_division_and_power():
    a = CircScalar([2, 1])
    assert close((a / a).vec, [1, 0])
    assert close((a ** 2).vec, (a * a).vec)


# -- spectral functions -------------------------------------------------------------


def test_spectral_examples():
    assert close(spectral_map(CircScalar([-2, 0]), "abs").vec, [2, 0])
    assert close(spectral_map(CircScalar([-2, 0]), "angle").vec, [-1, 0])
    assert close(spectral_map(CircScalar([2, 3, 1]), "conj").vec, dense_circ([2, 3, 1]).T[:, 0])
    assert close(spectral_map(CircScalar([2, 3, 1]), "conj").vec, [2, 1, 3])
    assert close(spectral_map(CircScalar([4, 0]), "sqrt").vec, [2, 0])


def test_unknown_spectral_function():
    with pytest.raises(ValueError):
        spectral_map(CircScalar([1, 0]), "exp")


def test_angle_policies():
    z = CircScalar([1, 1])
    with pytest.raises(ZeroDivisorError):
        z.angle()
    lenient = spectral_map(z, "angle", angle_policy="lenient")
    assert close(lenient.coeffs, [1, 1])


def test_sqrt_squares_back():
    a = CircScalar([5, 1, 1])
    r = a.sqrt()
    assert r.is_real
    assert close((r * r).vec, a.vec)


@given(scalars())
def test_angle_times_abs(a):
    assume(not a.is_zero_divisor(1e-6 * max(1.0, a.magnitude())))
    assert close((a.angle() * a.abs()).vec, a.vec, 1e-10 * max(1.0, a.magnitude()))


@given(scalars())
def test_conj_is_transpose(a):
    assert close(dense_circ(a.conj().vec), dense_circ(a.vec).conj().T, 1e-10 * max(1.0, a.magnitude()))


# -- magnitude ----------------------------------------------------------------------


def test_magnitude_examples():
    assert magnitude(CircScalar([2, 3, 1])) == pytest.approx(6)
    assert magnitude(CircScalar.one(4)) == pytest.approx(1)
    a, b = CircScalar([1, 2]), CircScalar([2, 4])
    assert magnitude(a * b) == pytest.approx(18)
    assert magnitude(a) * magnitude(b) == pytest.approx(18)


@given(scalars())
def test_magnitude_is_spectral_norm(a):
    assert magnitude(a) == pytest.approx(np.linalg.norm(dense_circ(a.vec), 2), rel=1e-10, abs=1e-10)


@given(scalars())
def test_magnitude_zero_iff_zero(a):
    assert (magnitude(a) == 0) == (not np.any(a.vec))


@given(scalar_tuples(2))
def test_abs_ordering_implies_magnitude_ordering(ab):
    a, b = ab
    if partial_order(a.abs(), b.abs()).le:
        assert a.magnitude() <= b.magnitude()


@given(scalar_tuples(2, complex_=False))
def test_real_operations_stay_real(ab):
    a, b = ab
    out = [a + b, a * b, a.abs()]
    if not b.is_zero_divisor(1e-6 * max(1.0, b.magnitude())):
        out.append(b.inverse())
    for c in out:
        assert c.is_real
        assert not np.iscomplexobj(c.vec)


# -- ordering -----------------------------------------------------------------------


def test_order_examples():
    out = partial_order(CircScalar([2, 0]), CircScalar([3, 0]))
    assert out.relation is Relation.LESS_EQ and out.strict
    a = CircScalar([1, 0.5])
    assert partial_order(a, a).relation is Relation.EQUAL
    with pytest.raises(NonRealSpectrumError):
        partial_order(CircScalar([2, 3, 1]), CircScalar([2, 3, 1]))


def test_order_incomparable_and_greater():
    # coefficients (3, 1) and (2, 2)
    a, b = CircScalar([2, 1]), CircScalar([2, 0])
    assert partial_order(a, b).relation is Relation.INCOMPARABLE
    assert partial_order(CircScalar([3, 0]), CircScalar([2, 0])).relation is Relation.GREATER_EQ


def test_order_non_strict():
    # coefficients (3, 1) vs (3, 3)
    out = partial_order(CircScalar([2, 1]), CircScalar([3, 0]))
    assert out.relation is Relation.LESS_EQ and not out.strict
    assert out.le and not out.ge


# -- literals -----------------------------------------------------------------------


@given(scalars())
def test_literal_roundtrip(a):
    b = parse_scalar(a.to_literal())
    assert np.array_equal(a.vec, b.vec)
    assert b.is_real == a.is_real


def test_literal_complex_and_errors():
    a = parse_scalar("2:1+2i,-0.5-1e-3i")
    assert np.array_equal(a.vec, [1 + 2j, -0.5 - 1e-3j])
    with pytest.raises(ValueError):
        parse_scalar("3:1,2")
    with pytest.raises(ValueError):
        parse_scalar("1,2")
