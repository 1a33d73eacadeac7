"""Jordan structure of the second-order cone and the 2x2 hermitian isomorphism."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lroof import lorentz
from lroof.errors import InvalidDimensionError, InvalidInputError
from lroof.herm import HermitianMatrix
from lroof.lorentz import Region, vector


def test_jordan_eigenvalues_examples():
    s = lorentz.jordan_eigenvalues(vector([1, 0, 0, 0]))
    assert (s.lambda_plus, s.lambda_minus) == (1.0, 1.0)
    s = lorentz.jordan_eigenvalues(vector([1, 1, 0, 0]))
    assert (s.lambda_plus, s.lambda_minus) == (2.0, 0.0)
    s = lorentz.jordan_eigenvalues(vector([2, 1, 1, 1]))
    assert abs(s.lambda_plus - (2 + np.sqrt(3))) < 1e-15
    assert abs(s.lambda_minus - (2 - np.sqrt(3))) < 1e-15


def test_trace_det_examples():
    assert lorentz.jordan_det(vector([1, 0, 0, 0])) == 1.0
    assert lorentz.jordan_det(vector([2, 1, 1, 1])) == 1.0
    assert lorentz.jordan_det(vector([1, 1, 0, 0])) == 0.0
    assert lorentz.jordan_trace(vector([2, 1, 1, 1])) == 4.0


def test_det_equals_signature_form():
    rng = np.random.default_rng(0)
    for m in (2, 3, 4, 7):
        j = lorentz.signature_matrix(m)
        for _ in range(20):
            x = rng.standard_normal(m)
            assert abs(lorentz.jordan_det(vector(x)) - x @ j @ x) <= 1e-12 * max(1, x @ x)


@given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=9))
def test_jordan_identities(xs):
    x = vector(xs)
    s = lorentz.jordan_eigenvalues(x)
    scale = max(1.0, np.linalg.norm(x.x) ** 2)
    assert abs(s.lambda_plus * s.lambda_minus - lorentz.jordan_det(x)) <= 1e-12 * scale
    assert abs(s.lambda_plus + s.lambda_minus - lorentz.jordan_trace(x)) <= 1e-12 * scale


def test_cone_membership_examples():
    assert lorentz.cone_membership(vector([1, 0, 0, 0]), 1e-9) is Region.INTERIOR
    assert lorentz.cone_membership(vector([1, 1, 0, 0]), 1e-9) is Region.BOUNDARY
    assert lorentz.cone_membership(vector([0, 1, 0, 0]), 1e-9) is Region.OUTSIDE
    # zero vector sits on every extreme ray's closure
    assert lorentz.cone_membership(vector([0, 0, 0]), 1e-9) is Region.BOUNDARY


def test_cone_membership_scale_robust():
    big = vector([1e8, 1e8 - 1e-3, 0.0])
    assert lorentz.cone_membership(big, 1e-9) is Region.BOUNDARY
    assert lorentz.cone_membership(vector([-1e-12, 0.0, 0.0]), 1e-9) is Region.OUTSIDE


def test_iso_to_hermitian_examples():
    assert np.allclose(lorentz.iso_to_hermitian(vector([1, 0, 0, 0])).entries, np.eye(2))
    assert np.allclose(
        lorentz.iso_to_hermitian(vector([0, 0, 1, 0])).entries, [[0, 1], [1, 0]]
    )
    assert np.allclose(
        lorentz.iso_to_hermitian(vector([1, 1, 0, 0])).entries, [[2, 0], [0, 0]]
    )


def test_iso_from_hermitian_examples():
    assert np.array_equal(
        lorentz.iso_from_hermitian(HermitianMatrix.from_entries(np.eye(2))).x, [1, 0, 0, 0]
    )
    assert np.array_equal(
        lorentz.iso_from_hermitian(
            HermitianMatrix.from_entries(np.array([[0, 1], [1, 0]], dtype=complex))
        ).x,
        [0, 0, 1, 0],
    )
    assert np.array_equal(
        lorentz.iso_from_hermitian(
            HermitianMatrix.from_entries(np.array([[1, 1j], [-1j, 1]]))
        ).x,
        [1, 0, 0, 1],
    )


def test_iso_roundtrip_exact_on_dyadic():
    rng = np.random.default_rng(3)
    for _ in range(50):
        # dyadic entries make the component arithmetic exact
        re = np.round(rng.uniform(-4, 4, (2, 2)) * 64) / 64
        im = np.round(rng.uniform(-4, 4) * 64) / 64
        a = HermitianMatrix.from_entries(
            np.array([[re[0, 0], re[0, 1] + 1j * im], [re[0, 1] - 1j * im, re[1, 1]]])
        )
        back = lorentz.iso_to_hermitian(lorentz.iso_from_hermitian(a))
        assert np.array_equal(back.entries, a.entries)


def test_iso_matches_jordan_structure():
    rng = np.random.default_rng(1)
    for _ in range(50):
        x = vector(rng.standard_normal(4))
        h = lorentz.iso_to_hermitian(x)
        s = lorentz.jordan_eigenvalues(x)
        ev = np.sort(np.linalg.eigvalsh(h.entries))[::-1]
        assert abs(ev[0] - s.lambda_plus) <= 1e-12 * max(1, abs(s.lambda_plus))
        assert abs(ev[1] - s.lambda_minus) <= 1e-12 * max(1, abs(s.lambda_minus))
        det = np.linalg.det(h.entries).real
        assert abs(det - lorentz.jordan_det(x)) <= 1e-12 * max(1.0, abs(det))


def test_iso_is_linear():
    rng = np.random.default_rng(2)
    x, y = rng.standard_normal(4), rng.standard_normal(4)
    hx = lorentz.iso_to_hermitian(vector(x)).entries
    hy = lorentz.iso_to_hermitian(vector(y)).entries
    hsum = lorentz.iso_to_hermitian(vector(x + y)).entries
    assert np.array_equal(hsum, hx + hy)
    assert np.array_equal(lorentz.iso_to_hermitian(vector(2.0 * x)).entries, 2.0 * hx)


def test_sample_boundary():
    x = lorentz.sample_boundary(2, seed=0)
    assert x.x[0] == 1.0 and abs(abs(x.x[1]) - 1.0) < 1e-15
    for m, seed in [(3, 1), (4, 7), (9, 5)]:
        x = lorentz.sample_boundary(m, seed)
        s = lorentz.jordan_eigenvalues(x)
        assert abs(lorentz.jordan_det(x)) <= 1e-14
        assert abs(s.lambda_plus - 2.0 * x.x[0]) <= 1e-14
        assert lorentz.cone_membership(x, 1e-9) is Region.BOUNDARY


def test_dimension_errors():
    with pytest.raises(InvalidDimensionError):
        vector([1.0])
    with pytest.raises(InvalidDimensionError):
        lorentz.iso_to_hermitian(vector([1, 0, 0]))
    with pytest.raises(InvalidInputError):
        vector([np.nan, 0.0])
    with pytest.raises(InvalidInputError):
        lorentz.cone_membership(vector([1, 0, 0]), tol=-1.0)
