"""Eigensolver and spectral function calculus tests."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specorder import (
    SymMatrix,
    apply_spectral_function,
    eigh,
    min_eigenvalue,
)
from specorder.errors import NumericError, ValidationError
from specorder.verify import char_poly_roots
from specorder import _pykernels


def random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return SymMatrix((a + a.T) / 2.0)


def test_identity_eigenvalues():
    dec = eigh(SymMatrix(np.eye(3)))
    assert np.allclose(dec.eigenvalues, [1.0, 1.0, 1.0], atol=1e-14)


def test_swap_matrix_eigenvalues():
    dec = eigh(SymMatrix(np.array([[0.0, 1.0], [1.0, 0.0]])))
    assert np.allclose(dec.eigenvalues, [-1.0, 1.0], atol=1e-14)


def test_eigenvalues_match_char_poly_oracle():
    # independent oracle: bisection on the characteristic cubic
    rng = np.random.default_rng(7)
    for _ in range(25):
        m = random_symmetric(rng, 3)
        w = eigh(m).eigenvalues
        roots = char_poly_roots(m.data)
        assert np.max(np.abs(w - np.array(roots))) < 1e-9


def test_not_symmetric_rejected():
    with pytest.raises(ValidationError):
        SymMatrix(np.array([[0.0, 1.0], [2.0, 0.0]]))


def test_non_finite_rejected():
    with pytest.raises(ValidationError):
        SymMatrix(np.array([[np.inf, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValidationError):
        SymMatrix(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_non_square_rejected():
    with pytest.raises(ValidationError):
        SymMatrix(np.zeros((2, 3)))


def test_matrix_is_immutable():
    m = SymMatrix(np.eye(2))
    with pytest.raises(ValueError):
        m.data[0, 0] = 5.0


def test_decomposition_invariants():
    rng = np.random.default_rng(11)
    for n in (2, 5, 17, 40):
        m = random_symmetric(rng, n)
        dec = eigh(m)
        w, v = dec.eigenvalues, dec.eigenvectors
        assert np.all(np.diff(w) >= 0)
        assert np.max(np.abs(v.T @ v - np.eye(n))) < 1e-10
        scale = max(m.norm_max, 1e-300)
        assert np.max(np.abs(m.data @ v - v * w)) < 1e-9 * scale
        # reconstruction and trace preservation
        assert np.max(np.abs((v * w) @ v.T - m.data)) < 1e-9 * scale
        assert abs(np.sum(w) - np.trace(m.data)) < 1e-9 * scale * n


def test_determinism():
    rng = np.random.default_rng(3)
    m = random_symmetric(rng, 12)
    d1 = eigh(m)
    d2 = eigh(SymMatrix(m.data.copy()))
    assert np.array_equal(d1.eigenvalues, d2.eigenvalues)
    assert np.array_equal(d1.eigenvectors, d2.eigenvectors)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=2, max_value=12))
def test_spectral_properties_random(seed, n):
    m = random_symmetric(np.random.default_rng(seed), n)
    dec = eigh(m)
    scale = max(m.norm_max, 1.0)
    assert np.max(np.abs((dec.eigenvectors * dec.eigenvalues) @ dec.eigenvectors.T - m.data)) < 1e-9 * scale
    # spectral mapping for f(x) = x^2 + 1
    sq = apply_spectral_function(m, lambda x: x * x + 1.0)
    mapped = np.sort(dec.eigenvalues**2 + 1.0)
    assert np.allclose(np.sort(eigh(sq).eigenvalues), mapped, atol=1e-9, rtol=1e-9)
    # monotone f preserves order
    fw = np.array([math.atan(x) for x in dec.eigenvalues])
    assert np.all(np.diff(fw) >= -1e-15)


def test_apply_identity_function():
    rng = np.random.default_rng(5)
    m = random_symmetric(rng, 6)
    out = apply_spectral_function(m, lambda x: x)
    assert np.max(np.abs(out.data - m.data)) < 1e-10 * max(m.norm_max, 1.0)


def test_apply_sqrt_diagonal():
    out = apply_spectral_function(SymMatrix(np.diag([4.0, 9.0])), math.sqrt)
    assert np.allclose(out.data, np.diag([2.0, 3.0]), atol=1e-12)


def test_apply_function_commutes():
    rng = np.random.default_rng(13)
    m = random_symmetric(rng, 8)
    f = apply_spectral_function(m, math.exp)
    comm = m.data @ f.data - f.data @ m.data
    assert np.max(np.abs(comm)) < 1e-9 * m.norm_max * f.norm_max


def test_apply_non_finite_raises():
    m = SymMatrix(np.diag([-1.0, 4.0]))
    with pytest.raises(NumericError):
        apply_spectral_function(m, math.sqrt)  # sqrt(-1) -> domain error path
    with pytest.raises(NumericError):
        apply_spectral_function(m, lambda x: 1.0 / (x - 4.0))


def test_salpeter_function_against_taylor_series():
    """2 sqrt(x + 1) on a small p^2 matrix vs. a truncated matrix Taylor
    series with an explicit remainder bound."""
    from specorder import BasisSpec, p2_matrix

    a = p2_matrix(BasisSpec(l=0, size=4, b=1.0))
    shifted = SymMatrix(a.data + np.eye(4))  # p^2 + m^2, m = 1
    w = eigh(shifted).eigenvalues
    c = 0.5 * (w[0] + w[-1])
    u = (shifted.data - c * np.eye(4)) / c  # sqrt(c) sqrt(I + u)
    q = np.linalg.norm(u, ord=2)
    assert q < 1.0
    series = np.zeros((4, 4))
    term = np.eye(4)
    coeff = 1.0
    kmax = 60
    for k in range(kmax + 1):
        series += coeff * term
        term = term @ u
        coeff *= (0.5 - k) / (k + 1.0)
    remainder = q ** (kmax + 1) / (1.0 - q)
    oracle = 2.0 * math.sqrt(c) * series
    direct = apply_spectral_function(a, lambda x: 2.0 * math.sqrt(x + 1.0))
    assert np.max(np.abs(direct.data - oracle)) < 2.0 * math.sqrt(c) * remainder + 1e-9


def test_min_eigenvalue_trivial():
    assert min_eigenvalue(SymMatrix(np.zeros((3, 3)))) == 0.0
    assert min_eigenvalue(SymMatrix(np.diag([-2.0, 5.0]))) == -2.0


def test_min_eigenvalue_tangent_gap():
    # H2 - H1 for Coulomb vs. its tangent harmonic majorant is psd
    from specorder import BasisSpec, Coulomb, NonRel, TangentHarmonic, assemble

    basis = BasisSpec(l=0, size=30, b=1.0)
    h1 = assemble(NonRel(1.0), Coulomb(1.0), basis)
    h2 = assemble(NonRel(1.0), TangentHarmonic(1.0, 1.0), basis)
    assert min_eigenvalue(h2 - h1) >= -1e-9


def test_python_kernels_agree_with_numpy():
    """The pure-Python fallback must produce a valid decomposition on its
    own, independent of which backend the package selected at import."""
    rng = np.random.default_rng(17)
    a = rng.standard_normal((15, 15))
    a = (a + a.T) / 2.0
    z = a.copy()
    d = np.empty(15)
    e = np.empty(15)
    _pykernels.tridiagonalize(z, d, e)
    status = _pykernels.ql_implicit(d, e, z, 50)
    assert status == 0
    order = np.argsort(d)
    w = d[order]
    ref = np.linalg.eigvalsh(a)
    assert np.max(np.abs(w - ref)) < 1e-12 * max(np.max(np.abs(ref)), 1.0)


def test_sym_matrix_arithmetic():
    a = SymMatrix(np.diag([1.0, 2.0]))
    b = SymMatrix(np.diag([3.0, 5.0]))
    assert np.allclose((a + b).data, np.diag([4.0, 7.0]))
    assert np.allclose((b - a).data, np.diag([2.0, 3.0]))
    assert np.allclose((2.0 * a).data, np.diag([2.0, 4.0]))
    assert np.allclose((a * 2.0).data, np.diag([2.0, 4.0]))
