import numpy as np
import pytest
from hypothesis import given, strategies as st

from qitk.core import (
    DensityMatrix,
    binary_entropy,
    gaussian_g,
    is_majorized,
    partial_trace,
    partial_transpose,
    proj,
    purify,
    random_density,
    random_unitary,
    random_vector,
    relative_entropy,
    schmidt_decompose,
    shannon_entropy,
    tensor,
    trace_norm,
    von_neumann_entropy,
)
from qitk.errors import DimensionError, NotPositiveError, ParameterError
from qitk.states import locc_convertible

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(2, 4)


@given(seeds, dims, dims)
def test_partial_trace_of_product(seed, da, db):
    rng = np.random.default_rng(seed)
    a, b = random_density(da, rng), random_density(db, rng)
    ab = tensor(a, b)
    assert np.allclose(partial_trace(ab, (da, db), 1), a)
    assert np.allclose(partial_trace(ab, (da, db), 0), b)


def test_partial_trace_three_factors(rng):
    a, b, c = (random_density(d, rng) for d in (2, 3, 2))
    abc = tensor(a, b, c)
    assert np.allclose(partial_trace(abc, (2, 3, 2), [0, 2]), b)
    assert np.allclose(partial_trace(abc, (2, 3, 2), 1), np.kron(a, c))


@given(seeds, dims, dims)
def test_partial_transpose_is_involution(seed, da, db):
    rng = np.random.default_rng(seed)
    rho = random_density(da * db, rng)
    pt = partial_transpose(rho, (da, db), 1)
    assert np.allclose(partial_transpose(pt, (da, db), 1), rho)
    a, b = random_density(da, rng), random_density(db, rng)
    assert np.allclose(partial_transpose(np.kron(a, b), (da, db), 1), np.kron(a, b.T))


@given(seeds, dims, dims)
def test_schmidt_reconstructs(seed, da, db):
    rng = np.random.default_rng(seed)
    psi = random_vector(da * db, rng)
    s = schmidt_decompose(psi, (da, db))
    rebuilt = sum(c * np.kron(s.left[:, j], s.right[:, j]) for j, c in enumerate(s.coefficients))
    assert np.allclose(rebuilt, psi)
    assert np.isclose(s.weights.sum(), 1)
    # reduced state spectra agree with the Schmidt weights
    red = partial_trace(proj(psi), (da, db), 1)
    assert np.allclose(np.sort(np.linalg.eigvalsh(red))[::-1][: s.weights.size], np.sort(s.weights)[::-1])


@given(seeds, dims)
def test_purification_marginal(seed, d):
    rng = np.random.default_rng(seed)
    rho = random_density(d, rng)
    psi = purify(rho)
    assert np.isclose(np.linalg.norm(psi), 1)
    assert np.allclose(partial_trace(proj(psi), (d, d), 1), rho)


def test_entropy_values():
    assert shannon_entropy([0.25] * 4) == pytest.approx(2)
    assert binary_entropy(0.5) == pytest.approx(1)
    assert binary_entropy(0) == 0
    assert gaussian_g(0) == 0
    assert gaussian_g(1) == pytest.approx(2)
    assert von_neumann_entropy(np.eye(3) / 3) == pytest.approx(np.log2(3))
    with pytest.raises(ParameterError):
        binary_entropy(1.5)


@given(seeds, dims)
def test_entropy_unitary_invariance_and_bounds(seed, d):
    rng = np.random.default_rng(seed)
    rho = random_density(d, rng)
    u = random_unitary(d, rng)
    s = von_neumann_entropy(rho)
    assert 0 <= s <= np.log2(d) + 1e-12
    assert np.isclose(von_neumann_entropy(u @ rho @ u.conj().T), s)


@given(seeds)
def test_subadditivity_and_araki_lieb(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(6, rng)
    sab = von_neumann_entropy(rho)
    sa = von_neumann_entropy(partial_trace(rho, (2, 3), 1))
    sb = von_neumann_entropy(partial_trace(rho, (2, 3), 0))
    assert sab <= sa + sb + 1e-10
    assert abs(sa - sb) <= sab + 1e-10


@given(seeds, dims)
def test_relative_entropy_klein(seed, d):
    rng = np.random.default_rng(seed)
    rho, sigma = random_density(d, rng), random_density(d, rng)
    assert relative_entropy(rho, sigma) >= -1e-10
    assert relative_entropy(rho, rho) == pytest.approx(0, abs=1e-9)


def test_relative_entropy_support():
    rho = np.diag([0.5, 0.5])
    sigma = np.diag([1.0, 0.0])
    assert relative_entropy(rho, sigma) == float("inf")
    assert relative_entropy(sigma, rho) == pytest.approx(1)


def test_trace_norm():
    assert trace_norm(np.diag([1, -2, 0.5])) == pytest.approx(3.5)


def test_density_matrix_validation():
    with pytest.raises(NotPositiveError) as err:
        DensityMatrix(np.diag([1.5, -0.5]))
    assert err.value.eigenvalue == pytest.approx(-0.5)
    with pytest.raises(ParameterError):
        DensityMatrix(np.diag([0.5, 0.4]))
    with pytest.raises(DimensionError):
        DensityMatrix(np.eye(4) / 4, (3, 2))
    rho = DensityMatrix(np.eye(4) / 4, (2, 2))
    assert rho.ptrace(1).dims == (2,)
    assert rho.entropy() == pytest.approx(2)


def test_majorization_and_locc():
    assert is_majorized([0.5, 0.5], [1, 0])
    assert not is_majorized([1, 0], [0.5, 0.5])
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    prod = np.array([1, 0, 0, 0])
    assert locc_convertible(bell, prod, (2, 2))
    assert not locc_convertible(prod, bell, (2, 2))
