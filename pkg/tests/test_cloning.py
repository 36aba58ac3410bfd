from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qitk.cloning import (
    bloch_qubit,
    classical_fisher,
    cloner_f1_closed,
    cloner_f1_printed,
    cloner_fall_closed,
    cloner_fidelities,
    error_probability,
    estimation_bound,
    gill_massar_trace,
    log_error_probability,
    optimal_cloner,
    phi_asymptotic,
    purifier_f1,
    purifier_fall,
    purifier_fidelity,
    qubit_rate_infimum,
    quantum_fisher,
    rate_function,
    spin_log_weights,
    spin_weights,
    sym_basis,
    sym_dim,
    sym_projector,
    unot_fidelity,
)
from qitk.core import partial_trace, random_vector
from qitk.errors import NotPositiveError, ParameterError, SizeGuardError
from qitk.states import PAULI


@pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3)])
def test_symmetric_projector(n, d):
    s = sym_projector(n, d)
    assert np.allclose(s @ s, s)
    assert np.isclose(np.trace(s), sym_dim(n, d))
    psi = random_vector(d, np.random.default_rng(n))
    v = psi
    for _ in range(n - 1):
        v = np.kron(v, psi)
    assert np.allclose(s @ v, v)


def test_symmetric_projector_is_permutation_average():
    # S_2 = (1 + F)/2 for two factors
    from qitk.states import flip
    assert np.allclose(sym_projector(2, 3), (np.eye(9) + flip(3)) / 2)


def test_size_guard():
    with pytest.raises(SizeGuardError):
        sym_basis(20, 2)


def test_cloner_basic_values():
    r = cloner_fidelities(1, 2, 2)
    assert r.all == pytest.approx(2 / 3, abs=1e-15)
    assert r.one == pytest.approx(5 / 6, abs=1e-10)
    assert cloner_fidelities(2, 2, 3).all == pytest.approx(1)
    with pytest.raises(ParameterError):
        cloner_fidelities(3, 2, 2)


@pytest.mark.parametrize("n,m,d", [(1, 2, 2), (1, 3, 2), (2, 3, 2), (2, 4, 2), (3, 5, 2), (1, 2, 3), (1, 3, 3), (2, 3, 3)])
def test_cloner_matches_closed_forms(n, m, d):
    r = cloner_fidelities(n, m, d)
    assert r.all == pytest.approx(cloner_fall_closed(n, m, d), abs=1e-12)
    assert r.one == pytest.approx(cloner_f1_closed(n, m, d), abs=1e-12)
    # the commonly printed single-copy expression sits exactly 1/d lower
    assert r.one - cloner_f1_printed(n, m, d) == pytest.approx(1 / d, abs=1e-12)


@pytest.mark.parametrize("n,m,d", [(1, 2, 2), (2, 3, 2), (1, 2, 3)])
def test_cloner_universality(n, m, d):
    rng = np.random.default_rng(7)
    ref = cloner_fidelities(n, m, d)
    for _ in range(20):
        r = cloner_fidelities(n, m, d, psi=random_vector(d, rng))
        assert abs(r.one - ref.one) <= 1e-10
        assert abs(r.all - ref.all) <= 1e-10


def test_cloner_channel_agrees_with_direct_fidelities():
    ch = optimal_cloner(1, 2, 2)
    out = ch.apply(np.diag([1.0, 0]).astype(complex))
    assert np.isclose(np.trace(out), 1)
    assert out[0, 0].real == pytest.approx(2 / 3)
    assert partial_trace(out, (2, 2), 1)[0, 0].real == pytest.approx(5 / 6)
    assert ch.is_trace_preserving()  # symmetric subspace is all of C^2 for N = 1


def test_estimation_bound_and_unot():
    assert unot_fidelity(1) == pytest.approx(2 / 3)
    b = estimation_bound(1, 2)
    assert b.bound == pytest.approx(1 / 6)
    assert b.shifted_by_inverse_d == pytest.approx(2 / 3)
    assert estimation_bound(10**9, 3).bound == pytest.approx(2 / 3, abs=1e-8)
    # the 1 -> M cloner approaches the estimation value as M grows
    f = [cloner_fidelities(1, m, 2).one for m in (2, 4, 6, 8)]
    assert np.all(np.diff(f) < 0)
    assert f[-1] - b.shifted_by_inverse_d == pytest.approx(cloner_f1_printed(1, 8, 2) - b.bound, abs=1e-12)


# -- purifier -------------------------------------------------------------------

def _dicke(n, k):
    v = np.zeros(2**n)
    for i in range(2**n):
        if bin(i).count("1") == n - k:
            v[i] = 1
    return v / np.linalg.norm(v)


def _direct_block(n, m, beta):
    """Fidelities on the spin-n/2 block from explicit matrices."""
    r = sum(np.exp(2 * beta * (k - n / 2)) * np.outer(_dicke(n, k), _dicke(n, k)) for k in range(n + 1))
    r = r / np.trace(r)
    if m <= n:
        out = partial_trace(r, (2 ** (n - m), 2**m), 0)
    else:
        s = sym_projector(m, 2)
        out = (n + 1) / (m + 1) * s @ np.kron(r, np.eye(2 ** (m - n))) @ s
    one = partial_trace(out, (2, 2 ** (m - 1)), 1) if m > 1 else out
    return one[0, 0].real, out[0, 0].real


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_purifier_block_formulas_match_matrices(n, m):
    beta = np.arctanh(0.5)
    one, fall = _direct_block(n, m, beta)
    assert purifier_f1(m, beta, n / 2) == pytest.approx(one, abs=1e-12)
    assert purifier_fall(m, beta, n / 2) == pytest.approx(fall, abs=1e-12)


@pytest.mark.parametrize("n", [20, 200, 2000])
@pytest.mark.parametrize("theta", [0.0, 0.5, 0.9, 1.0])
def test_spin_weights_normalized(n, theta):
    s, w = spin_weights(n, theta)
    assert abs(w.sum() - 1) <= 1e-10
    # multiplicities are integers
    if n <= 200:
        dimk = (2 * s + 1) / (n / 2 + s + 1) * np.array([float(comb(n, int(n / 2 - x))) for x in s])
        assert np.allclose(dimk, np.round(dimk))


def test_spin_weights_large_n_finite():
    s, lw = spin_log_weights(5000, 0.3)
    assert np.all(np.isfinite(lw))


def test_f1_branches_continuous():
    beta = np.arctanh(0.4)
    for s2 in range(2, 12):
        m = s2
        lo = purifier_f1(m, beta, s2 / 2)
        # branch for 2s > M evaluated at the junction
        dd = (s2 + 1) / np.tanh((s2 + 1) * beta) - 1 / np.tanh(beta)
        assert (1 + dd / s2) / 2 == pytest.approx(lo, abs=1e-9)


def test_purifier_limits():
    assert purifier_fidelity("all", 5, 5, 1.0) == pytest.approx(1)
    assert purifier_fidelity("one", 5, 3, 1.0) == pytest.approx(1)
    assert purifier_fidelity("one", 6, 2, 0.0) == pytest.approx(0.5)
    with pytest.raises(ParameterError):
        purifier_fidelity("some", 2, 2, 0.5)


def test_purifier_monotonicity():
    fa = [purifier_fidelity("all", 10, m, 0.5) for m in range(1, 30)]
    assert np.all(np.diff(fa) <= 1e-12)
    f1 = [purifier_fidelity("one", n, 10, 0.5) for n in range(1, 60)]
    assert np.all(np.diff(f1) >= -1e-12)


@pytest.mark.parametrize("mu", [0.25, 0.5, 1.0])
def test_purifier_asymptotics(mu):
    n = 200
    assert abs(purifier_fidelity("all", n, round(mu * n), 0.5) - phi_asymptotic(mu, 0.5)) <= 0.02


def test_phi_branches():
    for th in (0.2, 0.5, 0.9):
        assert phi_asymptotic(th, th) == pytest.approx(2 * th / (1 + th))
        assert phi_asymptotic(th * (1 + 1e-9), th) == pytest.approx(2 * th / (1 + th), abs=1e-8)
    assert phi_asymptotic(0.7, 1.0) == 1
    assert phi_asymptotic(1.0, 0.5) == pytest.approx(1 / 3)


# -- spectrum estimation ------------------------------------------------------------

def test_rate_function_values():
    assert rate_function([0.3, 0.7], [0.3, 0.7]) == 0
    assert rate_function([1, 0], [0.5, 0.5]) == pytest.approx(np.log(2))


def test_spectrum_estimation_exponent():
    n = 2000
    exponent = -log_error_probability(n, 0.6, (0, 0.3)) / n
    assert abs(exponent - qubit_rate_infimum(0.6, (0, 0.3))) <= 0.02
    rho = np.diag([0.8, 0.2])
    assert error_probability(50, rho, (0, 0.3)) == pytest.approx(np.exp(log_error_probability(50, 0.6, (0, 0.3))))


# -- Fisher information -------------------------------------------------------------

@given(st.lists(st.floats(-0.5, 0.5), min_size=3, max_size=3))
def test_sld_equation_and_hellstroem(x):
    rho, parts = bloch_qubit(x)
    r = quantum_fisher(rho, parts)
    for lam, dp in zip(r.sld, parts):
        assert np.allclose((lam @ rho + rho @ lam) / 2, dp)
    h = r.hellstroem
    assert np.allclose(h, h.T)
    assert np.linalg.eigvalsh(h).min() > 0


def test_hellstroem_against_finite_differences():
    x0 = np.array([0.1, -0.2, 0.3])
    rho, _ = bloch_qubit(x0)
    eps = 1e-6
    parts = []
    for j in range(3):
        e = np.zeros(3)
        e[j] = eps
        parts.append((bloch_qubit(x0 + e)[0] - bloch_qubit(x0 - e)[0]) / (2 * eps))
    h = quantum_fisher(rho, parts).hellstroem
    assert np.allclose(h, quantum_fisher(*bloch_qubit(x0)).hellstroem, atol=1e-8)
    # at the center the Bloch parameterization has unit information
    assert np.allclose(quantum_fisher(*bloch_qubit([0, 0, 0])).hellstroem, np.eye(3))


def test_rank_deficient_state_rejected():
    rho, parts = bloch_qubit([0, 0, 1])
    with pytest.raises(NotPositiveError):
        quantum_fisher(rho, parts)


@pytest.mark.parametrize("x", [[0.0, 0.0, 0.0], [0.2, 0.1, -0.3], [0.5, 0.0, 0.4]])
def test_gill_massar_single_copy_measurement(x):
    rho, parts = bloch_qubit(x)
    h = quantum_fisher(rho, parts).hellstroem
    # Pauli measurements chosen at random on each copy
    povm = [(PAULI[0] + s * p) / 6 for p in PAULI[1:] for s in (1, -1)]
    w = np.linalg.inv(classical_fisher(povm, rho, parts))
    assert gill_massar_trace(h, w) <= 1 + 1e-9
