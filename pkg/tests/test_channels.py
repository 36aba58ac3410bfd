import numpy as np
import pytest
from hypothesis import given, strategies as st

from qitk.channels import (
    ClassicalChannel,
    KrausChannel,
    bsc,
    channel_from_choi,
    depolarizing,
    dilate,
    dilation_apply,
    erasure,
    identity_channel,
    is_completely_positive,
    lueders_instrument,
    oo_channel,
    theta_from_mixing,
    transposition_choi,
    unitary_channel,
)
from qitk.core import partial_trace, random_density, random_unitary
from qitk.errors import DimensionError, ParameterError, SingularMarginalError

seeds = st.integers(0, 2**32 - 1)
thetas = st.floats(0, 1)


@given(thetas, st.integers(2, 3))
def test_depolarizing_is_unital_channel(theta, d):
    ch = depolarizing(d, theta)
    assert ch.is_trace_preserving()
    assert ch.is_unital()


def test_depolarizing_endpoints(rng):
    rho = random_density(3, rng)
    assert np.allclose(depolarizing(3, 0).apply(rho), rho)
    assert np.allclose(depolarizing(3, 1).apply(rho), np.eye(3) / 3)
    assert np.allclose(depolarizing(3, 0.4).apply(rho), 0.6 * rho + 0.4 * np.eye(3) / 3)
    assert theta_from_mixing(0.25) == 0.75


def test_erasure_flag(rng):
    rho = random_density(2, rng)
    out = erasure(2, 0.3).apply(rho)
    assert out.shape == (3, 3)
    assert np.allclose(out[:2, :2], 0.7 * rho)
    assert np.isclose(out[2, 2], 0.3)


@given(seeds)
def test_dual_pairing(seed):
    rng = np.random.default_rng(seed)
    ch = depolarizing(2, 0.3).then(unitary_channel(random_unitary(2, rng)))
    rho, a = random_density(2, rng), random_density(2, rng)
    assert np.isclose(np.trace(a @ ch.apply(rho)), np.trace(ch.dual(a) @ rho))


@given(seeds)
def test_choi_roundtrip_and_dilation(seed):
    rng = np.random.default_rng(seed)
    u = random_unitary(3, rng)
    ch = depolarizing(3, 0.5).then(unitary_channel(u))
    back = channel_from_choi(ch.choi(), 3, 3)
    rho = random_density(3, rng)
    assert np.allclose(back.apply(rho), ch.apply(rho))
    v = dilate(ch)
    assert np.allclose(v.conj().T @ v, np.eye(3))
    # environment dimension equals the Choi rank
    assert v.shape[0] == 3 * np.linalg.matrix_rank(ch.choi(), tol=1e-10)
    assert np.allclose(dilation_apply(v, rho, 3), ch.apply(rho))


def test_choi_of_identity_is_maximally_entangled():
    c = identity_channel(2).choi()
    assert np.isclose(np.trace(c @ c), 1)
    assert np.allclose(partial_trace(c, (2, 2), 1), np.eye(2) / 2)


def test_transposition_is_not_cp():
    assert not is_completely_positive(transposition_choi(2))
    assert is_completely_positive(depolarizing(2, 0.2).choi())


def test_singular_marginal():
    c = np.zeros((4, 4))
    c[0, 0] = 1
    with pytest.raises(SingularMarginalError):
        channel_from_choi(c, 2, 2)


@pytest.mark.parametrize("which", [0, 1, 2])
def test_oo_channels_trace_preserving(which):
    ch = oo_channel(which, 3)
    assert ch.is_trace_preserving()
    with pytest.raises(ParameterError):
        oo_channel(3, 3)


def test_kraus_shape_checks():
    with pytest.raises(DimensionError):
        KrausChannel((np.eye(2),), 3, 3)
    with pytest.raises(DimensionError):
        depolarizing(2, 0.1).apply(np.eye(3))


def test_classical_channel():
    t = bsc(0.2)
    assert np.allclose(t.apply([1, 0]), [0.8, 0.2])
    with pytest.raises(ParameterError):
        ClassicalChannel(np.array([[0.5, 0.5], [0.6, 0.5]]))


def test_lueders_instrument_probabilities(rng):
    p0 = np.diag([1.0, 0, 0])
    p1 = np.diag([0, 1.0, 1.0])
    inst = lueders_instrument([p0, p1])
    rho = random_density(3, rng)
    probs = inst.probabilities(rho)
    assert np.isclose(sum(probs), 1)
    assert np.isclose(probs[0], rho[0, 0].real)
