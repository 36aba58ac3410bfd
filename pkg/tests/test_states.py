import numpy as np
import pytest
from hypothesis import given, strategies as st

from qitk.core import is_psd, partial_transpose, random_density
from qitk.errors import ParameterError
from qitk.states import (
    PAULI,
    OO,
    Isotropic,
    Werner,
    antisym_projector2,
    bell_basis,
    bell_state,
    family_coords,
    flip,
    ftilde,
    isotropic_state,
    oo_projectors,
    oo_state,
    sym_projector2,
    twirl,
    upb_state,
    upb_vectors,
    werner_state,
)

seeds = st.integers(0, 2**32 - 1)


def test_bell_basis_orthonormal_and_phases():
    m = bell_basis()
    assert np.allclose(m.conj().T @ m, np.eye(4))
    phi0 = bell_state(0)
    assert np.allclose(phi0, np.array([1, 0, 0, 1]) / np.sqrt(2))
    for j in (1, 2, 3):
        assert np.allclose(bell_state(j), 1j * np.kron(PAULI[0], PAULI[j]) @ phi0)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_projectors(d):
    p, q = sym_projector2(d), antisym_projector2(d)
    assert np.allclose(p @ q, 0)
    assert np.allclose(p + q, np.eye(d * d))
    assert np.allclose(p - q, flip(d))
    ps = oo_projectors(d)
    assert np.allclose(sum(ps), np.eye(d * d))
    for i, a in enumerate(ps):
        assert np.allclose(a @ a, a)
        for b in ps[i + 1:]:
            assert np.allclose(a @ b, 0)


@pytest.mark.parametrize("kind,d", [("UU", 2), ("UU", 3), ("UUbar", 2), ("UUbar", 3), ("OO", 3)])
def test_twirl_idempotent_and_coordinate_preserving(kind, d, rng):
    rho = random_density(d * d, rng)
    once = twirl(kind, rho, d)
    assert np.allclose(twirl(kind, once, d), once)
    assert np.isclose(np.trace(once), 1)
    assert is_psd(once)
    f, t = family_coords(rho, d)
    f1, t1 = family_coords(once, d)
    if kind in ("UU", "OO"):
        assert np.isclose(f, f1)
    if kind in ("UUbar", "OO"):
        assert np.isclose(t, t1)


@given(st.floats(-1, 1), st.integers(2, 4))
def test_werner_roundtrip(f, d):
    rho = werner_state(f, d)
    assert np.isclose(family_coords(rho, d)[0], f)
    assert np.allclose(twirl("UU", rho, d), rho)


@given(st.floats(0, 1), st.integers(2, 4))
def test_isotropic_roundtrip(x, d):
    t = x * d
    rho = isotropic_state(t, d)
    assert np.isclose(family_coords(rho, d)[1], t)
    assert np.allclose(twirl("UUbar", rho, d), rho)


def test_oo_state_is_invariant():
    rho = oo_state(0.3, 1.5, 3)
    assert np.allclose(twirl("OO", rho, 3), rho)
    assert np.allclose(family_coords(rho, 3), (0.3, 1.5))


def test_family_validation():
    with pytest.raises(ParameterError):
        Werner(1.5).validate()
    with pytest.raises(ParameterError):
        Isotropic(3.0, 2).validate()
    with pytest.raises(ParameterError):
        OO(-0.9, 2.5, 3).validate()
    with pytest.raises(ParameterError):
        twirl("XX", np.eye(4) / 4, 2)


def test_ftilde_is_d_omega():
    for d in (2, 3):
        w = np.eye(d).reshape(-1) / np.sqrt(d)
        assert np.allclose(ftilde(d), d * np.outer(w, w))


@pytest.mark.parametrize("kind", ["Tiles", "Pyramid"])
def test_upb(kind):
    vecs = upb_vectors(kind)
    gram = np.array([[np.vdot(a, b) for b in vecs] for a in vecs])
    assert np.allclose(gram, np.eye(5))
    rho = upb_state(kind)
    assert np.isclose(np.trace(rho), 1)
    assert np.linalg.eigvalsh(partial_transpose(rho, (3, 3), 1)).min() >= -1e-10
