import numpy as np
import pytest
from hypothesis import given, strategies as st

from qitk.core import random_density, random_unitary, random_vector, proj
from qitk.errors import ParameterError
from qitk.separability import (
    Verdict,
    chsh_optimal_settings,
    chsh_value,
    family_separable,
    fully_entangled_fraction,
    ppt_check,
    range_check,
    reduction_check,
    witness_check,
)
from qitk.states import (
    BellDiagonal,
    Isotropic,
    Werner,
    bell_diagonal_state,
    bell_state,
    flip,
    isotropic_state,
    omega,
    upb_state,
    werner_state,
)

seeds = st.integers(0, 2**32 - 1)


@pytest.mark.parametrize("d", [2, 3])
def test_ppt_matches_werner_threshold(d):
    for f in np.linspace(-1, 1, 41):
        assert ppt_check(werner_state(f, d)).entangled == (f < 0)


@pytest.mark.parametrize("d", [2, 3])
def test_reduction_matches_isotropic_threshold(d):
    for x in np.linspace(0, 1, 41):
        t = x * d
        assert reduction_check(isotropic_state(t, d)).entangled == (t > 1 + 1e-9)
        assert family_separable(Isotropic(t, d)).entangled == (t > 1 + 1e-9)


def test_small_dimensions_are_definitive():
    v = ppt_check(werner_state(0.3))
    assert v.verdict is Verdict.SEPARABLE and v.definitive
    v = ppt_check(werner_state(0.3, 3))
    assert v.verdict is Verdict.INCONCLUSIVE and not v.definitive


def test_ppt_witness_vector():
    v = ppt_check(proj(bell_state(0)))
    w = v.witness
    from qitk.core import partial_transpose
    assert np.vdot(w, partial_transpose(proj(bell_state(0)), (2, 2), 1) @ w).real == pytest.approx(-0.5)


def test_chsh_bell_and_products():
    settings = chsh_optimal_settings()
    assert chsh_value(proj(bell_state(0)), *settings) == pytest.approx(2 * np.sqrt(2))
    with pytest.raises(ParameterError):
        chsh_value(np.eye(4) / 4, 2 * np.eye(2), *settings[1:])


@given(seeds)
def test_chsh_bounded_on_product_states(seed):
    rng = np.random.default_rng(seed)
    rho = np.kron(random_density(2, rng), random_density(2, rng))
    assert abs(chsh_value(rho, *chsh_optimal_settings())) <= 2 + 1e-12


def test_fef_bell_diagonal_and_isotropic():
    w = [0.1, 0.6, 0.2, 0.1]
    assert fully_entangled_fraction(bell_diagonal_state(w)) == pytest.approx(0.6)
    assert fully_entangled_fraction(isotropic_state(2.0, 3), restarts=8) == pytest.approx(2 / 3, abs=1e-8)


@given(seeds)
def test_fef_dominates_local_rotations(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(9, rng)
    u = random_unitary(3, rng)
    psi = np.kron(u, np.eye(3)) @ omega(3)
    assert fully_entangled_fraction(rho, 3, restarts=8, seed=seed) >= np.vdot(psi, rho @ psi).real - 1e-9


def test_family_separable_bell_diagonal():
    assert family_separable(BellDiagonal([0.5, 0.5, 0, 0])).verdict is Verdict.SEPARABLE
    assert family_separable(BellDiagonal([0.6, 0.4, 0, 0])).entangled
    assert family_separable(Werner(0.0)).verdict is Verdict.SEPARABLE


def test_flip_witness_on_werner():
    v = witness_check(flip(2), werner_state(-0.5), samples=2000)
    assert v.entangled and not v.definitive
    assert witness_check(flip(2), werner_state(0.5), samples=200).verdict is Verdict.INCONCLUSIVE


def test_range_check_upb_and_product(rng):
    v = range_check(upb_state("Tiles"), (3, 3), samples=2000)
    assert v.entangled
    prod = np.kron(proj(random_vector(3, rng)), np.eye(3) / 3)
    assert range_check(prod, (3, 3), samples=200).verdict is Verdict.INCONCLUSIVE
