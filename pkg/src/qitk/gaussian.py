"""Gaussian states as covariance matrices, their separability, and one-mode channel capacities.

Normalization: a thermal mode with mean photon number N has covariance
2(N + 1/2) * 1, so the vacuum has covariance 1 and a valid covariance
satisfies alpha + i sigma >= 0 with sigma = J (+) J (+) ..., J = [[0,1],[-1,0]].
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import PSD_TOL, eigvalsh, gaussian_g, is_psd, psd_margin
from .errors import DimensionError, ParameterError
from .separability import CriterionVerdict, Verdict

J = np.array([[0.0, 1.0], [-1.0, 0.0]])
PINV_CUTOFF = 1e-10


def symplectic_form(n):
    return np.kron(np.eye(n), J)


def vacuum_cov(n=1):
    return np.eye(2 * n)


def thermal_cov(N, n=1):
    if N < 0:
        raise ParameterError("photon number must be nonnegative")
    return 2 * (N + 0.5) * np.eye(2 * n)


def two_mode_squeezed(r):
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    z = np.diag([1.0, -1.0])
    return np.block([[c * np.eye(2), s * z], [s * z, c * np.eye(2)]])


def _modes(alpha):
    alpha = np.asarray(alpha, dtype=float)
    if alpha.ndim != 2 or alpha.shape[0] != alpha.shape[1] or alpha.shape[0] % 2:
        raise DimensionError(f"covariance must be square with even size, got {alpha.shape}")
    return alpha, alpha.shape[0] // 2


def is_valid_covariance(alpha, tol=PSD_TOL):
    alpha, n = _modes(alpha)
    if not np.allclose(alpha, alpha.T, atol=1e-12):
        return False
    return is_psd(alpha + 1j * symplectic_form(n), tol)


@dataclass(frozen=True)
class GaussianState:
    mean: np.ndarray
    alpha: np.ndarray
    split: tuple = ()

    def __post_init__(self):
        alpha, n = _modes(self.alpha)
        mean = np.asarray(self.mean, dtype=float)
        if mean.shape != (2 * n,):
            raise DimensionError("mean vector length must be twice the number of modes")
        if not is_valid_covariance(alpha):
            raise ParameterError("covariance violates alpha + i sigma >= 0")
        if self.split and sum(self.split) != n:
            raise DimensionError(f"split {self.split} does not add up to {n} modes")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "mean", mean)

    @property
    def modes(self):
        return self.alpha.shape[0] // 2


def _pt_form(na, nb):
    s = np.zeros((2 * (na + nb),) * 2)
    s[: 2 * na, : 2 * na] = -symplectic_form(na)
    s[2 * na:, 2 * na:] = symplectic_form(nb)
    return s


def gaussian_ppt(alpha, split, tol=PSD_TOL):
    """PPT test alpha + i sigma~ >= 0 with sigma~ = (-sigma_A) (+) sigma_B.

    For 1 x n mode splits PPT is equivalent to separability.
    """
    alpha, n = _modes(alpha)
    na, nb = split
    if na + nb != n:
        raise DimensionError(f"split {split} does not match {n} modes")
    lo, thresh = psd_margin(alpha + 1j * _pt_form(na, nb), tol)
    if lo < thresh:
        return CriterionVerdict("gaussian-ppt", Verdict.ENTANGLED, float(lo), True)
    definitive = min(na, nb) == 1
    return CriterionVerdict("gaussian-ppt", Verdict.SEPARABLE if definitive else Verdict.INCONCLUSIVE,
                            float(lo), definitive)


class GiedkeVerdict(enum.Enum):
    SEPARABLE = "Separable"
    ENTANGLED = "Entangled"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class GiedkeResult:
    verdict: GiedkeVerdict
    iterations: int


def giedke_decide(alpha, split, max_iter=50, tol=PSD_TOL):
    """Iterative separability decision for bipartite Gaussian states.

    Iterates X = C (B - i sigma_B)^+ C^T, A' = B' = A - Re X, C' = -Im X.
    Entangled once A - i sigma_A fails to be positive; separable once both
    A - |C| 1 - i sigma_A and B - |C| 1 - i sigma_B are positive (the two
    coincide after the first step, where A = B).
    """
    alpha, n = _modes(alpha)
    na, nb = split
    if na + nb != n:
        raise DimensionError(f"split {split} does not match {n} modes")
    a = alpha[: 2 * na, : 2 * na].astype(complex)
    b = alpha[2 * na:, 2 * na:].astype(complex)
    c = alpha[: 2 * na, 2 * na:].astype(complex)
    sa = symplectic_form(na)
    for it in range(max_iter + 1):
        if not is_psd(a - 1j * sa, tol):
            return GiedkeResult(GiedkeVerdict.ENTANGLED, it)
        cn = np.linalg.norm(c, 2)
        sb = symplectic_form(b.shape[0] // 2)
        if is_psd(a - cn * np.eye(len(a)) - 1j * sa, tol) and is_psd(b - cn * np.eye(len(b)) - 1j * sb, tol):
            return GiedkeResult(GiedkeVerdict.SEPARABLE, it)
        x = c @ np.linalg.pinv(b - 1j * sb, rcond=PINV_CUTOFF) @ c.T
        a_next = a - x.real
        a, b, c = a_next, a_next.copy(), -x.imag
    return GiedkeResult(GiedkeVerdict.UNDECIDED, max_iter)


# -- attenuation / amplification channel --------------------------------------

@dataclass(frozen=True)
class GaussianChannel:
    """One-mode attenuator (k < 1) or amplifier (k > 1) with added classical noise N_c."""
    k: float
    nc: float = 0.0

    def __post_init__(self):
        if self.nc < 0:
            raise ParameterError("classical noise N_c must be nonnegative")

    def thermal_output(self, N):
        if N < 0:
            raise ParameterError("photon number must be nonnegative")
        return self.k**2 * N + max(0.0, self.k**2 - 1) + self.nc

    def _exchange_args(self, N):
        n2 = self.thermal_output(N)
        disc = (N + n2 + 1) ** 2 - 4 * self.k**2 * N * (N + 1)
        dd = np.sqrt(max(disc, 0.0))
        return n2, (dd + n2 - N - 1) / 2, (dd - n2 + N - 1) / 2

    def entropy_exchange(self, N):
        _, x, y = self._exchange_args(N)
        return gaussian_g(_clip(x)) + gaussian_g(_clip(y))

    def coherent_info(self, N):
        n2 = self.thermal_output(N)
        return gaussian_g(n2) - self.entropy_exchange(N)

    def ce(self, N):
        """Entanglement-assisted capacity at mean photon number N."""
        return gaussian_g(N) + self.coherent_info(N)

    def cc1(self, N):
        """One-shot classical capacity, assuming coherent-state encodings are optimal (conjectured)."""
        n0 = max(0.0, self.k**2 - 1) + self.nc
        return gaussian_g(self.thermal_output(N)) - gaussian_g(n0)

    def ctheta(self):
        k2 = self.k**2
        denom = abs(k2 - 1) + 2 * self.nc
        if denom == 0:
            return float("inf")
        return max(0.0, float(np.log2(k2 + 1) - np.log2(denom)))

    def cg(self):
        """Coherent information of thermal inputs in the limit N -> infinity."""
        k2 = self.k**2
        if k2 == 1:
            if self.nc == 0:
                return float("inf")
            return float(-np.log2(self.nc * np.e))
        if self.k == 0:
            return float("-inf")
        return float(np.log2(k2) - np.log2(abs(k2 - 1)) - gaussian_g(self.nc / abs(k2 - 1)))


def _clip(x, tol=1e-9):
    if x < -tol * max(1.0, abs(x)):
        raise ParameterError(f"negative argument {x} for g")
    return max(x, 0.0)


CONJECTURED = {"Cc1"}


def gaussian_capacity(quantity, k, nc=0.0, N=0.0):
    """Capacity-type quantity of the attenuation/amplification channel by name."""
    ch = GaussianChannel(k, nc)
    table = {
        "Ce": lambda: ch.ce(N),
        "Cc1": lambda: ch.cc1(N),
        "Ctheta": ch.ctheta,
        "coherentInfo": lambda: ch.coherent_info(N),
        "CG": ch.cg,
    }
    if quantity not in table:
        raise ParameterError(f"unknown Gaussian quantity {quantity!r}")
    return table[quantity]()


def random_covariance(n, rng, squeeze=0.6, thermal=0.5):
    """Random valid covariance: symplectic transform of a thermal product."""
    from scipy.linalg import expm

    h = rng.normal(size=(2 * n, 2 * n))
    h = h + h.T
    s = expm(symplectic_form(n) @ h * rng.uniform(0, squeeze))
    nu = 1 + rng.exponential(thermal, size=n)
    return s @ np.diag(np.repeat(nu, 2)) @ s.T


def symplectic_eigenvalues(alpha):
    alpha, n = _modes(alpha)
    w = np.linalg.eigvals(1j * symplectic_form(n) @ alpha)
    return np.sort(np.abs(w))[::2]
