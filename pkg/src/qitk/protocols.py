"""Teleportation, dense coding and distillation steps simulated on explicit density matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import eigh_desc, partial_trace, partial_transpose, proj, trace_norm, von_neumann_entropy
from .errors import DimensionError, ParameterError
from .separability import fully_entangled_fraction
from .states import PAULI, omega, twirl

SCHEME_TOL = 1e-10


@dataclass(frozen=True)
class TeleportationScheme:
    """Unitaries U_j with tr(U_j^dagger U_k) = d delta_jk; basis Phi_j = (U_j (x) 1) Omega."""
    d: int
    unitaries: tuple

    def __post_init__(self):
        us = tuple(np.asarray(u, dtype=complex) for u in self.unitaries)
        if len(us) != self.d**2:
            raise ParameterError(f"need {self.d ** 2} unitaries, got {len(us)}")
        for u in us:
            if u.shape != (self.d, self.d) or not np.allclose(u.conj().T @ u, np.eye(self.d), atol=SCHEME_TOL):
                raise ParameterError("scheme operators must be d x d unitaries")
        gram = np.array([[np.trace(a.conj().T @ b) for b in us] for a in us])
        if not np.allclose(gram, self.d * np.eye(len(us)), atol=SCHEME_TOL):
            raise ParameterError("scheme unitaries are not orthogonal: tr(U_j^dagger U_k) != d delta_jk")
        object.__setattr__(self, "unitaries", us)

    def basis(self):
        om = omega(self.d)
        return [np.kron(u, np.eye(self.d)) @ om for u in self.unitaries]

    @classmethod
    def standard_qubit(cls):
        return cls(2, PAULI)

    @classmethod
    def weyl(cls, d):
        x = np.roll(np.eye(d), 1, axis=0)
        z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
        return cls(d, tuple(np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b)
                            for a in range(d) for b in range(d)))


@dataclass(frozen=True)
class TeleportationResult:
    output: np.ndarray
    deviation: float   # trace norm of output - input


def run_teleportation(scheme: TeleportationScheme, rho, resource=None, corrections=None):
    """Teleport rho through the resource (Omega by default).

    Alice measures systems 1,2 in the basis Phi_j; on outcome j Bob applies
    U_j.  ``corrections`` overrides Bob's unitaries, e.g. to test a faulty scheme.
    """
    d = scheme.d
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d, d):
        raise DimensionError(f"input must be {d}x{d}")
    sigma = proj(omega(d)) if resource is None else np.asarray(resource, dtype=complex)
    if sigma.shape != (d * d, d * d):
        raise DimensionError("resource must be a state on C^d (x) C^d")
    corr = scheme.unitaries if corrections is None else corrections
    big = np.kron(rho, sigma)
    out = np.zeros((d, d), dtype=complex)
    for phi, u in zip(scheme.basis(), corr):
        m = np.kron(proj(phi), np.eye(d))
        branch = partial_trace(m @ big @ m, (d * d, d), 0)
        out += u @ branch @ u.conj().T
    return TeleportationResult(out, trace_norm(out - rho))


def run_dense_coding(scheme: TeleportationScheme, resource=None):
    """Transition matrix P[y, x] = tr[(U_x (x) 1) sigma (U_x (x) 1)^dagger E_y] with E_y = |Phi_y><Phi_y|.

    Columns are indexed by the sent symbol, so the matrix is column stochastic.
    """
    d = scheme.d
    n = d * d
    if resource is None:
        # <Phi_y|(U_x (x) 1)|Omega> = tr(U_y^dagger U_x)/d, free of the 1/sqrt(d) rounding
        us = scheme.unitaries
        return np.array([[abs(np.trace(uy.conj().T @ ux)) ** 2 / n for ux in us] for uy in us])
    sigma = np.asarray(resource, dtype=complex)
    basis = scheme.basis()
    p = np.zeros((n, n))
    for x, u in enumerate(scheme.unitaries):
        ux = np.kron(u, np.eye(d))
        s = ux @ sigma @ ux.conj().T
        for y, phi in enumerate(basis):
            p[y, x] = np.vdot(phi, s @ phi).real
    return p


# -- distillation -------------------------------------------------------------------

def _cnot_perm(n, control, target):
    """Permutation matrix of CNOT on n qubits (qubit 0 most significant)."""
    dim = 2**n
    m = np.zeros((dim, dim))
    for i in range(dim):
        bits = [(i >> (n - 1 - k)) & 1 for k in range(n)]
        bits[target] ^= bits[control]
        j = int("".join(map(str, bits)), 2)
        m[j, i] = 1
    return m


# qubits ordered (A1, B1, A2, B2); pair 2 controls, pair 1 is measured
_XOR = _cnot_perm(4, 2, 0) @ _cnot_perm(4, 3, 1)
_AGREE = np.kron(np.diag([1.0, 0, 0, 1.0]), np.eye(4))


def bell_fidelity(rho):
    phi0 = omega(2)
    return float(np.vdot(phi0, np.asarray(rho) @ phi0).real)


def align_to_phi0(rho):
    """Local unitary on Alice's side moving the best maximally entangled vector to Phi_0."""
    from .states import bell_basis
    m = bell_basis()
    w, v = eigh_desc((m.conj().T @ rho @ m).real)
    psi = m @ v[:, 0]
    u = np.sqrt(2) * psi.reshape(2, 2)   # psi = (u (x) 1) Phi_0
    a = np.kron(u.conj().T, np.eye(2))
    return a @ rho @ a.conj().T


@dataclass(frozen=True)
class DistillationStep:
    output: np.ndarray
    success_probability: float
    fidelity_in: float
    fidelity_out: float


def bbpssw_step(rho, align=True):
    """One recurrence step: twirl, bilateral XOR, measure pair 1, keep on agreement."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DimensionError("the recurrence step acts on two-qubit states")
    if align:
        rho = align_to_phi0(rho)
    iso = twirl("UUbar", rho, 2)
    f_in = bell_fidelity(iso)
    if f_in <= 0.5 + 1e-12:
        raise ParameterError(f"fidelity {f_in:.6g} <= 1/2: the recurrence cannot distill")
    big = _AGREE @ _XOR @ np.kron(iso, iso) @ _XOR.T @ _AGREE
    out = partial_trace(big, (4, 4), 0)
    p = float(np.trace(out).real)
    out = out / p
    return DistillationStep(out, p, f_in, bell_fidelity(out))


def bbpssw_map(f):
    """Scalar fidelity map of one step, read off from the density-matrix simulation."""
    from .states import isotropic_state
    return bbpssw_step(isotropic_state(2 * f, 2), align=False).fidelity_out


@dataclass(frozen=True)
class FilterResult:
    output: np.ndarray
    success_probability: float


def filter_step(rho, x, dims=None):
    """Keep branch (X (x) 1) rho (X (x) 1)^dagger of the two-outcome filter, X scaled to a contraction."""
    rho = np.asarray(rho, dtype=complex)
    x = np.asarray(x, dtype=complex)
    if dims is None:
        d = int(round(np.sqrt(rho.shape[0])))
        dims = (d, d)
    if x.shape != (dims[0], dims[0]):
        raise DimensionError("filter must act on the first factor")
    nrm = np.linalg.norm(x, 2)
    if nrm > 1:
        x = x / nrm
    k = np.kron(x, np.eye(dims[1]))
    out = k @ rho @ k.conj().T
    p = float(np.trace(out).real)
    if p <= 1e-14:
        raise ParameterError("filter branch has zero success probability")
    return FilterResult(out / p, p)


def filter_branches(x, d):
    """Kraus operators of the two outcomes: X and sqrt(1 - X^dagger X)."""
    x = np.asarray(x, dtype=complex)
    nrm = np.linalg.norm(x, 2)
    if nrm > 1:
        x = x / nrm
    w, v = eigh_desc(np.eye(d) - x.conj().T @ x)
    return x, v @ np.diag(np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def ppt_filter_operator(rho, dims=None):
    """X_psi^dagger for psi the most negative eigenvector of the partial transpose.

    With psi = (X_psi (x) 1) Phi_0, <psi, rho^T_B psi> < 0 means the filtered
    state has negative expectation of the flip operator, which lifts the
    fully entangled fraction above 1/2.
    """
    rho = np.asarray(rho, dtype=complex)
    if dims is None:
        d = int(round(np.sqrt(rho.shape[0])))
        dims = (d, d)
    if dims[0] != dims[1]:
        raise DimensionError("filter construction needs equal local dimensions")
    w, v = eigh_desc(partial_transpose(rho, dims, 1))
    if w[-1] >= 0:
        raise ParameterError("partial transpose is positive; no filter from this construction")
    x_psi = np.sqrt(dims[0]) * v[:, -1].reshape(dims)
    return x_psi.conj().T


def isotropic_filter(rho, d, subspace=(0, 1)):
    """Project both sides onto a two-dimensional subspace; returns the qubit-pair state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d * d, d * d):
        raise DimensionError("state does not match d")
    p = np.eye(d)[:, list(subspace)]
    k = np.kron(p, p).conj().T
    out = k @ rho @ k.conj().T
    prob = float(np.trace(out).real)
    if prob <= 1e-14:
        raise ParameterError("projection has zero success probability")
    return FilterResult(out / prob, prob)


def hashing_threshold(rho):
    """True when S(rho) <= 1 bit, where hashing has a positive yield."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise DimensionError("hashing threshold is stated for two-qubit states")
    return von_neumann_entropy(rho) <= 1 + 1e-12


def fef(rho):
    return fully_entangled_fraction(rho, 2)
