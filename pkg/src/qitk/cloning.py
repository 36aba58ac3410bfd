"""Symmetric subspaces, the optimal universal cloner, qubit purification, estimation bounds.

Spin weights for qubit inputs rho = (1 + theta sigma_z)/2 use beta = artanh(theta):
the N-copy state decomposes into spin-s blocks with probabilities w_N(s),
all evaluated in log space so N of a few thousand does not overflow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.special import gammaln, logsumexp

from .channels import KrausChannel
from .core import eigh_desc, partial_trace, proj
from .errors import DimensionError, NotPositiveError, ParameterError, SizeGuardError

# dense d^N x d^N matrices; 2**12 keeps a complex projector near 256 MB
SIZE_GUARD = 2**12


def sym_dim(N, d):
    """Dimension d[N] of the symmetric tensor power."""
    return comb(N + d - 1, d - 1)


def _guard(d, n, limit):
    if d**n > limit:
        raise SizeGuardError(f"d^N = {d}^{n} exceeds the size guard {limit}")


def sym_basis(N, d, limit=SIZE_GUARD):
    """Orthonormal basis of the symmetric subspace, one column per occupation pattern."""
    _guard(d, N, limit)
    groups = {}
    for idx in itertools.product(range(d), repeat=N):
        groups.setdefault(tuple(sorted(idx)), []).append(np.ravel_multi_index(idx, (d,) * N) if N else 0)
    basis = np.zeros((d**N, len(groups)))
    for col, members in enumerate(groups.values()):
        basis[members, col] = 1 / np.sqrt(len(members))
    return basis


def sym_projector(N, d, limit=SIZE_GUARD):
    """S_N, the average of all permutation operators on (C^d)^{(x)N}."""
    b = sym_basis(N, d, limit)
    return b @ b.T


def optimal_cloner(N, M, d, limit=SIZE_GUARD):
    """T(rho) = d[N]/d[M] S_M (rho (x) 1) S_M as a channel on (C^d)^{(x)N}.

    Trace preserving on states supported in the symmetric subspace, which
    is the only input class the cloner is meant for.
    """
    if not 1 <= N <= M:
        raise ParameterError(f"need 1 <= N <= M, got N={N}, M={M}")
    _guard(d, M, limit)
    s = sym_projector(M, d, limit)
    c = np.sqrt(sym_dim(N, d) / sym_dim(M, d))
    extra = d ** (M - N)
    ops = []
    for k in range(extra):
        e = np.zeros((extra, 1))
        e[k] = 1
        ops.append(c * s @ np.kron(np.eye(d**N), e))
    return KrausChannel(tuple(ops), d**N, d**M)


@dataclass(frozen=True)
class ClonerFidelities:
    one: float   # single-copy fidelity of the first output
    all: float   # fidelity of the joint output with psi^{(x)M}


def cloner_fidelities(N, M, d, psi=None, limit=SIZE_GUARD):
    """Fidelities of the optimal cloner, computed by applying it to psi^{(x)N}."""
    if not 1 <= N <= M:
        raise ParameterError(f"need 1 <= N <= M, got N={N}, M={M}")
    if psi is None:
        psi = np.eye(d)[0]
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (d,):
        raise DimensionError(f"input vector must have length {d}")
    psi = psi / np.linalg.norm(psi)
    _guard(d, M, limit)
    b = sym_basis(M, d, limit)
    c = sym_dim(N, d) / sym_dim(M, d)
    psi_n = psi
    for _ in range(N - 1):
        psi_n = np.kron(psi_n, psi)
    # columns S_M (psi^N (x) e_k); out = c * sum_k v_k v_k^dagger
    vs = b @ (b.T @ np.kron(psi_n[:, None], np.eye(d ** (M - N))))
    out = c * vs @ vs.conj().T
    psi_m = psi_n
    for _ in range(M - N):
        psi_m = np.kron(psi_m, psi)
    f_all = float(np.vdot(psi_m, out @ psi_m).real)
    first = partial_trace(out, (d, d ** (M - 1)), 1) if M > 1 else out
    f_one = float(np.vdot(psi, first @ psi).real)
    return ClonerFidelities(f_one, f_all)


def cloner_f1_printed(N, M, d):
    """(d-1)/d * N/(N+d) * (M+d)/M, the frequently quoted single-copy expression.

    It equals the directly computed fidelity minus 1/d; ``cloner_f1_closed``
    adds the offset back.
    """
    return (d - 1) / d * N / (N + d) * (M + d) / M


def cloner_f1_closed(N, M, d):
    return cloner_f1_printed(N, M, d) + 1 / d


def cloner_fall_closed(N, M, d):
    return sym_dim(N, d) / sym_dim(M, d)


def unot_fidelity(N):
    """Optimal universal NOT fidelity with N qubit inputs."""
    if N < 1:
        raise ParameterError("N must be at least 1")
    return 1 - 1 / (N + 2)


@dataclass(frozen=True)
class EstimationBound:
    bound: float                   # (d-1)/d * N/(N+d) as usually quoted
    shifted_by_inverse_d: float    # bound + 1/d, the fidelity scale of the cloner


def estimation_bound(N, d):
    if N < 1 or d < 2:
        raise ParameterError("need N >= 1 and d >= 2")
    b = (d - 1) / d * N / (N + d)
    return EstimationBound(b, b + 1 / d)


# -- qubit spin decomposition ---------------------------------------------------

def _beta(theta):
    if not 0 <= theta <= 1:
        raise ParameterError("theta must lie in [0,1]")
    return np.arctanh(theta) if theta < 1 else np.inf


def _logsinh(x):
    return x + np.log1p(-np.exp(-2 * x)) - np.log(2)


def spin_values(N):
    """s = N/2, N/2 - 1, ... down to 0 or 1/2 (returned ascending)."""
    return np.arange(N % 2 / 2, N / 2 + 1e-9, 1.0)


def log_dim_k(N, s):
    """log of the multiplicity (2s+1)/(N/2+s+1) binom(N, N/2-s)."""
    s = np.asarray(s, dtype=float)
    return (np.log(2 * s + 1) - np.log(N / 2 + s + 1)
            + gammaln(N + 1) - gammaln(N / 2 - s + 1) - gammaln(N / 2 + s + 1))


def spin_log_weights(N, theta):
    """(s, log w_N(s)) for N copies of a qubit with Bloch length theta."""
    if N < 1:
        raise ParameterError("N must be at least 1")
    beta = _beta(theta)
    s = spin_values(N)
    lk = log_dim_k(N, s)
    if beta == 0:
        lw = np.log(2 * s + 1) + lk - N * np.log(2)
    elif np.isinf(beta):
        lw = np.where(np.isclose(s, N / 2), 0.0, -np.inf)
    else:
        lw = (_logsinh((2 * s + 1) * beta) - _logsinh(beta)
              - N * (np.log(2) + np.log(np.cosh(beta))) + lk)
    return s, lw


def spin_weights(N, theta):
    s, lw = spin_log_weights(N, theta)
    return s, np.exp(lw)


def _coth_minus_inv(x):
    """coth(x) - 1/x, stable near 0 and at infinity."""
    if np.isinf(x):
        return 1.0
    if abs(x) < 1e-4:
        return x / 3 - x**3 / 45
    return 1 / np.tanh(x) - 1 / x


def purifier_f1(M, beta, s):
    """Single-copy fidelity of the optimal purifier on a spin-s block."""
    if s == 0:
        return 0.5
    # (2s+1) coth((2s+1) beta) - coth(beta); the 1/beta poles cancel
    dd = (2 * s + 1) * _coth_minus_inv((2 * s + 1) * beta) - _coth_minus_inv(beta)
    if 2 * s > M:
        v = dd / (2 * s)
    else:
        v = (M + 2) / (M * (2 * s + 2)) * dd
    return (1 + v) / 2


def purifier_fall(M, beta, s):
    """Joint fidelity with psi^{(x)M} of the optimal purifier on a spin-s block."""
    n = int(round(2 * s))
    if beta == 0:
        lr = -np.log(n + 1)
    elif np.isinf(beta):
        lr = 0.0
    else:
        lr = np.log1p(-np.exp(-2 * beta)) - np.log1p(-np.exp(-(4 * s + 2) * beta))
    if M > n:
        return float(np.exp(np.log(n + 1) - np.log(M + 1) + lr))
    if np.isinf(beta):
        return 1.0
    k = np.arange(M, n + 1)
    terms = gammaln(k + 1) - gammaln(M + 1) - gammaln(k - M + 1) + 2 * beta * (k - n)
    lc = gammaln(n + 1) - gammaln(M + 1) - gammaln(n - M + 1)
    return float(np.exp(lr + logsumexp(terms) - lc))


def purifier_fidelity(kind, N, M, theta):
    """Fidelity of the optimal qubit purifier taking N copies of rho to M outputs."""
    if kind not in ("one", "all"):
        raise ParameterError(f"kind must be 'one' or 'all', got {kind!r}")
    if M < 1:
        raise ParameterError("M must be at least 1")
    beta = _beta(theta)
    s, w = spin_weights(N, theta)
    f = purifier_f1 if kind == "one" else purifier_fall
    return float(sum(wi * f(M, beta, si) for wi, si in zip(w, s) if wi > 0))


def phi_asymptotic(mu, theta):
    """Limit of the joint purifier fidelity with M = mu N outputs as N grows."""
    if mu <= 0 or not 0 < theta <= 1:
        raise ParameterError("need mu > 0 and theta in (0,1]")
    if mu <= theta:
        return 2 * theta**2 / (2 * theta**2 + mu * (1 - theta))
    return 2 * theta**2 / (mu * (1 + theta))


# -- spectrum estimation ---------------------------------------------------------

def rate_function(s, r):
    """I(s) = sum_j s_j (ln s_j - ln r_j), in nats."""
    s = np.asarray(s, dtype=float)
    r = np.asarray(r, dtype=float)
    if s.shape != r.shape:
        raise DimensionError("spectra must have equal length")
    mask = s > 0
    if np.any(r[mask] <= 0):
        return float("inf")
    return float(np.sum(s[mask] * (np.log(s[mask]) - np.log(r[mask]))))


def _qubit_theta(rho_or_theta):
    if np.isscalar(rho_or_theta):
        return float(rho_or_theta)
    rho = np.asarray(rho_or_theta)
    if rho.shape != (2, 2):
        raise DimensionError("spectrum estimation is implemented for qubits")
    w, _ = eigh_desc(rho)
    return float(w[0] - w[1])


def log_error_probability(N, rho_or_theta, delta):
    """ln K_N(Delta), where K_N sums w_N(s) over 2s/N in the closed interval Delta."""
    theta = _qubit_theta(rho_or_theta)
    lo, hi = delta
    s, lw = spin_log_weights(N, theta)
    x = 2 * s / N
    sel = (x >= lo - 1e-12) & (x <= hi + 1e-12)
    if not sel.any():
        return float("-inf")
    return float(logsumexp(lw[sel]))


def error_probability(N, rho_or_theta, delta):
    return float(np.exp(log_error_probability(N, rho_or_theta, delta)))


def qubit_rate_infimum(theta, delta, grid=4001):
    """inf of I over qubit spectra ((1+x)/2, (1-x)/2) with x in Delta."""
    x = np.linspace(delta[0], delta[1], grid)
    r = np.array([(1 + theta) / 2, (1 - theta) / 2])
    return min(rate_function([(1 + xi) / 2, (1 - xi) / 2], r) for xi in x)


# -- quantum Fisher information -----------------------------------------------------

@dataclass(frozen=True)
class FisherResult:
    sld: tuple
    hellstroem: np.ndarray


def quantum_fisher(rho, partials, tol=1e-10):
    """Symmetric logarithmic derivatives and H_jk = Re tr(rho l_j l_k).

    Needs a full-rank rho; the SLD equation d rho = (l rho + rho l)/2 is
    solved entrywise in the eigenbasis of rho.
    """
    rho = np.asarray(rho, dtype=complex)
    r, v = eigh_desc(rho)
    if r[-1] <= tol:
        raise NotPositiveError("SLD equation needs a full-rank state", eigenvalue=float(r[-1]))
    denom = r[:, None] + r[None, :]
    slds = []
    for dp in partials:
        dp = np.asarray(dp, dtype=complex)
        if dp.shape != rho.shape:
            raise DimensionError("partial derivative has the wrong shape")
        lam = 2 * (v.conj().T @ dp @ v) / denom
        slds.append(v @ lam @ v.conj().T)
    n = len(slds)
    h = np.empty((n, n))
    for j in range(n):
        for k in range(n):
            h[j, k] = np.trace(rho @ slds[j] @ slds[k]).real
    return FisherResult(tuple(slds), (h + h.T) / 2)


def classical_fisher(povm, rho, partials):
    """Fisher information matrix of the outcome distribution of a POVM."""
    p = np.array([np.trace(e @ rho).real for e in povm])
    dp = np.array([[np.trace(e @ d).real for d in partials] for e in povm])
    keep = p > 1e-15
    return (dp[keep].T / p[keep]) @ dp[keep]


def gill_massar_trace(h, w):
    """tr(H^-1 W^-1), bounded by d-1 for measurements on single copies."""
    return float(np.trace(np.linalg.solve(h, np.linalg.inv(w))))


def bloch_qubit(x):
    """rho(x) = (1 + x . sigma)/2 and its three partial derivatives."""
    from .states import PAULI
    x = np.asarray(x, dtype=float)
    rho = 0.5 * (PAULI[0] + sum(xi * p for xi, p in zip(x, PAULI[1:])))
    return rho, [0.5 * p for p in PAULI[1:]]


def pure_projector_power(psi, n):
    """|psi><psi|^{(x)n}."""
    out = proj(psi)
    for _ in range(n - 1):
        out = np.kron(out, proj(psi))
    return out
