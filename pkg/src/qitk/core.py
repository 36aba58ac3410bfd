"""Dense linear algebra, tensor bookkeeping and entropies.

Conventions used everywhere in the package:

* tensor factors are ordered left to right and combined with ``np.kron``;
  factor indices are 0-based;
* all entropies are in bits, with 0 log 0 = 0;
* a Hermitian matrix counts as positive when its smallest eigenvalue is
  at least ``-tol * max(max|eig|, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DimensionError, NotPositiveError, ParameterError

PSD_TOL = 1e-9


def hermitian_part(a):
    a = np.asarray(a)
    return (a + a.conj().T) / 2


def eigh_desc(a):
    """Eigen-decomposition of the Hermitian part of ``a``, eigenvalues descending.

    Ties keep their original (ascending-solver) order, so the result is
    reproducible.
    """
    w, v = np.linalg.eigh(hermitian_part(a))
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def eigvalsh(a):
    return np.linalg.eigvalsh(hermitian_part(a))


def psd_margin(a, tol=PSD_TOL):
    """Smallest eigenvalue and the scale-aware threshold it is compared to."""
    w = eigvalsh(a)
    return w.min(), -tol * max(np.abs(w).max(), 1.0)


def is_psd(a, tol=PSD_TOL):
    lo, thresh = psd_margin(a, tol)
    return bool(lo >= thresh)


def is_hermitian(a, tol=1e-9):
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and np.allclose(a, a.conj().T, atol=tol)


def ket(index, d):
    v = np.zeros(d, dtype=complex)
    v[index] = 1
    return v


def proj(v):
    v = np.asarray(v, dtype=complex).ravel()
    return np.outer(v, v.conj())


def tensor(*ops):
    """Kronecker product of any number of matrices or vectors."""
    if len(ops) == 1 and isinstance(ops[0], (list, tuple)):
        ops = tuple(ops[0])
    return reduce(np.kron, ops)


def tensor_product(a, b):
    return np.kron(a, b)


def _check_dims(rho, dims):
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise DimensionError(f"dimensions must be positive, got {dims}")
    n = int(np.prod(dims))
    if rho.shape != (n, n):
        raise DimensionError(f"matrix shape {rho.shape} does not match dims {dims}")
    return dims


def _check_factor(factor, dims):
    if not 0 <= factor < len(dims):
        raise DimensionError(f"factor index {factor} out of range for {len(dims)} factors")


def partial_trace(rho, dims, factor):
    """Trace out tensor factor ``factor`` (0-based) of ``rho``.

    ``factor`` may also be a sequence of indices.
    """
    rho = np.asarray(rho)
    dims = _check_dims(rho, dims)
    factors = [factor] if np.isscalar(factor) else sorted(set(factor))
    for f in factors:
        _check_factor(f, dims)
    t = rho.reshape(dims + dims)
    # trace highest index first so lower axis numbers stay valid
    for f in sorted(factors, reverse=True):
        m = t.ndim // 2
        t = np.trace(t, axis1=f, axis2=f + m)
    keep = [d for i, d in enumerate(dims) if i not in factors]
    k = int(np.prod(keep)) if keep else 1
    return t.reshape(k, k)


def reduced_state(rho, dims, keep):
    """Marginal on the factors listed in ``keep``."""
    keep = [keep] if np.isscalar(keep) else list(keep)
    drop = [i for i in range(len(dims)) if i not in keep]
    return partial_trace(rho, dims, drop) if drop else np.asarray(rho)


def partial_transpose(rho, dims, factor):
    """Transpose tensor factor ``factor`` in the computational basis."""
    rho = np.asarray(rho)
    dims = _check_dims(rho, dims)
    _check_factor(factor, dims)
    n = len(dims)
    t = rho.reshape(dims + dims)
    axes = list(range(2 * n))
    axes[factor], axes[factor + n] = axes[factor + n], axes[factor]
    return t.transpose(axes).reshape(rho.shape)


@dataclass(frozen=True)
class Schmidt:
    weights: np.ndarray  # squared coefficients, descending, sum 1
    left: np.ndarray     # columns are the left orthonormal system
    right: np.ndarray

    @property
    def coefficients(self):
        return np.sqrt(self.weights)

    @property
    def rank(self):
        return int(np.sum(self.weights > 1e-12))


def schmidt_decompose(psi, dims):
    """Schmidt decomposition psi = sum_j sqrt(w_j) left_j (x) right_j."""
    psi = np.asarray(psi, dtype=complex).ravel()
    if len(dims) != 2:
        raise DimensionError("Schmidt decomposition needs exactly two factors")
    d1, d2 = dims
    if psi.size != d1 * d2:
        raise DimensionError(f"vector of length {psi.size} does not match {d1}x{d2}")
    u, s, vh = np.linalg.svd(psi.reshape(d1, d2))
    return Schmidt(weights=s**2, left=u[:, : s.size], right=vh[: s.size].T)


def purify(rho):
    """Vector Psi in H (x) H with tr_2 |Psi><Psi| = rho.

    Built as sum_j sqrt(r_j) e_j (x) |j>, so a pure input gives psi (x) |0>.
    """
    w, v = eigh_desc(rho)
    w = np.clip(w, 0, None)
    d = len(w)
    psi = np.zeros(d * d, dtype=complex)
    for j in range(d):
        psi += np.sqrt(w[j]) * np.kron(v[:, j], ket(j, d))
    return psi


# -- entropies -------------------------------------------------------------

def _xlog2x(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log2(x[pos])
    return out


def shannon_entropy(p):
    p = np.asarray(p, dtype=float)
    return float(-np.sum(_xlog2x(np.clip(p, 0, None))))


def von_neumann_entropy(rho):
    return shannon_entropy(eigvalsh(rho))


def binary_entropy(x):
    x = float(x)
    if x < -1e-12 or x > 1 + 1e-12:
        raise ParameterError(f"binary entropy needs x in [0,1], got {x}")
    x = min(max(x, 0.0), 1.0)
    return shannon_entropy([x, 1 - x])


def gaussian_g(x):
    """g(x) = (x+1) log2(x+1) - x log2 x, the entropy of a thermal mode."""
    x = float(x)
    if x < -1e-12:
        raise ParameterError(f"g needs x >= 0, got {x}")
    x = max(x, 0.0)
    return float((x + 1) * np.log2(x + 1) - _xlog2x(x))


def relative_entropy(rho, sigma, tol=1e-12):
    """S(rho|sigma) = tr rho (log rho - log sigma); inf when supp rho is not in supp sigma."""
    r, u = np.linalg.eigh(hermitian_part(rho))
    s, v = np.linalg.eigh(hermitian_part(sigma))
    # overlap[j,k] = |<u_j, v_k>|^2
    overlap = np.abs(u.conj().T @ v) ** 2
    r = np.clip(r, 0, None)
    s_pos = s > tol
    weight_outside = overlap[:, ~s_pos] @ np.ones((~s_pos).sum()) if (~s_pos).any() else np.zeros(len(r))
    if np.any((r > tol) & (weight_outside > tol)):
        return float("inf")
    log_s = np.zeros_like(s)
    log_s[s_pos] = np.log2(s[s_pos])
    cross = float(r @ overlap @ log_s)
    return float(np.sum(_xlog2x(r)) - cross)


def entropy(kind, *args):
    """Dispatch by name: vonNeumann, relative, binaryH, gaussianG."""
    table = {
        "vonNeumann": von_neumann_entropy,
        "relative": relative_entropy,
        "binaryH": binary_entropy,
        "gaussianG": gaussian_g,
    }
    try:
        fn = table[kind]
    except KeyError:
        raise ParameterError(f"unknown entropy kind {kind!r}") from None
    return fn(*args)


def is_majorized(lam, mu, tol=1e-12):
    """True iff lam is majorized by mu (partial sums of sorted lam <= those of mu)."""
    lam = np.sort(np.asarray(lam, dtype=float))[::-1]
    mu = np.sort(np.asarray(mu, dtype=float))[::-1]
    n = max(lam.size, mu.size)
    lam = np.pad(lam, (0, n - lam.size))
    mu = np.pad(mu, (0, n - mu.size))
    return bool(np.all(np.cumsum(lam) <= np.cumsum(mu) + tol))


def trace_norm(a):
    return float(np.sum(np.linalg.svd(np.asarray(a), compute_uv=False)))


# -- validated states --------------------------------------------------------

@dataclass(frozen=True)
class DensityMatrix:
    """Positive unit-trace matrix with a tensor factorization ``dims``."""

    matrix: np.ndarray
    dims: tuple = field(default=())
    tol: float = PSD_TOL

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"density matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ParameterError("density matrix has non-finite entries")
        dims = tuple(self.dims) if self.dims else (m.shape[0],)
        if int(np.prod(dims)) != m.shape[0]:
            raise DimensionError(f"dims {dims} do not multiply to {m.shape[0]}")
        if not is_hermitian(m, tol=max(self.tol, 1e-12) * max(1.0, np.abs(m).max())):
            raise NotPositiveError("matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1) > 1e-8:
            raise ParameterError(f"trace is {tr}, expected 1")
        lo, thresh = psd_margin(m, self.tol)
        if lo < thresh:
            raise NotPositiveError(f"negative eigenvalue {lo:.3g}", eigenvalue=lo)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def ptrace(self, factor):
        keep = tuple(d for i, d in enumerate(self.dims) if i != factor)
        return DensityMatrix(partial_trace(self.matrix, self.dims, factor), keep or (1,))

    def entropy(self):
        return von_neumann_entropy(self.matrix)


def as_matrix(rho):
    return np.asarray(rho, dtype=complex)


def random_unitary(d, rng):
    """Haar-random unitary via QR of a Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_vector(d, rng):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_density(d, rng, rank=None):
    """Random state from the induced measure (Hilbert-Schmidt when rank is None)."""
    k = d if rank is None else rank
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def dims_square(n):
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise DimensionError(f"cannot split dimension {n} into two equal factors")
    return (d, d)


def reorder(rho, dims, perm: Sequence[int]):
    """Permute tensor factors of a matrix: new factor i is old factor perm[i]."""
    rho = np.asarray(rho)
    dims = tuple(dims)
    n = len(dims)
    t = rho.reshape(dims + dims)
    t = t.transpose(list(perm) + [p + n for p in perm])
    m = int(np.prod(dims))
    return t.reshape(m, m)
