"""Channels in Kraus form, Choi states, dilations, named channels and instruments.

A ``KrausChannel`` acts on density matrices (Schroedinger picture) as
rho -> sum_j K_j rho K_j^dagger; the Heisenberg picture is the adjoint
A -> sum_j K_j^dagger A K_j.

The depolarizing noise parameter follows the convention where theta = 0 is
the identity and theta = 1 the completely depolarizing channel.  Code that
uses the complementary parameter should convert with
``theta_from_mixing``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import eigh_desc, eigvalsh, is_psd, partial_trace, proj, ket
from .errors import DimensionError, NotPositiveError, ParameterError, SingularMarginalError
from .states import omega

KRAUS_CUTOFF = 1e-12


@dataclass(frozen=True)
class KrausChannel:
    kraus: tuple
    din: int
    dout: int

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
        for k in ops:
            if k.shape != (self.dout, self.din):
                raise DimensionError(f"Kraus operator of shape {k.shape}, expected {(self.dout, self.din)}")
        object.__setattr__(self, "kraus", ops)

    @classmethod
    def from_ops(cls, ops):
        ops = [np.asarray(k, dtype=complex) for k in ops]
        dout, din = ops[0].shape
        return cls(tuple(ops), din, dout)

    def apply(self, rho):
        rho = np.asarray(rho)
        if rho.shape != (self.din, self.din):
            raise DimensionError(f"input of shape {rho.shape}, channel expects {self.din}x{self.din}")
        return sum(k @ rho @ k.conj().T for k in self.kraus)

    def dual(self, a):
        a = np.asarray(a)
        if a.shape != (self.dout, self.dout):
            raise DimensionError(f"observable of shape {a.shape}, channel outputs {self.dout}x{self.dout}")
        return sum(k.conj().T @ a @ k for k in self.kraus)

    __call__ = apply

    def is_trace_preserving(self, tol=1e-9):
        s = sum(k.conj().T @ k for k in self.kraus)
        return bool(np.allclose(s, np.eye(self.din), atol=tol))

    def is_unital(self, tol=1e-9):
        s = sum(k @ k.conj().T for k in self.kraus)
        return self.din == self.dout and bool(np.allclose(s, np.eye(self.dout), atol=tol))

    def then(self, other):
        """Composition: apply self first, then other."""
        if other.din != self.dout:
            raise DimensionError("cannot compose channels with mismatched dimensions")
        ops = [b @ a for a in self.kraus for b in other.kraus]
        return KrausChannel(tuple(ops), self.din, other.dout)

    def tensor(self, other):
        ops = [np.kron(a, b) for a in self.kraus for b in other.kraus]
        return KrausChannel(tuple(ops), self.din * other.din, self.dout * other.dout)

    def choi(self):
        return choi_state(self)

    def canonical(self):
        """Minimal Kraus set from the Choi eigendecomposition."""
        return channel_from_choi(self.choi(), self.din, self.dout)


def apply_channel(channel, rho, picture="schrodinger"):
    if picture == "schrodinger":
        return channel.apply(rho)
    if picture == "heisenberg":
        return channel.dual(rho)
    raise ParameterError(f"unknown picture {picture!r}")


def identity_channel(d):
    return KrausChannel((np.eye(d),), d, d)


def unitary_channel(u):
    u = np.asarray(u, dtype=complex)
    return KrausChannel((u,), u.shape[1], u.shape[0])


def _check_theta(theta):
    if not 0 <= theta <= 1:
        raise ParameterError(f"noise parameter must lie in [0,1], got {theta}")


def theta_from_mixing(p):
    """Convert the complementary convention rho -> p rho + (1-p) 1/d to theta = 1 - p."""
    return 1 - p


def depolarizing(d, theta):
    """rho -> (1 - theta) rho + theta tr(rho) 1/d, via generalized Pauli Kraus operators."""
    _check_theta(theta)
    if d < 2:
        raise ParameterError("depolarizing channel needs d >= 2")
    ops = []
    for a in range(d):
        for b in range(d):
            w = weyl(a, b, d)
            if a == 0 and b == 0:
                c = np.sqrt(1 - theta + theta / d**2)
            else:
                c = np.sqrt(theta / d**2)
            if c > 0:
                ops.append(c * w)
    return KrausChannel(tuple(ops), d, d)


def weyl(a, b, d):
    """Generalized Pauli X^a Z^b on C^d."""
    x = np.roll(np.eye(d), 1, axis=0)
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b)


def erasure(d, theta):
    """Replace the input by the erasure flag |d> with probability theta; output dimension d+1."""
    _check_theta(theta)
    emb = np.zeros((d + 1, d), dtype=complex)
    emb[:d, :d] = np.eye(d)
    ops = [np.sqrt(1 - theta) * emb]
    for i in range(d):
        ops.append(np.sqrt(theta) * np.outer(ket(d, d + 1), ket(i, d)))
    return KrausChannel(tuple(ops), d, d + 1)


def oo_channel(which, d):
    """The three extremal O (x) O covariant channels T0, T1, T2 (Heisenberg maps, d >= 2).

    T0(A) = A
    T1(A) = (tr(A) 1 - A^T) / (d - 1)
    T2(A) = 2 / (d(d+1) - 2) * [d/2 (tr(A) 1 + A^T) - A]
    """
    if which == 0:
        return identity_channel(d)
    if which == 1:
        fn = lambda a: (np.trace(a) * np.eye(d) - a.T) / (d - 1)
    elif which == 2:
        fn = lambda a: 2 / (d * (d + 1) - 2) * (d / 2 * (np.trace(a) * np.eye(d) + a.T) - a)
    else:
        raise ParameterError("OO channel index must be 0, 1 or 2")
    # these maps are self-dual in the Hilbert-Schmidt pairing, so the same
    # linear map serves as the Schroedinger action
    return channel_from_linear_map(fn, d, d)


def channel_from_linear_map(fn, din, dout):
    """Kraus channel of a linear map given as a Python callable on matrices."""
    c = np.zeros((din * dout, din * dout), dtype=complex)
    for i in range(din):
        for j in range(din):
            e = np.zeros((din, din), dtype=complex)
            e[i, j] = 1
            c += np.kron(e, fn(e)) / din
    return channel_from_choi(c, din, dout)


def choi_state(channel):
    """(Id (x) T)|Omega><Omega| with normalized Omega."""
    d = channel.din
    big = channel_on_second(channel, proj(omega(d)) if d > 1 else np.ones((1, 1)), d)
    return big


def channel_on_second(channel, rho, dfirst):
    """(Id (x) T)(rho) for rho on C^dfirst (x) C^din."""
    ops = [np.kron(np.eye(dfirst), k) for k in channel.kraus]
    return sum(k @ rho @ k.conj().T for k in ops)


def channel_on_first(channel, rho, dsecond):
    ops = [np.kron(k, np.eye(dsecond)) for k in channel.kraus]
    return sum(k @ rho @ k.conj().T for k in ops)


def is_completely_positive(choi, tol=1e-9):
    return is_psd(choi, tol)


def transposition_choi(d):
    """Choi matrix of the transposition map, F/d, which is not positive."""
    from .states import flip
    return flip(d) / d


def channel_from_choi(rho, din, dout, tol=1e-12):
    """Channel T with rho = (Id (x) T)(sigma), sigma a purification of tr_2 rho.

    For a Choi state (marginal 1/din) sigma is |Omega><Omega|.  A singular
    marginal raises ``SingularMarginalError``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (din * dout, din * dout):
        raise DimensionError(f"Choi matrix of shape {rho.shape} does not fit {din}->{dout}")
    w = eigvalsh(rho)
    if w.min() < -1e-9 * max(abs(w).max(), 1):
        raise NotPositiveError(f"Choi matrix has negative eigenvalue {w.min():.3g}", w.min())
    marg = partial_trace(rho, (din, dout), 1)
    mw, mv = eigh_desc(marg)
    if mw.min() <= 1e-12 * max(mw.max(), 1):
        raise SingularMarginalError(f"marginal has zero eigenvalue {mw.min():.3g}", mw.min())
    # rescale so the first marginal becomes 1/din; x acts on the first factor
    x = mv @ np.diag(1 / np.sqrt(din * mw)) @ mv.conj().T
    xt = np.kron(x, np.eye(dout))
    c = xt @ rho @ xt.conj().T
    cw, cv = eigh_desc(c)
    ops = []
    for lam, v in zip(cw, cv.T):
        if lam > tol:
            # v = sum_{i,a} v[i,a] |i>|a>  ->  K = sqrt(din*lam) sum v[i,a] |a><i|
            m = v.reshape(din, dout)
            ops.append(np.sqrt(din * lam) * m.T)
    return KrausChannel(tuple(ops), din, dout)


def dilate(channel):
    """Stinespring isometry V: C^din -> C^dout (x) C^env with env = Choi rank."""
    if not channel.is_trace_preserving():
        raise ParameterError("dilation needs a trace-preserving channel")
    can = channel.canonical()
    env = len(can.kraus)
    v = sum(np.kron(k, ket(i, env).reshape(env, 1)) for i, k in enumerate(can.kraus))
    return v


def dilation_apply(v, rho, dout):
    env = v.shape[0] // dout
    return partial_trace(v @ rho @ v.conj().T, (dout, env), 1)


# -- classical channels ----------------------------------------------------

@dataclass(frozen=True)
class ClassicalChannel:
    """Column-stochastic transition matrix: T[x, y] = Prob(output x | input y)."""
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2:
            raise DimensionError("transition matrix must be two dimensional")
        if np.any(m < -1e-12) or np.any(m > 1 + 1e-12):
            raise ParameterError("transition probabilities must lie in [0,1]")
        if not np.allclose(m.sum(axis=0), 1, atol=1e-9):
            raise ParameterError("each column of the transition matrix must sum to 1")
        object.__setattr__(self, "matrix", m)

    @property
    def n_in(self):
        return self.matrix.shape[1]

    @property
    def n_out(self):
        return self.matrix.shape[0]

    def apply(self, p):
        return self.matrix @ np.asarray(p, dtype=float)


def bsc(p):
    """Binary symmetric channel flipping each bit with probability p."""
    if not 0 <= p <= 1:
        raise ParameterError(f"flip probability must lie in [0,1], got {p}")
    return ClassicalChannel(np.array([[1 - p, p], [p, 1 - p]]))


def named_channel(kind, *args):
    table = {
        "depolarizing": depolarizing,
        "erasure": erasure,
        "oo": oo_channel,
        "bsc": bsc,
        "identity": identity_channel,
    }
    if kind not in table:
        raise ParameterError(f"unknown channel kind {kind!r}")
    return table[kind](*args)


# -- instruments -----------------------------------------------------------

@dataclass(frozen=True)
class Instrument:
    outcomes: tuple
    ops: tuple  # KrausChannel per outcome, trace non-increasing

    def total(self):
        ops = [k for ch in self.ops for k in ch.kraus]
        first = self.ops[0]
        return KrausChannel(tuple(ops), first.din, first.dout)

    def probabilities(self, rho):
        return np.array([np.trace(ch.apply(rho)).real for ch in self.ops])

    def measure(self, rho):
        """Outcome probabilities and normalized post-measurement states."""
        out = []
        for ch in self.ops:
            s = ch.apply(rho)
            p = np.trace(s).real
            out.append((p, s / p if p > 1e-15 else None))
        return out


def lueders_instrument(projectors: Sequence[np.ndarray], labels=None, tol=1e-9):
    ps = [np.asarray(p, dtype=complex) for p in projectors]
    d = ps[0].shape[0]
    if not np.allclose(sum(ps), np.eye(d), atol=tol):
        raise ParameterError("projectors do not sum to the identity")
    for i, p in enumerate(ps):
        if not np.allclose(p @ p, p, atol=tol) or not np.allclose(p, p.conj().T, atol=tol):
            raise ParameterError(f"element {i} is not an orthogonal projection")
        for q in ps[i + 1:]:
            if not np.allclose(p @ q, 0, atol=tol):
                raise ParameterError("projections are not mutually orthogonal")
    labels = tuple(labels) if labels is not None else tuple(range(len(ps)))
    return Instrument(labels, tuple(KrausChannel((p,), d, d) for p in ps))
