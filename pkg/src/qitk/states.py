"""Named states and operators, symmetric families and their twirls."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DimensionError, dims_square, ket, proj, schmidt_decompose, is_majorized
from .errors import ParameterError

FAMILY_TOL = 1e-12

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _check_d(d):
    if int(d) != d or d < 2:
        raise ParameterError(f"dimension must be an integer >= 2, got {d}")
    return int(d)


def flip(d):
    """Swap operator F(x (x) y) = y (x) x."""
    d = _check_d(d)
    f = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            f[j * d + i, i * d + j] = 1
    return f


def omega(d):
    """Maximally entangled vector sum_j |jj> / sqrt(d)."""
    d = _check_d(d)
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1 / np.sqrt(d)
    return v


def ftilde(d):
    """Partial transpose of the flip; equals d |Omega><Omega|."""
    return d * proj(omega(d))


def sym_projector2(d):
    return (np.eye(d * d) + flip(d)) / 2


def antisym_projector2(d):
    return (np.eye(d * d) - flip(d)) / 2


def bell_state(j):
    """Bell basis: Phi_0 = (|00> + |11>)/sqrt 2, Phi_j = i (1 (x) sigma_j) Phi_0."""
    if j not in (0, 1, 2, 3):
        raise ParameterError(f"Bell index must be 0..3, got {j}")
    phi0 = omega(2)
    if j == 0:
        return phi0
    return 1j * np.kron(PAULI[0], PAULI[j]) @ phi0


def bell_basis():
    return np.column_stack([bell_state(j) for j in range(4)])


def named_operator(kind, d=2):
    """Look up a named operator or vector by kind."""
    kinds = {
        "flip": flip,
        "ftilde": ftilde,
        "P+": sym_projector2,
        "P-": antisym_projector2,
        "omega": omega,
    }
    if kind in kinds:
        return kinds[kind](d)
    if kind.startswith("bell"):
        if d != 2:
            raise DimensionError("Bell states exist only for d = 2")
        return bell_state(int(kind[4:]))
    raise ParameterError(f"unknown operator kind {kind!r}")


def oo_projectors(d):
    """The three minimal projections commuting with all O (x) O."""
    d = _check_d(d)
    one = np.eye(d * d)
    F, Ft = flip(d), ftilde(d)
    return Ft / d, (one - F) / 2, (one + F) / 2 - Ft / d


# -- families --------------------------------------------------------------

@dataclass(frozen=True)
class Werner:
    """U (x) U invariant state labelled by f = tr(F rho) in [-1, 1]."""
    f: float
    d: int = 2

    def validate(self):
        _check_d(self.d)
        if not -1 - FAMILY_TOL <= self.f <= 1 + FAMILY_TOL:
            raise ParameterError(f"Werner parameter f={self.f} outside [-1,1]")


@dataclass(frozen=True)
class Isotropic:
    """U (x) conj(U) invariant state labelled by t = tr(Ftilde rho) in [0, d]."""
    t: float
    d: int = 2

    def validate(self):
        _check_d(self.d)
        if not -FAMILY_TOL <= self.t <= self.d + FAMILY_TOL:
            raise ParameterError(f"isotropic parameter t={self.t} outside [0,{self.d}]")


@dataclass(frozen=True)
class OO:
    """O (x) O invariant state labelled by (f, t)."""
    f: float
    t: float
    d: int = 3

    def validate(self):
        _check_d(self.d)
        ok = (
            -1 - FAMILY_TOL <= self.f <= 1 + FAMILY_TOL
            and -FAMILY_TOL <= self.t <= self.d + FAMILY_TOL
            and self.f >= 2 * self.t / self.d - 1 - FAMILY_TOL
        )
        if not ok:
            raise ParameterError(f"OO point (f={self.f}, t={self.t}) outside the admissible triangle")

    def weights(self):
        """Weights of p0, p1/tr p1, p2/tr p2."""
        w0 = self.t / self.d
        w1 = (1 - self.f) / 2
        return np.array([w0, w1, 1 - w0 - w1])


@dataclass(frozen=True)
class BellDiagonal:
    weights: tuple
    d: int = 2

    def validate(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (4,) or np.any(w < -FAMILY_TOL) or abs(w.sum() - 1) > 1e-9:
            raise ParameterError(f"Bell-diagonal weights must be 4 probabilities, got {self.weights}")


def werner_state(f, d=2):
    Werner(f, d).validate()
    dp, dm = d * (d + 1) / 2, d * (d - 1) / 2
    return (1 + f) / (2 * dp) * sym_projector2(d) + (1 - f) / (2 * dm) * antisym_projector2(d)


def isotropic_state(t, d=2):
    Isotropic(t, d).validate()
    return ((t - d) * np.eye(d * d) + (1 - d * t) * ftilde(d)) / (d * (1 - d * d))


def oo_state(f, t, d=3):
    p = OO(f, t, d)
    p.validate()
    w = p.weights()
    return sum(wi * pi / np.trace(pi).real for wi, pi in zip(w, oo_projectors(d)))


def bell_diagonal_state(weights):
    BellDiagonal(tuple(weights)).validate()
    return sum(w * proj(bell_state(j)) for j, w in enumerate(weights))


def family_state(p):
    """Density matrix for a family parameter object."""
    if isinstance(p, Werner):
        return werner_state(p.f, p.d)
    if isinstance(p, Isotropic):
        return isotropic_state(p.t, p.d)
    if isinstance(p, OO):
        return oo_state(p.f, p.t, p.d)
    if isinstance(p, BellDiagonal):
        return bell_diagonal_state(p.weights)
    raise ParameterError(f"unknown family parameter {p!r}")


def family_coords(rho, d=None):
    """(tr F rho, tr Ftilde rho) for a state on C^d (x) C^d."""
    rho = np.asarray(rho)
    d = d or dims_square(rho.shape[0])[0]
    return float(np.trace(flip(d) @ rho).real), float(np.trace(ftilde(d) @ rho).real)


def twirl(kind, rho, d=None):
    """Group-average projection onto the UU, UUbar or OO invariant family.

    Uses the closed forms in terms of tr(F rho) and tr(Ftilde rho).
    """
    rho = np.asarray(rho)
    try:
        d = d or dims_square(rho.shape[0])[0]
    except DimensionError:
        raise DimensionError("twirls need two factors of equal dimension") from None
    if rho.shape != (d * d, d * d):
        raise DimensionError("twirls need two factors of equal dimension")
    f, t = family_coords(rho, d)
    if kind == "UU":
        dp, dm = d * (d + 1) / 2, d * (d - 1) / 2
        return (f + 1) / (2 * dp) * sym_projector2(d) + (1 - f) / (2 * dm) * antisym_projector2(d)
    if kind == "UUbar":
        return ((t - d) * np.eye(d * d) + (1 - d * t) * ftilde(d)) / (d * (1 - d * d))
    if kind == "OO":
        p0, p1, p2 = oo_projectors(d)
        w0, w1 = t / d, (1 - f) / 2
        return w0 * p0 + w1 * p1 / np.trace(p1).real + (1 - w0 - w1) * p2 / np.trace(p2).real
    raise ParameterError(f"unknown twirl kind {kind!r}")


# -- unextendible product bases ------------------------------------------

def upb_vectors(kind):
    """The five product vectors of the 3x3 Pyramid or Tiles UPB."""
    if kind == "Pyramid":
        n = 2 / np.sqrt(5 + np.sqrt(5))
        h = 0.5 * np.sqrt(1 + np.sqrt(5))
        phi = [
            n * np.array([np.cos(2 * np.pi * j / 5), np.sin(2 * np.pi * j / 5), h], dtype=complex)
            for j in range(5)
        ]
        return [np.kron(phi[j], phi[(2 * j) % 5]) for j in range(5)]
    if kind == "Tiles":
        e = [ket(i, 3) for i in range(3)]
        s = 1 / np.sqrt(2)
        return [
            s * np.kron(e[0], e[0] - e[1]),
            s * np.kron(e[2], e[1] - e[2]),
            s * np.kron(e[0] - e[1], e[2]),
            s * np.kron(e[1] - e[2], e[0]),
            np.kron(e[0] + e[1] + e[2], e[0] + e[1] + e[2]) / 3,
        ]
    raise ParameterError(f"unknown UPB {kind!r}")


def upb_state(kind):
    """Normalized projector onto the complement of the UPB span."""
    vecs = upb_vectors(kind)
    gram = np.array([[np.vdot(a, b) for b in vecs] for a in vecs])
    if not np.allclose(gram, np.eye(5), atol=1e-12):
        raise ArithmeticError("UPB vectors are not orthonormal")
    e = sum(proj(v) for v in vecs)
    return (np.eye(9) - e) / (9 - 5)


def locc_convertible(psi, phi, dims):
    """Whether pure psi can be turned into pure phi by LOCC (majorization of Schmidt weights)."""
    a = schmidt_decompose(psi, dims).weights
    b = schmidt_decompose(phi, dims).weights
    return is_majorized(a, b)
