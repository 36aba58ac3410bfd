"""Entanglement measures: reduced entropy, Wootters' formula, closed forms for symmetric families."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    binary_entropy,
    eigvalsh,
    partial_trace,
    partial_transpose,
    schmidt_decompose,
    shannon_entropy,
    trace_norm,
)
from .errors import DimensionError, ParameterError, Unsupported
from .states import PAULI, BellDiagonal, Isotropic, OO, Werner

ENVELOPE_GRID = 2048


@dataclass(frozen=True)
class MeasureResult:
    value: float
    method: str
    family: str = ""

    def __float__(self):
        return float(self.value)


def pure_entanglement(psi, dims):
    """Entropy of the reduced state of a pure bipartite vector."""
    return shannon_entropy(schmidt_decompose(psi, dims).weights)


def _two_qubit(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DimensionError("Wootters' formula needs a two-qubit state")
    return rho


def concurrence(rho):
    """C = max(0, l1 - l2 - l3 - l4), l_j the eigenvalues of sqrt(sqrt(rho) Xi rho Xi sqrt(rho)).

    The l_j are computed as singular values of sqrt(rho) sqrt(rho~), which
    avoids taking square roots of tiny, noisy eigenvalues.
    """
    rho = _two_qubit(rho)
    yy = np.kron(PAULI[2], PAULI[2])
    w, v = np.linalg.eigh((rho + rho.conj().T) / 2)
    s = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    # sqrt(rho~) = (Y (x) Y) conj(sqrt(rho)) (Y (x) Y)
    lam = np.linalg.svd(s @ yy @ s.conj() @ yy, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1:].sum()))


def eof_from_concurrence(c):
    c = min(max(c, 0.0), 1.0)
    return binary_entropy(0.5 * (1 + np.sqrt(1 - c * c)))


def eof_wootters(rho):
    return eof_from_concurrence(concurrence(rho))


def eof_bell_diagonal(weights):
    lam = max(weights)
    if lam <= 0.5:
        return 0.0
    return binary_entropy(0.5 + np.sqrt(lam * (1 - lam)))


def eof_werner(f):
    if f >= 0:
        return 0.0
    return binary_entropy(0.5 * (1 - np.sqrt(1 - f * f)))


def isotropic_epsilon(t, d):
    """Minimal reduced entropy over pure states with tr(Ftilde |psi><psi|) = t."""
    if t <= 1:
        return 0.0
    gamma = (np.sqrt(t) + np.sqrt((d - 1) * (d - t))) ** 2 / d**2
    gamma = min(max(gamma, 0.0), 1.0)
    return binary_entropy(gamma) + (1 - gamma) * np.log2(d - 1)


def convex_envelope(x, y):
    """Greatest convex minorant of samples (x sorted ascending), evaluated on x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 3:
        raise ParameterError("convex envelope needs at least three samples")
    hull = []
    for i in range(x.size):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            # drop b if it lies on or above the chord from a to i
            if (y[b] - y[a]) * (x[i] - x[a]) >= (y[i] - y[a]) * (x[b] - x[a]):
                hull.pop()
            else:
                break
        hull.append(i)
    return np.interp(x, x[hull], y[hull])


def eof_isotropic(t, d, grid=ENVELOPE_GRID):
    """Convex hull of the isotropic epsilon function, evaluated at t."""
    Isotropic(t, d).validate()
    if t <= 1:
        return 0.0
    xs = np.union1d(np.linspace(0, d, grid), [1.0, t, float(d)])
    ys = np.array([isotropic_epsilon(x, d) for x in xs])
    env = convex_envelope(xs, ys)
    return float(env[np.searchsorted(xs, t)])


def oo_region(p: OO):
    """Which part of the OO triangle the point lies in: separable, A, B or C.

    A has corners (0,1), (1,1), (1,d) and contains the isotropic line t > 1;
    B has corners (-1,0), (0,0), (0,1) and contains the Werner line f < 0;
    C is the remaining triangle (-1,0), (0,1), (1,d).
    """
    p.validate()
    f, t, d = p.f, p.t, p.d
    eps = 1e-12
    if f >= -eps and t <= 1 + eps:
        return "separable"
    # A: below the line from (0,1) to (1,d), i.e. t <= 1 + (d-1) f, with t >= 1
    if t >= 1 - eps and t <= 1 + (d - 1) * f + eps:
        return "A"
    if f <= eps and t <= 1 + f + eps:
        return "B"
    return "C"


def eof_closed_form(p):
    """Entanglement of formation for a symmetric-family parameter object."""
    p.validate()
    if isinstance(p, BellDiagonal):
        return MeasureResult(eof_bell_diagonal(p.weights), "closedForm", "BellDiagonal")
    if isinstance(p, Werner):
        return MeasureResult(eof_werner(p.f), "closedForm", "Werner")
    if isinstance(p, Isotropic):
        return MeasureResult(eof_isotropic(p.t, p.d), "convexHull", "Isotropic")
    if isinstance(p, OO):
        region = oo_region(p)
        if region == "separable":
            return MeasureResult(0.0, "closedForm", "OO")
        if region == "A":
            return MeasureResult(eof_isotropic(p.t, p.d), "convexHull", "OO")
        if region == "B":
            return MeasureResult(eof_werner(p.f), "closedForm", "OO")
        raise Unsupported("no closed form for the entanglement of formation in OO triangle C")
    raise ParameterError(f"unknown family {p!r}")


# -- relative entropy of entanglement -----------------------------------------

def er_bell_diagonal(weights):
    lam = max(weights)
    return 0.0 if lam <= 0.5 else 1 - binary_entropy(lam)


def er_werner(f):
    return 0.0 if f >= 0 else 1 - binary_entropy((1 + f) / 2)


def er_isotropic(t, d):
    if t <= 1:
        return 0.0
    x = t / d
    return float(np.log2(d) - (1 - x) * np.log2(d - 1) - binary_entropy(x))


def _oo_relative_entropy(w, v):
    """S(rho|sigma) for OO states given by projector weights."""
    out = 0.0
    for a, b in zip(w, v):
        if a > 1e-15:
            if b <= 0:
                return float("inf")
            out += a * np.log2(a / b)
    return float(out)


def er_oo(f, t, d):
    """Relative entropy of entanglement of an OO state via the line construction.

    The closest separable state lies on the segment t = 1 (region A, line
    through (1,d)), on f = 0 (region B, line through (-1,0)), or is the
    corner (0,1) (region C).
    """
    p = OO(f, t, d)
    region = oo_region(p)
    if region == "separable":
        return 0.0
    if region == "A":
        # (f,t) = s*(f0,1) + (1-s)*(1,d)
        s = (d - t) / (d - 1)
        f0 = (f - (1 - s)) / s
        sigma = OO(f0, 1.0, d)
    elif region == "B":
        # (f,t) = s*(0,t0) + (1-s)*(-1,0)
        s = f + 1
        t0 = t / s
        sigma = OO(0.0, t0, d)
    else:
        sigma = OO(0.0, 1.0, d)
    return _oo_relative_entropy(p.weights(), sigma.weights())


def er_closed_form(p):
    p.validate()
    if isinstance(p, BellDiagonal):
        return MeasureResult(er_bell_diagonal(p.weights), "closedForm", "BellDiagonal")
    if isinstance(p, Werner):
        return MeasureResult(er_werner(p.f), "closedForm", "Werner")
    if isinstance(p, Isotropic):
        return MeasureResult(er_isotropic(p.t, p.d), "closedForm", "Isotropic")
    if isinstance(p, OO):
        return MeasureResult(er_oo(p.f, p.t, p.d), "geometricRule", "OO")
    raise ParameterError(f"unknown family {p!r}")


@dataclass(frozen=True)
class NonAdditivity:
    single: float
    pair: float
    pair_printed: float


def er_nonadditivity(d):
    """E_R of the antisymmetric Werner state and of two copies of it.

    The pair value is S(rho (x) rho | sigma~) for the separable minimizer
    sigma~ = (d+1)/(2d tr(P+)^2) P+ (x) P+ + (d-1)/(2d tr(P-)^2) P- (x) P-,
    which equals log2(2d/(d-1)) = 2 - log2((2d-2)/d).  ``pair_printed``
    carries the frequently quoted 2 - log2((2d-1)/d) for comparison; it is
    below the PPT lower bound for every d and is not used.
    """
    if d < 2:
        raise ParameterError("d must be at least 2")
    pair = float(np.log2(2 * d / (d - 1)))
    printed = float(2 - np.log2((2 * d - 1) / d))
    return NonAdditivity(1.0, pair, printed)


def log_negativity(rho, dims=None):
    rho = np.asarray(rho)
    if dims is None:
        d = int(round(np.sqrt(rho.shape[0])))
        dims = (d, d)
    return float(np.log2(trace_norm(partial_transpose(rho, dims, 1))))


def reduced_entropy(rho, dims):
    """Entropy of the first marginal; equals the entanglement of pure states."""
    return shannon_entropy(eigvalsh(partial_trace(rho, dims, 1)))
