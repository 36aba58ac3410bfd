"""Classical, entanglement-assisted and quantum capacity quantities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import ClassicalChannel, KrausChannel, channel_on_first, depolarizing, erasure
from .core import (
    binary_entropy,
    proj,
    purify,
    shannon_entropy,
    trace_norm,
    partial_transpose,
    von_neumann_entropy,
)
from .errors import ConvergenceError, ParameterError, Unavailable


def mutual_information(p, channel: ClassicalChannel):
    """I(p,T) = S(p) + S(q) - S(P) with q = T p and P_xy = T_xy p_y."""
    p = np.asarray(p, dtype=float)
    t = channel.matrix
    if p.shape != (t.shape[1],):
        raise ParameterError("input distribution does not match the channel")
    q = t @ p
    joint = t * p[None, :]
    return shannon_entropy(p) + shannon_entropy(q) - shannon_entropy(joint.ravel())


@dataclass(frozen=True)
class CapacityEstimate:
    value: float      # lower end: I(p,T) at the returned p
    upper: float      # upper end of the bracket
    distribution: np.ndarray
    iterations: int


def shannon_capacity(channel: ClassicalChannel, tol=1e-9, max_iter=100_000):
    """Blahut-Arimoto iteration with the standard capacity bracket.

    With D_y = KL(T_.y | q) (in bits), I(p) <= C <= max_y D_y, and the
    iteration stops when the bracket is narrower than ``tol``.
    """
    t = channel.matrix
    n = t.shape[1]
    p = np.full(n, 1.0 / n)
    for it in range(1, max_iter + 1):
        q = t @ p
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(t > 0, t / q[:, None], 1.0)
            dy = np.sum(np.where(t > 0, t * np.log2(ratio), 0.0), axis=0)
        lower = float(p @ dy)
        upper = float(dy.max())
        if upper - lower < tol:
            return CapacityEstimate(lower, upper, p, it)
        p = p * np.exp2(dy)
        p /= p.sum()
    raise ConvergenceError(f"Blahut-Arimoto did not converge in {max_iter} iterations (bracket {upper - lower:.3g})")


def holevo_chi(probs, states, channel: KrausChannel | None = None):
    """S(sum_j p_j T rho_j) - sum_j p_j S(T rho_j)."""
    probs = np.asarray(probs, dtype=float)
    if np.any(probs < -1e-12) or abs(probs.sum() - 1) > 1e-9:
        raise ParameterError("ensemble probabilities must form a distribution")
    outs = [channel.apply(r) if channel is not None else np.asarray(r) for r in states]
    avg = sum(p * o for p, o in zip(probs, outs))
    return von_neumann_entropy(avg) - sum(p * von_neumann_entropy(o) for p, o in zip(probs, outs))


def entropy_exchange(rho, channel: KrausChannel):
    """S((T (x) Id)|Psi><Psi|) for a purification Psi of rho."""
    psi = purify(rho)
    d = channel.din
    big = channel_on_first(channel, proj(psi), d)
    return von_neumann_entropy(big)


def quantum_mutual_info(rho, channel):
    return von_neumann_entropy(rho) + von_neumann_entropy(channel.apply(rho)) - entropy_exchange(rho, channel)


def coherent_info(rho, channel):
    return von_neumann_entropy(channel.apply(rho)) - entropy_exchange(rho, channel)


# -- closed forms --------------------------------------------------------------

def _xlog2(x):
    return 0.0 if x <= 0 else x * np.log2(x)


def erasure_capacity(d, theta, quantity):
    if not 0 <= theta <= 1:
        raise ParameterError("theta must lie in [0,1]")
    cc = (1 - theta) * np.log2(d)
    table = {
        "Cc": cc,
        "Cc1": cc,
        "Ce": 2 * cc,
        "Cq": max(0.0, (1 - 2 * theta) * np.log2(d)),
        # no closed form at hand; the Choi log-negativity estimate stands in
        "Ctheta": ctheta_choi_bound(erasure(d, theta)),
    }
    if quantity not in table:
        raise ParameterError(f"unknown quantity {quantity!r}")
    return float(table[quantity])


def depolarizing_capacity(d, theta, quantity):
    if not 0 <= theta <= 1:
        raise ParameterError("theta must lie in [0,1]")
    if quantity in ("Cc", "Cq"):
        raise Unavailable(f"{quantity} of the depolarizing channel is not known in closed form")
    if quantity == "Ce":
        a = theta * (d * d - 1) / d**2
        return float(np.log2(d * d) + _xlog2(1 - a) + a * np.log2(theta / d**2) if theta > 0 else np.log2(d * d))
    if quantity == "Cc1":
        a = theta * (d - 1) / d
        return float(np.log2(d) + _xlog2(1 - a) + a * np.log2(theta / d) if theta > 0 else np.log2(d))
    if quantity == "Ctheta":
        if d == 2:
            return float(max(0.0, np.log2(2 - 1.5 * theta)))
        return ctheta_choi_bound(depolarizing(d, theta))
    raise ParameterError(f"unknown quantity {quantity!r}")


def closed_form_capacity(channel, d, theta, quantity):
    if channel == "erasure":
        return erasure_capacity(d, theta, quantity)
    if channel == "depolarizing":
        return depolarizing_capacity(d, theta, quantity)
    raise ParameterError(f"unknown channel {channel!r}")


def ctheta_choi_bound(channel: KrausChannel):
    """log2 of the trace norm of the partially transposed Choi state (bound estimate for C_theta)."""
    c = channel.choi()
    pt = partial_transpose(c, (channel.din, channel.dout), 1)
    return float(np.log2(trace_norm(pt)))


def _s(x):
    return 0.0 if x <= 0 else float(-x * np.log2(x))


def depolarizing_coherent_info_printed(lam, theta):
    """Qubit depolarizing coherent information, evaluated exactly as commonly printed.

    This expression lacks the S((1-lam)(1-theta) + theta/2) output term;
    see ``depolarizing_coherent_info_closed`` for the complete formula.
    """
    a = np.sqrt((2 * lam - 1) ** 2 * (1 - theta / 2) ** 2 + 4 * lam * (1 - lam) * (1 - theta) ** 2)
    return (
        _s(lam * (1 - theta) + theta / 2)
        - _s((1 - theta / 2 + a) / 2)
        - _s((1 - theta / 2 - a) / 2)
        - _s(lam * theta / 2)
        - _s((1 - lam) * theta / 2)
    )


def depolarizing_coherent_info_closed(lam, theta):
    """Complete closed form: output entropy has both eigenvalues lam(1-theta)+theta/2 and its complement."""
    return depolarizing_coherent_info_printed(lam, theta) + _s((1 - lam) * (1 - theta) + theta / 2)


def depolarizing_coherent_info_direct(lam, theta):
    rho = np.diag([lam, 1 - lam]).astype(complex)
    return coherent_info(rho, depolarizing(2, theta))


def depolarizing_cs1(theta):
    """max over inputs of the coherent information; the maximum sits at lam = 1/2 or gives 0."""
    return max(0.0, depolarizing_coherent_info_closed(0.5, theta))


def hashing_curve_printed(theta):
    """1 - H(theta) - theta log2 3, as drawn next to the transposition bound."""
    return 1 - binary_entropy(theta) - theta * np.log2(3)

