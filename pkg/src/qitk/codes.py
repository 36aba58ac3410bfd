"""Graph codes over Z_d, the linear-system detection test, and the Knill-Laflamme check.

Vertices 0..N-1 are inputs X, vertices N..N+M-1 are outputs Y.  The code
isometry has matrix elements

    <j_Y| V |j_X> = d^{-M/2} exp(i pi/d  j . Gamma j)

where j = (j_X, j_Y) runs over Z_d^{N+M}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotIsometricError, ParameterError, SizeGuardError

ISOMETRY_TOL = 1e-9
ENUM_LIMIT = 10**6
SIZE_GUARD = 2**14


@dataclass(frozen=True)
class CodeGraph:
    d: int
    gamma: np.ndarray
    n_in: int
    n_out: int

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=int)
        n = self.n_in + self.n_out
        if g.shape != (n, n):
            raise DimensionError(f"adjacency must be {n}x{n}, got {g.shape}")
        if not np.array_equal(g, g.T):
            raise ParameterError("adjacency matrix must be symmetric")
        if self.d < 2 or g.min() < 0 or g.max() >= self.d:
            raise ParameterError(f"adjacency entries must lie in 0..{self.d - 1}")
        object.__setattr__(self, "gamma", g)

    @property
    def inputs(self):
        return list(range(self.n_in))

    @property
    def outputs(self):
        return list(range(self.n_in, self.n_in + self.n_out))

    @classmethod
    def from_edges(cls, d, n_in, n_out, edges):
        g = np.zeros((n_in + n_out,) * 2, dtype=int)
        for e in edges:
            u, v = e[0], e[1]
            w = e[2] if len(e) > 2 else 1
            g[u, v] = g[v, u] = w % d
        return cls(d, g, n_in, n_out)


def _isprime(n):
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def build_isometry(g: CodeGraph, tol=ISOMETRY_TOL, check=True):
    d, n, m = g.d, g.n_in, g.n_out
    if d ** (n + m) > SIZE_GUARD:
        raise SizeGuardError(f"d^(N+M) = {d ** (n + m)} exceeds {SIZE_GUARD}")
    js = np.array(list(itertools.product(range(d), repeat=n + m)), dtype=int).reshape(-1, n + m)
    quad = np.einsum("ij,jk,ik->i", js, g.gamma, js)
    amp = np.exp(1j * np.pi / d * quad) / d ** (m / 2)
    # rows of js are ordered with the input digits most significant
    v = amp.reshape(d**n, d**m).T
    if check:
        gram = v.conj().T @ v
        if not np.allclose(gram, np.eye(d**n), atol=tol):
            raise NotIsometricError("graph code map is not an isometry", gram)
    return v


def _nullspace_mod_p(a, p):
    """Basis of {x : a x = 0 mod p} for prime p, as rows."""
    a = np.array(a, dtype=int) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = [i for i in range(r, rows) if a[i, c]]
        if not nz:
            continue
        a[[r, nz[0]]] = a[[nz[0], r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=int)
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = (-a[i, f]) % p
        basis.append(x)
    return basis


def _solutions(a, d):
    """Kernel basis (prime d) or every solution (composite d) of a x = 0 over Z_d."""
    cols = a.shape[1]
    if _isprime(d):
        return _nullspace_mod_p(a, d)
    if d**cols > ENUM_LIMIT:
        raise SizeGuardError(f"enumerating {d}^{cols} candidate solutions exceeds {ENUM_LIMIT}")
    out = []
    for x in itertools.product(range(d), repeat=cols):
        x = np.array(x, dtype=int)
        if not np.any((a @ x) % d):
            out.append(x)
    return out


def detects_configuration(g: CodeGraph, z):
    """Whether the code detects errors on the output vertices z.

    Every solution g_l, l in X u Z, of sum_l Gamma_kl g_l = 0 (k in Y minus Z)
    must vanish on X and satisfy sum_{l in Z} Gamma_kl g_l = 0 for k in X.
    For prime d the conditions are linear, so checking a kernel basis suffices.
    """
    z = sorted(set(z))
    if not set(z) <= set(g.outputs):
        raise ParameterError(f"configuration {z} is not a subset of the outputs")
    x = g.inputs
    cols = x + z
    rest = [k for k in g.outputs if k not in z]
    a = g.gamma[np.ix_(rest, cols)] if rest else np.zeros((0, len(cols)), dtype=int)
    gz = g.gamma[np.ix_(x, z)]
    nx = len(x)
    for sol in _solutions(a, g.d):
        if np.any(sol[:nx] % g.d):
            return False
        if np.any((gz @ sol[nx:]) % g.d):
            return False
    return True


def configurations(g: CodeGraph, max_size):
    for k in range(max_size + 1):
        yield from itertools.combinations(g.outputs, k)


def corrects_k_errors(g: CodeGraph, k):
    if 2 * k > g.n_out:
        raise ParameterError("need 2K <= M")
    return all(detects_configuration(g, z) for z in configurations(g, 2 * k))


# -- Knill-Laflamme -----------------------------------------------------------------

def shift_clock(d):
    x = np.roll(np.eye(d), 1, axis=0)
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return x, z


def local_errors(d, m, sites):
    """All generalized Pauli products X^a Z^b acting on the given sites of m systems."""
    x, z = shift_clock(d)
    local = [np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b) for a in range(d) for b in range(d)]
    ops = []
    for choice in itertools.product(range(d * d), repeat=len(sites)):
        factors = [np.eye(d)] * m
        for s, c in zip(sites, choice):
            factors[s] = local[c]
        op = factors[0]
        for f in factors[1:]:
            op = np.kron(op, f)
        ops.append(op)
    return ops


def weight_errors(d, m, k):
    """Generalized Pauli products acting on at most k of m systems, identity first, no repeats."""
    ident = np.eye(d**m)
    ops, seen = [ident], {ident.astype(complex).round(9).tobytes()}
    for kk in range(1, k + 1):
        for sites in itertools.combinations(range(m), kk):
            for op in local_errors(d, m, sites):
                key = op.astype(complex).round(9).tobytes()
                if key not in seen:
                    seen.add(key)
                    ops.append(op)
    return ops


@dataclass(frozen=True)
class KLResult:
    holds: bool
    omega: np.ndarray | None
    max_deviation: float


def kl_condition(v, error_ops, tol=ISOMETRY_TOL):
    """Check V^dagger F_j^dagger F_k V = omega_jk 1 for all pairs of error operators."""
    v = np.asarray(v)
    dim = v.shape[1]
    n = len(error_ops)
    fv = [np.asarray(f) @ v for f in error_ops]
    for f in error_ops:
        if np.asarray(f).shape != (v.shape[0], v.shape[0]):
            raise DimensionError("error operator does not act on the code output space")
    omega = np.zeros((n, n), dtype=complex)
    worst = 0.0
    for j in range(n):
        for k in range(n):
            m = fv[j].conj().T @ fv[k]
            w = np.trace(m) / dim
            omega[j, k] = w
            worst = max(worst, float(np.abs(m - w * np.eye(dim)).max()))
    ok = worst <= tol
    return KLResult(ok, omega if ok else None, worst)


def kl_detects(v, d, m, z, tol=ISOMETRY_TOL):
    """Detection of configuration z in the Knill-Laflamme form: V^dagger F V proportional to 1 on E(Z)."""
    ops = local_errors(d, m, list(z))
    dim = v.shape[1]
    for f in ops:
        m_ = v.conj().T @ f @ v
        if np.abs(m_ - np.trace(m_) / dim * np.eye(dim)).max() > tol:
            return False
    return True


# -- named graphs and file format ------------------------------------------------------

def _letters(edges):
    idx = {c: i for i, c in enumerate("ABCDEF")}
    return [(idx[a], idx[b]) for a, b in edges]


# vertex A is the input in both; the figure notes any vertex may serve
FIVE_BIT_GRAPHS = {
    "pyramid": _letters(["AB", "AC", "AD", "AE", "AF", "BC", "CD", "BE", "EF", "FD"]),
    "wheel": _letters(["AB", "BD", "DC", "CA", "AE", "BE", "CF", "DF", "EF"]),
}


def five_bit_graph(kind="pyramid", input_vertex=0):
    if kind not in FIVE_BIT_GRAPHS:
        raise ParameterError(f"unknown graph {kind!r}")
    edges = FIVE_BIT_GRAPHS[kind]
    # relabel so the chosen input vertex comes first
    order = [input_vertex] + [i for i in range(6) if i != input_vertex]
    pos = {v: i for i, v in enumerate(order)}
    return CodeGraph.from_edges(2, 1, 5, [(pos[u], pos[v]) for u, v in edges])


class GraphFormatError(ParameterError):
    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_graph(text):
    """Parse 'd N M' followed by 'u v [weight]' lines; '#' starts a comment."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphFormatError(f"expected integers, got {line!r}", lineno) from None
        if header is None:
            if len(nums) != 3:
                raise GraphFormatError("header must be 'd N M'", lineno)
            header = nums
            d, n, m = header
            if d < 2 or n < 0 or m < 1:
                raise GraphFormatError("need d >= 2, N >= 0, M >= 1", lineno)
            continue
        if len(nums) not in (2, 3):
            raise GraphFormatError("edge lines are 'u v [weight]'", lineno)
        u, v = nums[:2]
        if not (0 <= u < n + m and 0 <= v < n + m):
            raise GraphFormatError(f"vertex out of range 0..{n + m - 1}", lineno)
        if u == v:
            raise GraphFormatError("self loops are not allowed", lineno)
        w = nums[2] if len(nums) == 3 else 1
        if not 0 <= w < d:
            raise GraphFormatError(f"weight must lie in 0..{d - 1}", lineno)
        edges.append((u, v, w))
    if header is None:
        raise GraphFormatError("missing header", 1)
    d, n, m = header
    return CodeGraph.from_edges(d, n, m, edges)


def format_graph(g: CodeGraph):
    lines = [f"{g.d} {g.n_in} {g.n_out}"]
    n = g.n_in + g.n_out
    for u in range(n):
        for v in range(u + 1, n):
            if g.gamma[u, v]:
                w = int(g.gamma[u, v])
                lines.append(f"{u} {v}" if w == 1 else f"{u} {v} {w}")
    return "\n".join(lines) + "\n"
