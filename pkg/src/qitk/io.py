"""Plain-text state and covariance files.

State file: either a keyword line (``bell0``..``bell3``, ``werner f [d]``,
``isotropic t d``, ``maxent d``) or a header ``dims d1 d2 ...`` followed by
the matrix as real/imaginary pairs in row-major order, whitespace separated.
Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import numpy as np

from .core import DensityMatrix, proj
from .errors import ParameterError
from .states import bell_state, isotropic_state, omega, werner_state


class StateFileError(ParameterError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column


def _tokens(text):
    """(line, column, token) triples, comments dropped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            out.append((lineno, col + 1, tok))
            col += len(tok)
    return out


def _number(tok, kind=float):
    line, col, s = tok
    try:
        return kind(s)
    except ValueError:
        raise StateFileError(f"expected a number, got {s!r}", line, col) from None


def parse_state(text, tol=1e-9):
    toks = _tokens(text)
    if not toks:
        raise StateFileError("empty state file")
    line, col, head = toks[0]
    key = head.lower()
    args = [t for t in toks[1:]]
    if key in ("bell0", "bell1", "bell2", "bell3"):
        if args:
            raise StateFileError("unexpected tokens after keyword", *args[0][:2])
        return DensityMatrix(proj(bell_state(int(key[-1]))), (2, 2), tol)
    if key == "maxent":
        if len(args) != 1:
            raise StateFileError("usage: maxent d", line, col)
        d = _number(args[0], int)
        return DensityMatrix(proj(omega(d)), (d, d), tol)
    if key == "werner":
        if len(args) not in (1, 2):
            raise StateFileError("usage: werner f [d]", line, col)
        f = _number(args[0])
        d = _number(args[1], int) if len(args) == 2 else 2
        return DensityMatrix(werner_state(f, d), (d, d), tol)
    if key == "isotropic":
        if len(args) != 2:
            raise StateFileError("usage: isotropic t d", line, col)
        t, d = _number(args[0]), _number(args[1], int)
        return DensityMatrix(isotropic_state(t, d), (d, d), tol)
    if key != "dims":
        raise StateFileError(f"unknown keyword {head!r}", line, col)
    dims = []
    i = 0
    while i < len(args) and args[i][0] == line:
        dims.append(_number(args[i], int))
        i += 1
    if not dims or min(dims) < 1:
        raise StateFileError("dims needs positive integers", line, col)
    n = int(np.prod(dims))
    values = args[i:]
    if len(values) != 2 * n * n:
        last = values[-1] if values else (line, col, "")
        raise StateFileError(f"expected {2 * n * n} numbers for a {n}x{n} matrix, got {len(values)}",
                             last[0], last[1])
    nums = np.array([_number(t) for t in values])
    mat = (nums[0::2] + 1j * nums[1::2]).reshape(n, n)
    return DensityMatrix(mat, tuple(dims), tol)


def read_state(path, tol=1e-9):
    with open(path) as fh:
        return parse_state(fh.read(), tol)


def format_state(rho, dims):
    rho = np.asarray(rho)
    lines = ["dims " + " ".join(str(d) for d in dims)]
    for row in rho:
        lines.append(" ".join(f"{z.real:.17g} {z.imag:.17g}" for z in row))
    return "\n".join(lines) + "\n"


def parse_covariance(text):
    """Whitespace-separated real square matrix, one row per line."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        row = []
        for tok in line.split():
            row.append(_number((lineno, line.index(tok) + 1, tok)))
        rows.append(row)
    if not rows or any(len(r) != len(rows) for r in rows):
        raise StateFileError("covariance must be a square matrix")
    return np.array(rows)
