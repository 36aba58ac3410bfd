"""Parameter sweeps behind the command-line figures.

Each registered figure returns (columns, rows, params); the CLI writes
them as CSV next to a small gnuplot script.
"""

from __future__ import annotations

import numpy as np

from . import capacities, cloning, gaussian, measures
from .errors import ParameterError

DEFAULT_POINTS = 101


def _grid(a, b, points):
    if points < 2:
        raise ParameterError("need at least 2 grid points")
    return np.linspace(a, b, points)


def em_bell_diag(points):
    lam = _grid(0.25, 1.0, points)
    rows = [(x, measures.eof_bell_diagonal([x]), measures.er_bell_diagonal([x])) for x in lam]
    return ["lambda", "EOF", "ER"], rows, {}


def eof_werner(points):
    f = _grid(-1.0, 1.0, points)
    return ["f", "EOF"], [(x, measures.eof_werner(x)) for x in f], {"d": 2}


def er_werner(points):
    f = _grid(-1.0, 1.0, points)
    return ["f", "ER"], [(x, measures.er_werner(x)) for x in f], {"d": 2}


def er_iso(points):
    # isotropic ranges differ with d, so the sweep runs over t/d in [0,1]
    x = _grid(0.0, 1.0, points)
    rows = [(xi, *(measures.er_isotropic(xi * d, d) for d in (2, 3, 4))) for xi in x]
    return ["t_over_d", "ER_d2", "ER_d3", "ER_d4"], rows, {}


def erasure(points):
    th = _grid(0.0, 1.0, points)
    rows = [(t, *(capacities.erasure_capacity(2, t, q) for q in ("Cc", "Ce", "Cq"))) for t in th]
    return ["theta", "Cc", "Ce", "Cq"], rows, {"d": 2}


def cc_depol(points):
    th = _grid(0.0, 1.0, points)
    rows = [(t, capacities.depolarizing_capacity(2, t, "Ce"), capacities.depolarizing_capacity(2, t, "Cc1"))
            for t in th]
    return ["theta", "Ce", "Cc1"], rows, {"d": 2}


def depol_gain(points):
    # both capacities vanish at theta = 1; the sweep stops short of it
    th = _grid(0.0, 0.99, points)
    rows = [(t, capacities.depolarizing_capacity(2, t, "Ce") / capacities.depolarizing_capacity(2, t, "Cc1"))
            for t in th]
    return ["theta", "gain"], rows, {"d": 2, "theta_max": 0.99}


def cc_gauss(points):
    ks = _grid(0.0, 2.0, points)
    rows = []
    for k in ks:
        ch = gaussian.GaussianChannel(k, 0.0)
        rows.append((k, ch.ce(10.0), ch.cc1(10.0)))
    return ["k", "Ce", "Cc1"], rows, {"N": 10, "Nc": 0}


def gauss_gain(points):
    ks = _grid(0.02, 2.0, points)
    rows = []
    for k in ks:
        ch = gaussian.GaussianChannel(k, 0.0)
        rows.append((k, *(ch.ce(n) / ch.cc1(n) for n in (0.1, 1.0, 10.0))))
    return ["k", "G_N0.1", "G_N1", "G_N10"], rows, {"Nc": 0}


def qcap_depol(points):
    th = _grid(0.0, 1.0, points)
    if points % 3 != 1:
        th = np.union1d(th, [2 / 3])
    rows = [(t, capacities.depolarizing_capacity(2, t, "Ctheta"), capacities.depolarizing_cs1(t),
             capacities.hashing_curve_printed(t)) for t in th]
    return ["theta", "Ctheta", "Cs1", "hashing"], rows, {"d": 2}


def qcap_gauss(points, nc=0.1):
    ks = _grid(0.0, 2.0, points)
    rows = []
    for k in ks:
        ch = gaussian.GaussianChannel(k, nc)
        rows.append((k, ch.ctheta(), max(0.0, ch.cg())))
    return ["k", "Ctheta", "Cs"], rows, {"Nc": nc}


def qcap_gauss_k1(points):
    ns = _grid(0.01, 2.0, points)
    rows = []
    for n in ns:
        ch = gaussian.GaussianChannel(1.0, n)
        rows.append((n, ch.ctheta(), max(0.0, ch.cg())))
    return ["Nc", "Ctheta", "Cs"], rows, {"k": 1}


def purfid_theta(points, N=100, M=10):
    th = _grid(0.0, 1.0, points)
    rows = [(t, cloning.purifier_fidelity("one", N, M, t), cloning.purifier_fidelity("all", N, M, t)) for t in th]
    return ["theta", "F_one", "F_all"], rows, {"N": N, "M": M}


def purfid_n(points, theta=0.5, M=10):
    rows = [(n, cloning.purifier_fidelity("one", n, M, theta), cloning.purifier_fidelity("all", n, M, theta))
            for n in range(1, points + 1)]
    return ["N", "F_one", "F_all"], rows, {"theta": theta, "M": M}


def purfid_m(points, theta=0.5, N=10):
    rows = [(m, cloning.purifier_fidelity("one", N, m, theta), cloning.purifier_fidelity("all", N, m, theta))
            for m in range(1, points + 1)]
    return ["M", "F_one", "F_all"], rows, {"theta": theta, "N": N}


def phi_mu(points):
    mus = _grid(0.02, 3.0, points)
    thetas = (0.25, 0.5, 0.75, 1.0)
    rows = [(mu, *(cloning.phi_asymptotic(mu, t) for t in thetas)) for mu in mus]
    return ["mu"] + [f"Phi_theta{t:g}" for t in thetas], rows, {}


FIGURES = {
    "em-bell-diag": em_bell_diag,
    "eof-werner": eof_werner,
    "er-werner": er_werner,
    "er-iso": er_iso,
    "erasure": erasure,
    "cc-depol": cc_depol,
    "depol-gain": depol_gain,
    "cc-gauss": cc_gauss,
    "gauss-gain": gauss_gain,
    "qcap-depol": qcap_depol,
    "qcap-gauss": qcap_gauss,
    "qcap-gauss-k1": qcap_gauss_k1,
    "purfid-theta": purfid_theta,
    "purfid-N": purfid_n,
    "purfid-M": purfid_m,
    "phi-mu": phi_mu,
}


def compute(name, points=DEFAULT_POINTS):
    if name not in FIGURES:
        raise ParameterError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    cols, rows, params = FIGURES[name](points)
    data = np.array(rows, dtype=float)
    if not np.all(np.isfinite(data)):
        raise FloatingPointError(f"figure {name} produced non-finite values")
    return cols, data, params


def to_csv(name, cols, data, params, version, points):
    lines = [
        f"# command: figure {name} --points {points}",
        "# parameters: " + (", ".join(f"{k}={v}" for k, v in params.items()) or "none"),
        f"# version: qitk {version}",
        ",".join(cols),
    ]
    lines += [",".join("%.12g" % v for v in row) for row in data]
    return "\n".join(lines) + "\n"


def to_plot(name, cols):
    lines = [
        "set datafile separator ','",
        f"set xlabel '{cols[0]}'",
        f"set title '{name}'",
        "set key left bottom",
    ]
    parts = [f"'{name}.csv' using 1:{i + 1} with lines title '{c}'" for i, c in enumerate(cols) if i > 0]
    lines.append("plot " + ", \\\n     ".join(parts))
    return "\n".join(lines) + "\n"
