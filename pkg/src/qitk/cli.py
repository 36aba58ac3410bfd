"""Command-line interface.

Exit codes: 0 success, 1 invalid input or parse error, 2 numerical failure
or an undecided verdict.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__, capacities, channels, cloning, codes, figures, gaussian, measures, protocols, separability
from .errors import (
    ConvergenceError,
    DimensionError,
    NotIsometricError,
    NotPositiveError,
    ParameterError,
    SizeGuardError,
    Unavailable,
    Unsupported,
)
from .io import parse_covariance, read_state
from .states import Isotropic, Werner, family_coords, twirl

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating, int, np.integer)):
        return "%.12g" % x
    return str(x)


def _emit(args, text):
    if args.out and args.command != "figure":
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- subcommands ------------------------------------------------------------------

def cmd_criteria(args):
    if args.covariance:
        with open(args.covariance) as fh:
            alpha = parse_covariance(fh.read())
        split = tuple(args.split) if args.split else (alpha.shape[0] // 4, alpha.shape[0] // 4)
        out = []
        ppt = gaussian.gaussian_ppt(alpha, split, tol=args.tol)
        out.append(f"gaussian-ppt: {ppt.verdict.value} (margin {_fmt(ppt.margin)})")
        gd = gaussian.giedke_decide(alpha, split, tol=args.tol)
        out.append(f"giedke: {gd.verdict.value} (iterations {gd.iterations})")
        _emit(args, "\n".join(out))
        return EXIT_NUMERIC if gd.verdict is gaussian.GiedkeVerdict.UNDECIDED else EXIT_OK
    if not args.state:
        raise UsageError("criteria needs a state file or --covariance")
    rho = read_state(args.state, args.tol)
    dims = rho.dims if len(rho.dims) == 2 else None
    m = rho.matrix
    tests = ["ppt", "reduction", "chsh", "fef", "family"] if args.test == "all" else [args.test]
    lines = []
    for t in tests:
        if t == "ppt":
            v = separability.ppt_check(m, dims, args.tol)
            lines.append(f"ppt: {v.verdict.value} (min eigenvalue {_fmt(v.margin)})")
        elif t == "reduction":
            v = separability.reduction_check(m, dims, args.tol)
            lines.append(f"reduction: {v.verdict.value} (margin {_fmt(v.margin)})")
        elif t == "chsh":
            if m.shape != (4, 4):
                raise DimensionError("chsh is evaluated for two qubits")
            lines.append(f"chsh: {_fmt(separability.chsh_value(m, *separability.chsh_optimal_settings()))}")
        elif t == "fef":
            lines.append(f"fef: {_fmt(separability.fully_entangled_fraction(m, seed=args.seed))}")
        elif t == "family":
            d = rho.dims[0]
            f, tt = family_coords(m, d)
            if np.allclose(twirl("UU", m, d), m, atol=1e-9):
                v = separability.family_separable(Werner(f, d))
            elif np.allclose(twirl("UUbar", m, d), m, atol=1e-9):
                v = separability.family_separable(Isotropic(tt, d))
            else:
                raise Unsupported("state is neither Werner nor isotropic")
            lines.append(f"family: {v.verdict.value} (margin {_fmt(v.margin)})")
    _emit(args, "\n".join(lines))
    return EXIT_OK


def _family_param(args):
    d = args.d
    if args.family == "werner":
        return Werner(args.param, d)
    if args.family == "isotropic":
        return Isotropic(args.param, d)
    if args.family == "oo":
        if args.t is None:
            raise UsageError("oo needs --param f and --t t")
        from .states import OO
        return OO(args.param, args.t, d)
    raise UsageError(f"unknown family {args.family!r}")


def cmd_measure(args):
    if args.family:
        p = _family_param(args)
        if args.kind == "eof":
            r = measures.eof_closed_form(p)
        elif args.kind == "er":
            r = measures.er_closed_form(p)
        else:
            from .states import family_state
            r = measures.MeasureResult(measures.log_negativity(family_state(p), (p.d, p.d)), "direct")
        _emit(args, _fmt(r.value))
        return EXIT_OK
    if not args.state:
        raise UsageError("measure needs a state file or --family")
    rho = read_state(args.state, args.tol)
    m, dims = rho.matrix, rho.dims
    if args.kind == "negativity":
        value = measures.log_negativity(m, dims)
    elif args.kind == "eof":
        if m.shape != (4, 4):
            raise Unsupported("entanglement of formation of a general state is computed for two qubits only")
        value = measures.eof_wootters(m)
    else:
        d = dims[0]
        f, t = family_coords(m, d)
        if np.allclose(twirl("UU", m, d), m, atol=1e-9):
            value = measures.er_werner(f) if d == 2 else measures.er_closed_form(Werner(f, d)).value
        elif np.allclose(twirl("UUbar", m, d), m, atol=1e-9):
            value = measures.er_isotropic(t, d)
        else:
            raise Unsupported("relative entropy of entanglement is available for Werner and isotropic states")
    _emit(args, _fmt(value))
    return EXIT_OK


def cmd_capacity(args):
    ch = args.channel
    if ch in ("erasure", "depolarizing"):
        value = capacities.closed_form_capacity(ch, args.d, args.theta, args.quantity)
    elif ch == "gaussian":
        value = gaussian.gaussian_capacity(args.quantity, args.k, args.nc, args.N)
        if args.quantity in gaussian.CONJECTURED:
            print("note: value assumes coherent-state encodings are optimal", file=sys.stderr)
    elif ch == "bsc":
        est = capacities.shannon_capacity(channels.bsc(args.p), tol=args.tol)
        value = est.value
    else:
        raise UsageError(f"unknown channel {ch!r}")
    _emit(args, _fmt(value))
    return EXIT_OK


def cmd_clone(args):
    what = args.what
    if what == "fidelities":
        r = cloning.cloner_fidelities(args.N, args.M, args.d)
        text = f"f1: {_fmt(r.one)}\nfall: {_fmt(r.all)}"
    elif what == "purifier":
        text = _fmt(cloning.purifier_fidelity(args.kind, args.N, args.M, args.theta))
    elif what == "phi":
        text = _fmt(cloning.phi_asymptotic(args.mu, args.theta))
    elif what == "unot":
        text = _fmt(cloning.unot_fidelity(args.N))
    else:
        b = cloning.estimation_bound(args.N, args.d)
        text = f"bound: {_fmt(b.bound)}\nshifted: {_fmt(b.shifted_by_inverse_d)}"
    _emit(args, text)
    return EXIT_OK


_NAMED_GRAPHS = {"five-bit-pentagon": "pyramid", "five-bit-pyramid": "pyramid", "five-bit-wheel": "wheel"}


def cmd_code(args):
    if args.graph in _NAMED_GRAPHS:
        g = codes.five_bit_graph(_NAMED_GRAPHS[args.graph])
    else:
        with open(args.graph) as fh:
            g = codes.parse_graph(fh.read())
    if args.detect is not None:
        z = [int(s) for s in args.detect.split(",") if s.strip()] if args.detect else []
        _emit(args, _fmt(codes.detects_configuration(g, z)))
    elif args.correct is not None:
        _emit(args, _fmt(codes.corrects_k_errors(g, args.correct)))
    else:
        v = codes.build_isometry(g, tol=args.tol)
        gram = v.conj().T @ v
        _emit(args, f"isometry: {v.shape[0]}x{v.shape[1]}\ngram deviation: {_fmt(np.abs(gram - np.eye(len(gram))).max())}")
    return EXIT_OK


def cmd_protocol(args):
    what = args.what
    rng = np.random.default_rng(args.seed)
    if what == "teleport":
        from .core import random_density
        s = protocols.TeleportationScheme.standard_qubit() if args.d == 2 else protocols.TeleportationScheme.weyl(args.d)
        worst = max(protocols.run_teleportation(s, random_density(args.d, rng)).deviation for _ in range(args.samples))
        _emit(args, f"max deviation: {_fmt(worst)}")
    elif what == "dense":
        s = protocols.TeleportationScheme.standard_qubit() if args.d == 2 else protocols.TeleportationScheme.weyl(args.d)
        p = protocols.run_dense_coding(s)
        _emit(args, "\n".join(" ".join(_fmt(x) for x in row) for row in p))
    elif what == "bbpssw":
        rho = read_state(args.state, args.tol).matrix if args.state else _iso_from_f(args.f)
        r = protocols.bbpssw_step(rho)
        _emit(args, f"F: {_fmt(r.fidelity_in)}\nF': {_fmt(r.fidelity_out)}\np: {_fmt(r.success_probability)}")
    elif what == "filter":
        if not args.state:
            raise UsageError("filter needs a state file")
        rho = read_state(args.state, args.tol).matrix
        x = protocols.ppt_filter_operator(rho)
        r = protocols.filter_step(rho, x)
        _emit(args, f"fef before: {_fmt(protocols.fef(rho))}\nfef after: {_fmt(protocols.fef(r.output))}\n"
                    f"p: {_fmt(r.success_probability)}")
    else:
        if not args.state:
            raise UsageError("hashing needs a state file")
        _emit(args, _fmt(protocols.hashing_threshold(read_state(args.state, args.tol).matrix)))
    return EXIT_OK


def _iso_from_f(f):
    from .states import isotropic_state
    if f is None:
        raise UsageError("give --f or a state file")
    return isotropic_state(2 * f, 2)


def cmd_figure(args):
    cols, data, params = figures.compute(args.name, args.points)
    csv = figures.to_csv(args.name, cols, data, params, __version__, args.points)
    plot = figures.to_plot(args.name, cols)
    outdir = args.out or "."
    try:
        os.makedirs(outdir, exist_ok=True)
        with open(os.path.join(outdir, f"{args.name}.csv"), "w") as fh:
            fh.write(csv)
        with open(os.path.join(outdir, f"{args.name}.plot"), "w") as fh:
            fh.write(plot)
    except OSError as exc:
        print(f"error: cannot write figure files: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(os.path.join(outdir, f"{args.name}.csv"))
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--out", default=None, help="output file (directory for figure)")

    p = _Parser(prog="qitk", description="Quantum information numerics toolkit.", parents=[common])
    p.add_argument("--version", action="version", version=f"qitk {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("criteria", parents=[common], help="separability criteria on a state file")
    c.add_argument("state", nargs="?")
    c.add_argument("--test", default="all", choices=["all", "ppt", "reduction", "chsh", "fef", "family"])
    c.add_argument("--covariance", help="covariance matrix file for the Gaussian tests")
    c.add_argument("--split", type=int, nargs=2, metavar=("NA", "NB"))
    c.set_defaults(func=cmd_criteria)

    m = sub.add_parser("measure", parents=[common], help="entanglement measures")
    m.add_argument("state", nargs="?")
    m.add_argument("--kind", default="eof", choices=["eof", "er", "negativity"])
    m.add_argument("--family", choices=["werner", "isotropic", "oo"])
    m.add_argument("--param", type=float, help="f for Werner/OO, t for isotropic")
    m.add_argument("--t", type=float, help="t for OO states")
    m.add_argument("--d", type=int, default=2)
    m.set_defaults(func=cmd_measure)

    k = sub.add_parser("capacity", parents=[common], help="channel capacities")
    k.add_argument("--channel", required=True, choices=["erasure", "depolarizing", "gaussian", "bsc"])
    k.add_argument("--quantity", default="Cc1")
    k.add_argument("--d", type=int, default=2)
    k.add_argument("--theta", type=float, default=0.0)
    k.add_argument("--k", type=float, default=1.0)
    k.add_argument("--nc", type=float, default=0.0)
    k.add_argument("--N", type=float, default=1.0)
    k.add_argument("--p", type=float, default=0.1)
    k.set_defaults(func=cmd_capacity)

    cl = sub.add_parser("clone", parents=[common], help="cloning and purification fidelities")
    cl.add_argument("what", choices=["fidelities", "purifier", "phi", "unot", "estimation"])
    cl.add_argument("--N", type=int, default=1)
    cl.add_argument("--M", type=int, default=2)
    cl.add_argument("--d", type=int, default=2)
    cl.add_argument("--kind", default="all", choices=["one", "all"])
    cl.add_argument("--theta", type=float, default=0.5)
    cl.add_argument("--mu", type=float, default=1.0)
    cl.set_defaults(func=cmd_clone)

    g = sub.add_parser("code", parents=[common], help="graph codes")
    g.add_argument("--graph", required=True, help="graph file or five-bit-pentagon / five-bit-wheel")
    g.add_argument("--detect", help="comma separated output vertices")
    g.add_argument("--correct", type=int)
    g.set_defaults(func=cmd_code)

    pr = sub.add_parser("protocol", parents=[common], help="protocol simulations")
    pr.add_argument("what", choices=["teleport", "dense", "bbpssw", "filter", "hashing"])
    pr.add_argument("state", nargs="?")
    pr.add_argument("--d", type=int, default=2)
    pr.add_argument("--f", type=float)
    pr.add_argument("--samples", type=int, default=100)
    pr.set_defaults(func=cmd_protocol)

    f = sub.add_parser("figure", parents=[common], help="write a figure sweep as CSV plus plot script")
    f.add_argument("name", choices=sorted(figures.FIGURES))
    f.add_argument("--points", type=int, default=figures.DEFAULT_POINTS)
    f.set_defaults(func=cmd_figure)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotPositiveError as exc:
        extra = f" (eigenvalue {exc.eigenvalue:.3g})" if exc.eigenvalue is not None else ""
        print(f"error: {exc}{extra}", file=sys.stderr)
        return EXIT_INPUT
    except (ParameterError, DimensionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, Unavailable, Unsupported, SizeGuardError, NotIsometricError,
            FloatingPointError, np.linalg.LinAlgError, OSError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
