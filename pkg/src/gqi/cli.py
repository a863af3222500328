"""
Command-line entry point.

  gqi decay --probe tmsv --ns 0.01 --nb 625 --kappa 0.01
  gqi figure fig5 --out fig5.csv
  gqi verify chernoff --kappa 0.01 --ns 0.1 --nb 0.5

Exit codes: 0 ok, 1 verification failed, 2 invalid input, 3 infeasible cutoff.
"""

import argparse
import inspect
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .errors import CutoffError, GQIError
from .figures import BUILDERS, FIGURES, SweepTable, build
from .illumination import (
    KappaWarning,
    QIScenario,
    coherent_benchmark,
    coherent_probe,
    decay_general,
    quantum_advantage,
    scenario_decay,
    tmsv_decay,
)
from .metric import F_COL, F_LOC, TangentVector, metric_general
from .symplectic import (
    Displacement,
    GaussianState,
    SingleModeSqueeze,
    Symplectic,
    apply,
    mean_photon,
    random_state,
    random_symplectic,
    tmsv,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CUTOFF = 0, 1, 2, 3


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _table_text(table, fmt):
    return table.to_json() if fmt == "json" else table.to_csv()


# --- decay ---

def _probe_from_args(args):
    if args.probe == "tmsv":
        return tmsv(args.ns)
    if args.probe == "coherent":
        return coherent_probe(args.ns)
    if not args.state:
        raise ValueError("--probe custom needs --state FILE")
    return GaussianState.from_json(Path(args.state).read_text(encoding="utf-8"))


def cmd_decay(args):
    probe = _probe_from_args(args)
    signal_ops = []
    if args.squeeze_signal:
        signal_ops.append(SingleModeSqueeze(0, args.squeeze_signal))
    if args.displace:
        signal_ops.append(Displacement((args.displace, 0.0), mode=0))
    memory = None
    if args.eta is not None or args.nl:
        memory = (1.0 if args.eta is None else args.eta, args.nl)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", KappaWarning)
        scenario = QIScenario(probe, args.kappa, args.nb, idler_memory=memory, signal_ops=tuple(signal_ops))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    decay = scenario_decay(scenario)
    prepared = scenario.prepared_probe()
    n_s = mean_photon(prepared, 0)
    ref = coherent_benchmark(n_s, args.nb, args.kappa)
    qa = quantum_advantage(scenario) if n_s > 0 else (math.nan, math.nan)
    cols = {
        "n_s": [n_s],
        "n_b": [float(args.nb)],
        "kappa": [float(args.kappa)],
        "gamma_col": [decay.gamma_col],
        "gamma_loc": [decay.gamma_loc],
        "coherent_col": [ref.gamma_col],
        "coherent_loc": [ref.gamma_loc],
    }
    if n_s > 0:
        cols["qa_col"] = [float(qa[0])]
        cols["qa_loc"] = [float(qa[1])]
    meta = {
        "command": "decay",
        "version": __version__,
        "parameters": {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out", "format")},
    }
    _emit(_table_text(SweepTable(cols, meta), args.format), args.out)
    return EXIT_OK


# --- figure ---

def _overrides(args):
    keys = ("n_s", "n_b", "kappa", "points")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def cmd_figure(args):
    over = _overrides(args)
    # not every figure takes every override
    accepted = inspect.signature(BUILDERS[args.name]).parameters
    unknown = sorted(set(over) - set(accepted))
    if unknown:
        raise ValueError(f"{args.name} does not accept {', '.join('--' + u.replace('_', '-') for u in unknown)}")
    table = build(args.name, **over)
    _emit(_table_text(table, args.format), args.out)
    return EXIT_OK


# --- verify ---

def _report(name, rel, tol, extra=""):
    ok = rel <= tol
    print(f"{name}: rel_err={rel:.3e} tol={tol:.1e}{extra} {'PASS' if ok else 'FAIL'}")
    return ok


def _verify_chernoff(args):
    from .fock import CircuitSpec, DisplaceGate, TwoModeSqueezeGate, chernoff_exponent, qi_output_pair

    probes = {
        "tmsv": (CircuitSpec(2, [TwoModeSqueezeGate((0, 1), math.asinh(math.sqrt(args.ns)))]), tmsv_decay),
        "coherent": (CircuitSpec(2, [DisplaceGate(0, math.sqrt(args.ns))]), coherent_benchmark),
    }
    ok = True
    for name, (circ, closed) in probes.items():
        rho0, rho1 = qi_output_pair(circ, args.kappa, args.nb, [args.probe_cutoff] * 2, args.cutoff, args.cutoff)
        res = chernoff_exponent(rho0, rho1)
        ref = closed(args.ns, args.nb, args.kappa).gamma_col
        rel = abs(res.exponent - ref) / ref
        extra = f" exponent={res.exponent:.6e} closed_form={ref:.6e} s={res.s:.4f} deficit={rho1.deficit:.1e}"
        ok &= _report(f"chernoff {name}", rel, args.tol, extra)
    return ok


def _verify_snr(args):
    from .fock import snr_maximize

    ok = True
    for name, probe in (("tmsv", tmsv(args.ns)), ("coherent", coherent_probe(args.ns))):
        _, rate = snr_maximize(probe, args.nb)
        target = decay_general(probe, args.nb).gamma_loc
        excess = max(0.0, rate / target - 1.0)
        ok &= _report(f"snr {name} bound", excess, 1e-6, f" snr={rate:.6e} gamma_loc={target:.6e}")
        ok &= _report(f"snr {name} attainment", max(0.0, 1.0 - rate / target), 0.05)
    return ok


def _verify_invariance(args):
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.draws):
        state = random_state(2, rng, displacement=1.0)
        t = TangentVector(rng.normal(size=4), (lambda m: m + m.T)(rng.normal(size=(4, 4))))
        s = random_symplectic(2, rng)
        moved = apply(state, Symplectic(s))
        t_moved = t.transformed(s)
        for f in (F_COL, F_LOC):
            a = metric_general(state, f, t)
            b = metric_general(moved, f, t_moved)
            worst = max(worst, abs(a - b) / abs(a))
    return _report(f"metric-invariance draws={args.draws} seed={args.seed}", worst, 1e-9)


def _verify_optimal_probe(args):
    from .probe import probe_search

    ok = True
    for f in (F_COL, F_LOC):
        res = probe_search(args.ns, args.nb, f)
        ref = tmsv_decay(args.ns, args.nb)
        target = ref.gamma_col if f is F_COL else ref.gamma_loc
        dev = max(res.params.zeta_s, res.params.r)
        ok &= _report(f"optimal-probe {f.label} distance_from_tmsv", dev, 1e-4)
        ok &= _report(f"optimal-probe {f.label} objective", abs(res.value - target) / target, 1e-8)
    return ok


SUITES = {
    "chernoff": _verify_chernoff,
    "snr": _verify_snr,
    "metric-invariance": _verify_invariance,
    "optimal-probe": _verify_optimal_probe,
}


def cmd_verify(args):
    ok = SUITES[args.suite](args)
    return EXIT_OK if ok else EXIT_FAIL


# --- parser ---

def build_parser():
    ap = argparse.ArgumentParser(prog="gqi", description="Gaussian quantum illumination decay constants")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decay", help="decay constants and quantum advantage of one scenario")
    d.add_argument("--probe", choices=["tmsv", "coherent", "custom"], default="tmsv")
    d.add_argument("--state", help="JSON file with mean/cov (for --probe custom)")
    d.add_argument("--ns", type=float, default=0.01, help="signal photons of the source")
    d.add_argument("--nb", type=float, default=625.0)
    d.add_argument("--kappa", type=float, default=0.01)
    d.add_argument("--eta", type=float, default=None, help="idler memory transmissivity")
    d.add_argument("--nl", type=float, default=0.0, help="idler memory thermal photons")
    d.add_argument("--displace", type=float, default=0.0, help="signal x displacement")
    d.add_argument("--squeeze-signal", type=float, default=0.0)
    d.add_argument("--format", choices=["csv", "json"], default="csv")
    d.add_argument("--out", default=None)
    d.set_defaults(func=cmd_decay)

    f = sub.add_parser("figure", help="tabulate figure data")
    f.add_argument("name", choices=FIGURES)
    f.add_argument("--ns", dest="n_s", type=float, default=None)
    f.add_argument("--nb", dest="n_b", type=float, default=None)
    f.add_argument("--kappa", type=float, default=None)
    f.add_argument("--points", type=int, default=None)
    f.add_argument("--format", choices=["csv", "json"], default="csv")
    f.add_argument("--out", default=None)
    f.set_defaults(func=cmd_figure)

    v = sub.add_parser("verify", help="run an oracle check")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--kappa", type=float, default=0.01)
    v.add_argument("--ns", type=float, default=0.1)
    v.add_argument("--nb", type=float, default=0.5)
    v.add_argument("--cutoff", type=int, default=25, help="returned-mode and ancilla cutoff")
    v.add_argument("--probe-cutoff", type=int, default=12)
    v.add_argument("--tol", type=float, default=0.05)
    v.add_argument("--seed", type=int, default=7)
    v.add_argument("--draws", type=int, default=100)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CutoffError as exc:
        print(f"error: {exc} (deficit {exc.deficit:.3e})", file=sys.stderr)
        return EXIT_CUTOFF
    except (GQIError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
