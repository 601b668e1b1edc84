"""Command-line frontend: ``kreinspec analyze|fourlevel|sweep|selftest``.

Exit codes: 0 success, 1 selftest failure, 2 input error, 3 numerical failure.
"""
import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__, acceptance, antilinear, biortho, fourlevel, kreindeg, metric, numkernel
from .errors import KreinSpecError, NotHermitian, NearSingular, NumericalFailure, PreconditionFailed
from .matrixio import MatrixFileError, format_complex, parse_complex, read_matrix

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

RTOL_ENV = "KREINSPEC_RTOL"


class InputError(Exception):
    pass


class StageFailure(Exception):
    """A numerical stage failed; carries the partial report for printing."""

    def __init__(self, stage, exc, report=None):
        self.stage = stage
        self.exc = exc
        self.report = report
        super().__init__(f"stage {stage}: {type(exc).__name__}: {exc}")


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise InputError(f"not a number: {text!r}") from None
    if not math.isfinite(v) or v <= 0:
        raise InputError(f"tolerance must be positive and finite, got {text!r}")
    return v


def resolve_rtol(flag):
    """``--rtol`` wins over ``KREINSPEC_RTOL``, which wins over the default."""
    if flag is not None:
        return _positive_float(flag), "flag"
    env = os.environ.get(RTOL_ENV)
    if env:
        return _positive_float(env), "env"
    return numkernel.DEFAULT_RTOL, "default"


def _complex_arg(text):
    try:
        return parse_complex(text)
    except MatrixFileError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _finite_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _range_arg(text):
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    lo, hi = (_finite_float(p) for p in parts)
    return lo, hi


# -- report helpers ---------------------------------------------------------

def _c(z):
    """Complex as a JSON-friendly ``[re, im]`` pair."""
    z = complex(z)
    return [z.real, z.imag]


def _spectrum(system):
    return [{"E": _c(E), "multiplicity": m} for E, m in system.multiplicities()]


def _relation(eta, theta, tol):
    rel = antilinear.eta_pt_relation(eta, theta, tol)
    return {
        "value": rel.value.value,
        "commute_residual": rel.commute_residual,
        "anticommute_residual": rel.anticommute_residual,
    }


def _signature(eta):
    try:
        rep = metric.metric_signature(eta)
    except (NotHermitian, NearSingular) as exc:
        return {"error": f"{type(exc).__name__}: {exc}"}
    return {"signature": list(rep.signature), "definiteness": rep.definiteness.value}


def _doublet_rows(doublets):
    return [
        {
            "E": _c(d.E),
            "eta_norm_psi": d.eta_norm_psi,
            "eta_norm_pt_psi": d.eta_norm_pt_psi,
            "orthogonality": d.orthogonality,
            "gram_det": d.gram_det,
            "eig_residual": d.eig_residual,
        }
        for d in doublets
    ]


def _pt_flags(real, doublets, krein, theta, tol):
    """Spectrum reality and eigenstate PT-invariance, reported separately."""
    dev = max(kreindeg.pt_deviation(theta, d.psi) for d in doublets)
    chi_dev = max(kreindeg.pt_deviation(theta, c) for c in krein.chi_states)
    return {
        "spectrum_real": bool(real),
        "doublet_states_pt_invariant": bool(dev <= tol),
        "doublet_state_pt_deviation": dev,
        "chi_states_pt_invariant": bool(chi_dev <= tol),
        "chi_state_pt_deviation": chi_dev,
    }


def _stage(name, fn, report):
    try:
        return fn()
    except NumericalFailure as exc:
        raise StageFailure(name, exc, report) from exc


# -- analyze ----------------------------------------------------------------

def analyze(H, eta=None, rtol=numkernel.DEFAULT_RTOL, source=None, metric_source=None, rtol_source="default"):
    """Run the full pipeline on ``H`` and return the report dict."""
    n = H.shape[0]
    if eta is not None and eta.shape != H.shape:
        raise InputError(f"metric is {eta.shape[0]}x{eta.shape[1]}, matrix is {n}x{n}")
    report = {
        "kreinspec_version": __version__,
        "input": {"matrix": source, "metric": metric_source, "dim": n},
        "tolerances": {
            "rtol": rtol,
            "rtol_source": rtol_source,
            "group_tol": biortho.GROUP_TOL,
            "real_tol": biortho.REAL_TOL,
        },
    }
    system = _stage("biortho", lambda: biortho.build_biortho(H, resid_tol=rtol), report)
    real = biortho.is_real_spectrum(system)
    report["spectrum"] = _spectrum(system)
    report["biortho_residuals"] = dict(system.residuals)
    report["pt_phase"] = (kreindeg.PtPhase.UNBROKEN if real else kreindeg.PtPhase.BROKEN).value

    theta = antilinear.build_pt(n) if n % 2 == 0 else None
    if theta is not None:
        r = antilinear.commutator_residual(theta, H) / (numkernel.frob(H) or 1.0)
        report["pt"] = {"commutes_with_H": bool(r <= rtol), "residual": r}
    else:
        report["pt"] = {"skipped": "odd dimension"}

    if real:
        eta_plus = _stage("spectral_metric", lambda: biortho.spectral_metric(system), report)
        ph = metric.pseudo_hermiticity_residual(H, eta_plus)
        sm = {
            "pseudo_hermitian": bool(ph <= rtol),
            "pseudo_hermiticity_residual": ph,
            "distance_from_identity": numkernel.frob(eta_plus - np.eye(n)) / math.sqrt(n),
            **_signature(eta_plus),
        }
        if theta is not None:
            sm["eta_pt_relation"] = _relation(eta_plus, theta, rtol)
        report["spectral_metric"] = sm
    else:
        report["spectral_metric"] = {"skipped": "complex spectrum"}

    if eta is None:
        report["supplied_metric"] = None
        report["doublets"] = {"skipped": "no metric supplied"}
        return report

    ph = metric.pseudo_hermiticity_residual(H, eta)
    sup = {
        "pseudo_hermitian": bool(ph <= rtol),
        "pseudo_hermiticity_residual": ph,
        **_signature(eta),
    }
    if theta is not None:
        sup["eta_pt_relation"] = _relation(eta, theta, rtol)
    report["supplied_metric"] = sup

    if theta is None:
        report["doublets"] = {"skipped": "odd dimension"}
        return report
    if sup["eta_pt_relation"]["value"] != antilinear.Relation.ANTICOMMUTE.value:
        report["doublets"] = {"skipped": "supplied metric does not anticommute with PT"}
        return report
    try:
        doublets = _stage(
            "find_pt_doublets", lambda: kreindeg.find_pt_doublets(H, eta, theta, tol=rtol), report
        )
    except PreconditionFailed as exc:
        report["doublets"] = {"skipped": str(exc)}
        return report
    report["doublets"] = _doublet_rows(doublets)
    krein = _stage("build_krein", lambda: kreindeg.build_krein(doublets, theta, H, eta, tol=rtol), report)
    report["krein_residuals"] = dict(krein.residuals)
    report["pt_flags"] = _pt_flags(real, doublets, krein, theta, rtol)
    return report


# -- fourlevel --------------------------------------------------------------

def _projection_residual(v, basis):
    """Distance of unit ``v`` from the column span of ``basis``."""
    q, _ = np.linalg.qr(basis)
    u = v / np.linalg.norm(v)
    return float(np.linalg.norm(u - q @ (q.conj().T @ u)))


def fourlevel_report(p, rtol=numkernel.DEFAULT_RTOL, rtol_source="default"):
    """Analytic and numeric treatment of the four-level model.

    Returns ``(report, failure)`` where ``failure`` is None or the exception
    that should turn into exit code 3 after the report is printed.
    """
    H = fourlevel.build_hamiltonian(p)
    om = fourlevel.omega(p)
    report = {
        "kreinspec_version": __version__,
        "input": {"a0": p.a0, "A": _c(p.A), "B": _c(p.B)},
        "tolerances": {"rtol": rtol, "rtol_source": rtol_source, "phase_eps": p.eps},
        "discriminant": p.discriminant,
        "omega": {"kind": om.kind.value, "value": om.value},
        "analytic_eigenvalues": [_c(e) for e in om.eigenvalues()],
        "pt_phase": fourlevel.phase_of(p).value,
    }
    eta = fourlevel.indefinite_metric()
    theta = fourlevel.pt_operator()
    report["indefinite_metric"] = {
        "pseudo_hermiticity_residual": metric.pseudo_hermiticity_residual(H, eta),
        "eta_pt_relation": _relation(eta, theta, rtol),
    }
    report["pt_commutator_residual"] = antilinear.commutator_residual(theta, H) / (numkernel.frob(H) or 1.0)

    try:
        system = biortho.build_biortho(H, resid_tol=rtol)
    except NumericalFailure as exc:
        report["numeric"] = {"error": f"{type(exc).__name__}: {exc}"}
        return report, exc
    analytic = sorted(
        [e for e in om.eigenvalues() for _ in range(2)], key=lambda z: (complex(z).real, complex(z).imag)
    )
    numeric = sorted(system.energies, key=lambda z: (z.real, z.imag))
    report["numeric"] = {
        "spectrum": _spectrum(system),
        "biortho_residuals": dict(system.residuals),
        "eigenvalue_error": float(max(abs(a - b) for a, b in zip(analytic, numeric))),
    }

    try:
        ana = fourlevel.analytic_eigensystem(p)
    except KreinSpecError as exc:
        report["analytic"] = {"error": f"{type(exc).__name__}: {exc}"}
        return report, exc
    rep = fourlevel.abnormal_relations_check(ana, rtol)
    report["analytic"] = {
        "k": ana.k,
        "k_normalization_residual": abs(2 * ana.omega * (ana.omega + p.a0) * ana.k ** 2 - 1),
        "diagonal_pairings": {lab: _c(rep.pairings[(lab, lab)]) for lab in fourlevel.LABELS},
        "max_off_diagonal_pairing": max(
            abs(v) for (a, b), v in rep.pairings.items() if a != b
        ),
        "signed_completeness_residual": rep.completeness,
        "abnormal_relations_ok": rep.ok,
    }
    agreement = {}
    for lab in fourlevel.LABELS:
        E = ana.energy(lab)
        block = [k for k, lv in enumerate(system.levels) if abs(lv.E - E) <= 1e-8 * max(1.0, abs(E))]
        basis = np.column_stack([system.levels[k].psi for k in block])
        agreement[lab] = _projection_residual(ana.psi[lab], basis)
    report["analytic_vs_numeric_subspace"] = agreement

    try:
        doublets = kreindeg.find_pt_doublets(H, eta, theta, tol=rtol)
        krein = kreindeg.build_krein(doublets, theta, H, eta, tol=rtol)
    except NumericalFailure as exc:
        report["doublets"] = {"error": f"{type(exc).__name__}: {exc}"}
        return report, exc
    report["doublets"] = _doublet_rows(doublets)
    report["krein_residuals"] = dict(krein.residuals)
    report["pt_flags"] = _pt_flags(True, doublets, krein, theta, rtol)
    eta_plus = biortho.spectral_metric(system)
    report["spectral_metric_eta_pt_relation"] = _relation(eta_plus, theta, rtol)
    return report, None


# -- rendering ---------------------------------------------------------------

def _fmt(v):
    if isinstance(v, bool) or v is None:
        return str(v)
    if isinstance(v, float):
        return f"{v:.6g}" if v == 0 or 1e-4 <= abs(v) < 1e6 else f"{v:.3e}"
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, float) for x in v):
        return format_complex(complex(v[0], v[1]))
    if isinstance(v, list) and v and all(isinstance(x, list) for x in v):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], dict)):
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_fmt(v)}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            if isinstance(v, dict):
                lines.append(f"{pad}- " + ", ".join(f"{k}={_fmt(x)}" for k, x in v.items()))
            else:
                lines.append(f"{pad}- {_fmt(v)}")
    return lines


def _emit(report, args):
    text = json.dumps(report, indent=2) if args.json else "\n".join(render_text(report))
    print(text)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(json.dumps(report, indent=2) + "\n")


# -- commands ----------------------------------------------------------------

def cmd_analyze(args):
    rtol, rtol_source = resolve_rtol(args.rtol)
    H = read_matrix(args.matrix)
    eta = read_matrix(args.metric) if args.metric else None
    try:
        report = analyze(H, eta, rtol, args.matrix, args.metric, rtol_source)
    except StageFailure as exc:
        if exc.report is not None:
            exc.report["failure"] = str(exc)
            _emit(exc.report, args)
        print(f"kreinspec: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _emit(report, args)
    return EXIT_OK


def cmd_fourlevel(args):
    rtol, rtol_source = resolve_rtol(args.rtol)
    try:
        p = fourlevel.FourLevelParams(args.a0, args.A, args.B)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report, failure = fourlevel_report(p, rtol, rtol_source)
    if failure is not None:
        report["failure"] = f"{type(failure).__name__}: {failure}"
    _emit(report, args)
    if failure is not None:
        print(f"kreinspec: {report['pt_phase']}: {report['failure']}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def format_sweep(result, header):
    lines = [f"# {h}" for h in header]
    lines.append("# t D phase")
    for pt in result.points:
        lines.append(f"{pt.t!r} {pt.D!r} {pt.phase.value}")
    for hit in result.exceptional_points:
        lines.append(f"EP {hit.t!r} {hit.lo!r} {hit.hi!r}")
    return "\n".join(lines) + "\n"


def cmd_sweep(args):
    lo, hi = args.range
    if not lo < hi:
        raise InputError(f"empty range {lo}:{hi}; need lo < hi")
    if args.steps < 2:
        raise InputError("--steps must be at least 2")
    try:
        p = fourlevel.FourLevelParams(args.a0, args.A, args.B)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.axis in ("absA", "absB") and lo < 0:
        raise InputError(f"{args.axis} is a modulus; range must start at 0 or above")
    result = fourlevel.sweep_exceptional_point(p, args.axis, lo, hi, args.steps)
    header = [
        f"kreinspec {__version__} sweep",
        f"a0={p.a0!r} A={format_complex(p.A)} B={format_complex(p.B)}",
        f"axis={args.axis} range={lo!r}:{hi!r} steps={args.steps}",
        f"exceptional points: {len(result.exceptional_points)}",
    ]
    text = format_sweep(result, header)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {len(result.points)} rows and {len(result.exceptional_points)} EP rows to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_selftest(args):
    tol = _positive_float(args.tol) if args.tol is not None else None
    results = acceptance.run_all(tol=tol)
    failed = [r for r in results if not r.passed]
    if args.json:
        print(json.dumps({"passed": not failed, "criteria": [r.as_dict() for r in results]}, indent=2))
    else:
        for r in results:
            print(r.line())
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    if failed:
        print("failed criteria: " + ", ".join(str(r.number) for r in failed), file=sys.stderr)
        return EXIT_SELFTEST
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kreinspec",
        description="Pseudo-Hermitian Hamiltonians with even PT symmetry: analysis and checks.",
        epilog="Values starting with '-' that are not plain numbers need '=', e.g. --B=-0.5i.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--backend", choices=("cython", "python"), help="numerical kernel backend (default: fastest available)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a Hamiltonian from a matrix file")
    p.add_argument("matrix", help="matrix file ('dim N' header, then N rows)")
    p.add_argument("--metric", help="metric operator file to test against")
    p.add_argument("--rtol", help=f"residual tolerance (env {RTOL_ENV}; default 1e-10)")
    p.add_argument("--out", help="also write the JSON report here")
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    p.set_defaults(func=cmd_analyze)

    def model_args(q):
        q.add_argument("--a0", type=_finite_float, required=True)
        q.add_argument("--A", type=_complex_arg, required=True, help="complex, e.g. 0.5+0.3i")
        q.add_argument("--B", type=_complex_arg, required=True, help="complex, e.g. 0.2-0.1i")

    p = sub.add_parser("fourlevel", help="analytic and numeric report for the four-level model")
    model_args(p)
    p.add_argument("--rtol", help=f"residual tolerance (env {RTOL_ENV}; default 1e-10)")
    p.add_argument("--out", help="also write the JSON report here")
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    p.set_defaults(func=cmd_fourlevel)

    p = sub.add_parser("sweep", help="PT phase along one parameter axis, with EP bisection")
    model_args(p)
    p.add_argument("--axis", required=True, help="one of " + ", ".join(fourlevel.AXES))
    p.add_argument("--range", type=_range_arg, required=True, help="lo:hi")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("selftest", help="run the built-in acceptance suite")
    p.add_argument("--json", action="store_true", help="machine-readable pass/fail list")
    p.add_argument("--tol", help="replace every residual threshold (sensitivity check)")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep" and args.axis not in fourlevel.AXES:
        parser.exit(EXIT_INPUT, f"kreinspec: unknown axis {args.axis!r}; expected one of {', '.join(fourlevel.AXES)}\n")
    previous = numkernel.backend()
    if args.backend:
        try:
            numkernel.set_backend(args.backend)
        except ValueError as exc:
            print(f"kreinspec: {exc}", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, MatrixFileError) as exc:
        print(f"kreinspec: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalFailure as exc:
        print(f"kreinspec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except KreinSpecError as exc:
        print(f"kreinspec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    finally:
        numkernel.set_backend(previous)


if __name__ == "__main__":
    sys.exit(main())
