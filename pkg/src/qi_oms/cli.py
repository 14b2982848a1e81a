"""Command line entry point ``qi-oms``.

Exit codes: 0 success, 1 numerical failure, 2 usage or configuration error.
"""

import argparse
import json
import sys
from pathlib import Path

from .entanglement import log_negativity, pt_symplectic_eigenvalue
from .dynamics import output_spectra
from .errors import NumericalError, QiOmsError, UsageError
from .experiments import (
    DEFAULT_CONFIG,
    FIGURES,
    RunConfig,
    apply_overrides,
    merge_config,
    run_figure,
    sweep,
)
from .filters import CovarianceMatrix, project_covariance
from .illumination import figure_of_merit


def _load_config(path):
    if path is None:
        return {}
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc


def _resolve(args):
    data = merge_config(DEFAULT_CONFIG, _load_config(args.config))
    data = apply_overrides(data, args.set or [])
    return RunConfig.from_dict(data)


def _emit(dataset, out, fmt):
    if out:
        dataset.write(out, fmt)
    else:
        fmt = fmt or "csv"
        sys.stdout.write(dataset.to_json() if fmt == "json" else dataset.to_csv())


def _cmd_figure(args):
    overrides = list(args.set or [])
    dataset = run_figure(args.id, _load_config(args.config), overrides)
    _emit(dataset, args.out, args.format)


def _cmd_sweep(args):
    cfg = _resolve(args)
    dataset = sweep(cfg)
    _emit(dataset, args.out or cfg.output_path, args.format or cfg.output_format)


def _cmd_spectrum(args):
    cfg = _resolve(args)
    sp = output_spectra(cfg.system, args.omega)
    doc = {"omega": args.omega, "n_plus": float(sp.n_plus), "n_minus": float(sp.n_minus),
           "x_real": float(sp.x.real), "x_imag": float(sp.x.imag)}
    print(json.dumps(doc, indent=1))


def _cmd_entanglement(args):
    cfg = _resolve(args)
    if args.omega is not None:
        sp = output_spectra(cfg.system, args.omega)
        cm = CovarianceMatrix.from_moments(sp.n_plus, sp.n_minus, sp.x)
    else:
        cm = project_covariance(cfg.system, cfg.filter_spec(), cfg.tolerance)
    doc = {"v11": float(cm.v11), "v33": float(cm.v33), "v13": float(cm.v13), "v14": float(cm.v14),
           "eta_minus": float(pt_symplectic_eigenvalue(cm)), "e_n": float(log_negativity(cm))}
    print(json.dumps(doc, indent=1))


def _cmd_snr(args):
    cfg = _resolve(args)
    spec = cfg.filter_spec()
    report = figure_of_merit(cfg.system, cfg.illumination, spec, cfg.tolerance)
    doc = {"sigma": spec.sigma, "t_delay": spec.t_delay, "snr_qi": report.snr_qi,
           "snr_coh": report.snr_coh, "f_merit": report.f_merit, "p_qi": report.p_qi,
           "p_coh": report.p_coh, "v11": report.v11, "diagnostics": list(report.diagnostics)}
    print(json.dumps(doc, indent=1))


def _common(p):
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override a configuration key, e.g. system.delta=1.2 (repeatable)")


def build_parser():
    parser = argparse.ArgumentParser(prog="qi-oms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("figure", help="reproduce a reference figure dataset")
    p.add_argument("id", choices=FIGURES)
    _common(p)
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("sweep", help="figure-of-merit sweep over 1 or 2 axes")
    _common(p)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("spectrum", help="output spectra at one frequency")
    _common(p)
    p.add_argument("--omega", type=float, default=0.0)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("entanglement", help="logarithmic negativity, per frequency or filtered")
    _common(p)
    p.add_argument("--omega", type=float, default=None,
                   help="evaluate per frequency; otherwise use the configured filter")
    p.set_defaults(func=_cmd_entanglement)

    p = sub.add_parser("snr", help="QI and coherent SNRs for the configured filter")
    _common(p)
    p.set_defaults(func=_cmd_snr)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except NumericalError as exc:
        print(f"qi-oms: numerical failure: {exc}", file=sys.stderr)
        return 1
    except (QiOmsError, ValueError) as exc:
        print(f"qi-oms: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
