"""Command-line interface.

Subcommands: ``verify`` (compose a gate and score it against its ideal),
``budget`` (feasibility arithmetic for a parameter file), ``sweep``
(parameter scans to CSV), ``dj`` (the Deutsch-Jozsa demo) and ``squid-g``
(the SQUID coupling-constant estimate).  Structured output is JSON on
stdout, or a file via ``--output``; sweeps emit CSV.  Exit codes: 0 success,
1 verification below threshold, 2 usage or configuration error.

The entrywise comparison tolerance defaults to 1e-10 and can be overridden
with the ``GATESIM_TOL`` environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import budget as budget_mod
from .device import ConfigError, load_params
from .dj import run_dj
from .jsonio import write_csv, write_json
from .pulses import Mode
from .sequences import GateKind, build_sequence, serialize_sequence
from .verify import (
    DEFAULT_TOL,
    phase_audit,
    report,
    swap_fidelity_vs_full,
    swap_peak_level3,
)

_MODES = [m.value for m in Mode]
_GATES = [g.value for g in GateKind]
_OBSERVABLES = ("fidelity_full", "leakage3", "tau_cp3", "tau_ntcnot", "kappa_inv")
_SWEEP_PARAMS = ("delta_ratio", "omega_ratio", "q_factor")


def _tolerance() -> float:
    raw = os.environ.get("GATESIM_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"GATESIM_TOL must be a float, got {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gatesim")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="compose a gate and compare it to its ideal matrix")
    p.add_argument("gate", choices=_GATES)
    p.add_argument("-n", type=int, default=3, help="qubit count (ncp, ntcnot)")
    p.add_argument("--mode", choices=_MODES, default="analytic")
    p.add_argument("--params", default="cpw", help="parameter file or preset name")
    p.add_argument("--threshold", type=float, default=None, help="fidelity required for exit 0")
    p.add_argument("--cavity-dim", type=int, default=2)
    p.add_argument("--samples", type=int, default=512, help="interior samples per pulse window")
    p.add_argument("--dump-sequence", action="store_true")
    p.add_argument("--audit", action="store_true", help="include the unwanted-phase audit")
    p.add_argument("--output", default=None)

    p = sub.add_parser("budget", help="feasibility report for a parameter file")
    p.add_argument("--params", default="cpw")
    p.add_argument("--threshold", type=float, default=budget_mod.FEASIBILITY_THRESHOLD)
    p.add_argument("--output", default=None)

    p = sub.add_parser("sweep", help="scan one parameter, tabulate one observable")
    p.add_argument("--param", choices=_SWEEP_PARAMS, required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--observable", choices=_OBSERVABLES, required=True)
    p.add_argument("--params", default="cpw")
    p.add_argument("--output", default=None)

    p = sub.add_parser("dj", help="run one Deutsch-Jozsa oracle variant")
    p.add_argument("--variant", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--mode", choices=_MODES, default="analytic")
    p.add_argument("--params", default="cpw")
    p.add_argument("--output", default=None)

    p = sub.add_parser("squid-g", help="SQUID-cavity coupling constant estimate")
    p.add_argument("--params", default="squid")
    p.add_argument("--output", default=None)

    return parser


def _cmd_verify(args) -> int:
    params, _ = load_params(args.params)
    mode = Mode.parse(args.mode)
    gate = GateKind.parse(args.gate)
    seq = build_sequence(gate, args.n, params, args.cavity_dim)
    tol = _tolerance()
    rep = report(seq, mode, tol=tol, samples_per_step=args.samples)
    threshold = args.threshold
    if threshold is None:
        threshold = 0.9 if mode is Mode.FULL else 1.0 - 1e-9
    passed = rep.process_fidelity >= threshold
    out = rep.to_dict()
    out["threshold"] = threshold
    out["passed"] = passed
    if args.audit:
        out["phase_audit"] = phase_audit(seq).to_dict()
    if args.dump_sequence:
        out["sequence"] = serialize_sequence(seq)
    write_json(out, args.output)
    return 0 if passed else 1


def _cmd_budget(args) -> int:
    params, raw = load_params(args.params)
    rep = budget_mod.feasibility(params, threshold=args.threshold)
    out = {"params": params.to_dict()}
    out.update(rep.to_dict())
    if "squid" in raw:
        sq = budget_mod.squid_from_dict(raw["squid"])
        out["squid"] = budget_mod.squid_coupling_breakdown(sq)
    if "levels" in raw:
        ls = budget_mod.levels_from_dict(raw["levels"])
        ok, violations = budget_mod.validate_levels(ls)
        out["levels"] = {"qubit_type": ls.qubit_type, "passed": ok, "violations": violations}
    write_json(out, args.output)
    return 0


def _sweep_observable(name: str, params) -> float:
    if name == "fidelity_full":
        return swap_fidelity_vs_full(params)
    if name == "leakage3":
        return swap_peak_level3(params)
    if name == "tau_cp3":
        return budget_mod.time_cp3(params)
    if name == "tau_ntcnot":
        return budget_mod.time_ntcnot(params)
    return budget_mod.cavity_lifetime(params.quality_q, params.nu_c)


def _cmd_sweep(args) -> int:
    params, _ = load_params(args.params)
    if args.points < 1:
        raise ConfigError("sweep needs at least one point")
    if args.points > 1 and not args.stop > args.start:
        raise ConfigError("sweep range must be increasing")
    values = np.linspace(args.start, args.stop, args.points)
    g0 = params.g_at(0)
    rows = []
    for value in values:
        if args.param == "delta_ratio":
            p = params.replace(delta_c=value * g0, delta_ck=value * g0)
        elif args.param == "omega_ratio":
            p = params.replace(omega_resonant=value * g0)
        else:
            p = params.replace(quality_q=value)
        rows.append((float(value), _sweep_observable(args.observable, p)))
    write_csv((args.param, args.observable), rows, args.output)
    return 0


def _cmd_dj(args) -> int:
    params, _ = load_params(args.params)
    result = run_dj(args.variant, params, Mode.parse(args.mode))
    write_json(result.to_dict(), args.output)
    return 0


def _cmd_squid_g(args) -> int:
    _, raw = load_params(args.params)
    if "squid" not in raw:
        raise ConfigError(f"parameter file {args.params!r} has no squid section")
    sq = budget_mod.squid_from_dict(raw["squid"])
    write_json(budget_mod.squid_coupling_breakdown(sq), args.output)
    return 0


_COMMANDS = {
    "verify": _cmd_verify,
    "budget": _cmd_budget,
    "sweep": _cmd_sweep,
    "dj": _cmd_dj,
    "squid-g": _cmd_squid_g,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"gatesim: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
