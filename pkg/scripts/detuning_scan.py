#!/usr/bin/env python3
"""Scan the detuning ratio and tabulate the adiabatic-elimination error.

Writes a CSV with, per delta/g value, the process fidelity of the
first-principles emitter swap against its closed form, the peak level-3
transient during the swap, and the two gate durations.  This is the data
behind the claim that the gate error scales as (g/delta)^2.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from gatesim.budget import time_cp3, time_ntcnot
from gatesim.device import load_params
from gatesim.jsonio import write_csv
from gatesim.verify import swap_fidelity_vs_full, swap_peak_level3


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--params", default="cpw")
    ap.add_argument("--from", dest="start", type=float, default=8.0)
    ap.add_argument("--to", dest="stop", type=float, default=50.0)
    ap.add_argument("--points", type=int, default=22)
    ap.add_argument("--output", default="detuning_scan.csv")
    args = ap.parse_args()

    params, _ = load_params(args.params)
    g = params.g_at(0)
    rows = []
    for ratio in np.linspace(args.start, args.stop, args.points):
        p = params.replace(delta_c=ratio * g, delta_ck=ratio * g)
        rows.append(
            (
                float(ratio),
                swap_fidelity_vs_full(p),
                swap_peak_level3(p),
                time_cp3(p),
                time_ntcnot(p),
            )
        )
    header = ("delta_over_g", "swap_fidelity_full", "peak_level3", "tau_cp3_s", "tau_ntcnot_s")
    write_csv(header, rows, args.output)
    print(f"wrote {args.points} rows to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
