#!/usr/bin/env python3
"""Compose one gate in all three modes and print the reports side by side.

Quick look at how much the first-principles dynamics deviates from the
closed-form protocol at a given working point.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gatesim.device import load_params
from gatesim.jsonio import write_json
from gatesim.pulses import Mode
from gatesim.sequences import GateKind, build_sequence
from gatesim.verify import phase_audit, report


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("gate", choices=[g.value for g in GateKind], nargs="?", default="cp3")
    ap.add_argument("-n", type=int, default=3)
    ap.add_argument("--params", default="cpw")
    ap.add_argument("--output", default=None)
    args = ap.parse_args()

    params, _ = load_params(args.params)
    seq = build_sequence(GateKind.parse(args.gate), args.n, params)
    out = {
        "gate": args.gate,
        "n": seq.n,
        "modes": {mode.value: report(seq, mode).to_dict() for mode in Mode},
        "phase_audit": phase_audit(seq).to_dict(),
    }
    write_json(out, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
