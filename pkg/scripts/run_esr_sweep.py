#!/usr/bin/env python3
"""ESR vs transmit SNR on the reference topology.

Sweeps 0..60 dB and writes one CSV with the Monte Carlo estimate (exact
SINRs), the closed-form lower bound and the high-SNR asymptote, ready for
plotting the bound-tightness comparison.

Usage: python3 scripts/run_esr_sweep.py [output.csv] [extra relaysec flags]
"""

import sys

from relaysec.cli import main

if __name__ == "__main__":
    args = sys.argv[1:]
    out = []
    if args and not args[0].startswith("-"):
        out = ["--output", args.pop(0)]
    sys.exit(main([
        "sweep",
        "--snr", "0:60:5",
        "--scheme", "three-hop",
        "--method", "mc-exact",
        "--method", "closed-form-lb",
        "--method", "asymptote",
        "--samples", "1000000",
        "--seed", "1",
        "--workers", "4",
        *out,
        *args,
    ]))
