#!/usr/bin/env python3
"""Low-SNR comparison of the three-hop scheme against the baselines.

Runs all four schemes with exact SINRs over 0..25 dB on the reference
topology, the regime where the scheme-ordering question is decided.

Usage: python3 scripts/run_scheme_comparison.py [output.csv] [extra flags]
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
        "--snr", "0:25:5",
        "--scheme", "three-hop",
        "--scheme", "two-hop-1",
        "--scheme", "two-hop-2",
        "--scheme", "direct",
        "--method", "mc-exact",
        "--samples", "1000000",
        "--seed", "1",
        "--workers", "4",
        *out,
        *args,
    ]))
