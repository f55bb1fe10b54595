#!/usr/bin/env python3
"""High-SNR slope, power offset and sampled asymptote line.

Prints the slope (1/3, with the two-hop 1/2 for comparison), the power
offset with its three building blocks, and the asymptote sampled over
30..60 dB on the reference topology.

Usage: python3 scripts/run_asymptote_table.py [output.csv] [extra flags]
"""

import sys

from relaysec.cli import main

if __name__ == "__main__":
    args = sys.argv[1:]
    out = []
    if args and not args[0].startswith("-"):
        out = ["--output", args.pop(0)]
    sys.exit(main(["asymptote", "--snr", "30:60:5", *out, *args]))
