#!/usr/bin/env python3
"""Closed-form-vs-oracle validation report.

Emits the full CSV check table (gating checks plus informational
diagnostics) and exits nonzero if any gating check fails.  Pass --quick
for a fast smoke run with smaller sample sizes.

Usage: python3 scripts/run_validation.py [output.csv] [--quick] [extra flags]
"""

import sys

from relaysec.cli import main

if __name__ == "__main__":
    args = sys.argv[1:]
    out = []
    if args and not args[0].startswith("-"):
        out = ["--output", args.pop(0)]
    sys.exit(main(["validate", *out, *args]))
