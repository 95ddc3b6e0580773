#!/usr/bin/env python3
"""Replay the bundled reference example (Totaro's 3-fold) and print verdicts.

Equivalent to `toricpos replicate-paper`, kept as a plain script so the run
is one command after a checkout:

    python scripts/replicate.py
"""

import sys

from toricpos.cli import main

if __name__ == "__main__":
    sys.exit(main(["replicate-paper", *sys.argv[1:]], standalone_mode=True))
