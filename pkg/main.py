#!/usr/bin/env python3
"""
liestat -- CLI Runner
=====================
Left-invariant Riemannian and statistical geometry on Lie groups, and the
classification of conjugate-symmetric statistical structures.

Usage:
    python main.py report <spec.json> [--json] [--classify] [--out PATH]
    python main.py classify --milnor --c 1 3 1 --show-basis
    python main.py models t --nu 5 --alpha 2.5

See ``python main.py --help`` for the full grammar.
"""

import sys
from pathlib import Path

# ---------------------------------------------------------------------------
# Ensure project root is in sys.path
# ---------------------------------------------------------------------------
ROOT = Path(__file__).parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from liestat.cli import main

if __name__ == "__main__":
    sys.exit(main())
