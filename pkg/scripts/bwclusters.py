#!/usr/bin/env python3
"""
bwclusters CLI - Run the command-line front end from a source checkout.

Usage:
    python scripts/bwclusters.py bwt aab --order ab
    python scripts/bwclusters.py ar bound --directive :abc
    python scripts/bwclusters.py verify --suite car --max 8
"""

import sys
from pathlib import Path

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli import run  # noqa: E402

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
