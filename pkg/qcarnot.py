#!/usr/bin/env python
"""
qcarnot - quantum Carnot engine calculator

Maximum-entropy states of a particle in a well, quantum Carnot cycles,
lambda sweeps and self-verification.

For usage instructions, run:
    python qcarnot.py --help
"""

import sys
from quantum_carnot_pkg.cli import main

if __name__ == "__main__":
    sys.exit(main())
