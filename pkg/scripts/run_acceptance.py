#!/usr/bin/env python3
"""Run the release acceptance suite and echo the per-criterion lines.

Equivalent to `pytest tests/test_acceptance.py -v -s`; kept as a script so
the gate can be run without remembering pytest flags.
"""

import pathlib
import subprocess
import sys


def main() -> int:
    root = pathlib.Path(__file__).resolve().parent.parent
    cmd = [sys.executable, "-m", "pytest",
           str(root / "tests" / "test_acceptance.py"), "-v", "-s"]
    return subprocess.call(cmd)


if __name__ == "__main__":
    sys.exit(main())
