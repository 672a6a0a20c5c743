"""Run the acceptance suite and print one line per criterion.

    python scripts/run_acceptance.py
"""

import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    sys.exit(pytest.main([str(ROOT / "tests" / "test_acceptance.py"), "-q", "--no-header", "--tb=line", "-p", "no:cacheprovider"]))
