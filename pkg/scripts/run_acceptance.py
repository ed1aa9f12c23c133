"""Run only the acceptance criteria and print their PASS/FAIL lines.

Pass --fast to skip the two exhaustive criteria (5 and 9).
"""
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def main():
    args = [sys.executable, "-m", "pytest", "-q", "-s", str(ROOT / "tests" / "test_acceptance.py")]
    if "--fast" in sys.argv[1:]:
        args += ["-m", "not slow"]
    return subprocess.call(args, cwd=ROOT)


if __name__ == "__main__":
    sys.exit(main())
