"""Rewrite the frozen CLI reports in tests/golden.

Nothing is written unless --write is given; without it the script only lists
the cases whose output changed.
"""
import argparse
import io
import os
import sys
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from golden_cases import CASES, GOLDEN_DIR  # noqa: E402
from qhowe import cli, oracle  # noqa: E402


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        cli.main(argv)
    return buf.getvalue()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--write", action="store_true", help="overwrite the golden files")
    args = ap.parse_args()
    os.environ["QHOWE_CACHE_DIR"] = tempfile.mkdtemp(prefix="qhowe-golden-")
    oracle.calibrate()
    GOLDEN_DIR.mkdir(exist_ok=True)
    changed = 0
    for name, argv in sorted(CASES.items()):
        text = run(argv)
        path = GOLDEN_DIR / f"{name}.json"
        if path.exists() and path.read_text() == text:
            continue
        changed += 1
        print(f"{'wrote' if args.write else 'differs'}: {path.name}")
        if args.write:
            path.write_text(text)
    print(f"{changed} of {len(CASES)} cases changed")


if __name__ == "__main__":
    main()
