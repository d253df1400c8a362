"""Run the packaged selftest suites from the repository checkout.

Thin wrapper over `fpindex selftest` so the suites run without installing
the console script.  Arguments pass straight through.
"""
import sys

from fpindex.cli import main

if __name__ == "__main__":
    sys.exit(main(["selftest", *sys.argv[1:]]))
