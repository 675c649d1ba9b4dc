"""Run the acceptance criteria and print one PASS/FAIL line each.

Usage: python3 scripts/run_acceptance.py [--quick] [--only 1 4] [--mutant join-no-offset]
Exit status is 0 only if every selected criterion passes.
"""
import sys

from loadcolor.cli import main

if __name__ == "__main__":
    sys.exit(main(["accept", *sys.argv[1:]]))
