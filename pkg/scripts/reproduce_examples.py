"""Run every verification scenario and print the verdicts with their detail lines."""

import sys

from dezaswitch.scenarios import run_all


def main():
    results = run_all(echo=print)
    ok = sum(r.passed for r in results)
    print(f"{ok}/{len(results)} scenarios passed")
    return 0 if ok == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
