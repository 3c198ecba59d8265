"""Run the worked-example pipeline into a census file and summarise the records."""

import argparse
import json
import sys
from pathlib import Path

from dezaswitch.cli import run_census

HERE = Path(__file__).resolve().parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pipeline", default=str(HERE.parent / "pipelines" / "worked_examples.jsonl"))
    ap.add_argument("--out", default="census.jsonl")
    args = ap.parse_args()

    added, dupes, errors = run_census(Path(args.pipeline), Path(args.out))
    print(f"added {added}, duplicates skipped {dupes}, errors {errors}")
    for line in Path(args.out).read_text().splitlines():
        rec = json.loads(line)
        if "error" in rec:
            print("ERROR", rec["error"])
            continue
        params = (rec["n"], rec["k"], rec["b"], rec["a"])
        print(f"{rec['construction']:>5} {params} strict={rec['strict']} {rec['spectrum']}")
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
