"""Time the parse-based multiplication over matrix sizes and write a CSV.

    python scripts/run_bench.py --sizes 27,64,125,216 --reps 3 --csv bench.csv
"""
import sys

from cfgbmm.cli import main

if __name__ == "__main__":
    args = sys.argv[1:]
    if not any(a.startswith("--sizes") for a in args):
        args = ["--sizes", "8,27,64,125,216", *args]
    sys.exit(main(["bench", *args]))
