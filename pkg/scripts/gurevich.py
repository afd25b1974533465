"""Machine witness runs: sample machines and thresholds k."""

import argparse
from pathlib import Path

from fmtbench.experiments import experiment_gurevich_demo
from fmtbench.tm import ONE_STEP, TWO_STEP

RUNS = [(ONE_STEP, "0", 1), (TWO_STEP, "00", 1), (ONE_STEP, "0", 2)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(exist_ok=True)
    for machine, word, k in RUNS:
        r = experiment_gurevich_demo(machine, word, k)
        print(r.text(), end="\n\n")
        r.write(args.out / f"gurevich_{machine.name}_{word or 'empty'}_k{k}.json")


if __name__ == "__main__":
    main()
