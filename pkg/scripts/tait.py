"""Ordered-structure and graph-level runs of the ordering experiment."""

import argparse
from pathlib import Path

from fmtbench.experiments import experiment_tait


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    ap.add_argument("--graph-n", type=int, default=5)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(exist_ok=True)
    ok = True
    for n in args.sizes:
        r = experiment_tait(n)
        print(r.text(), end="\n\n")
        r.write(args.out / f"tait_structure_n{n}.json")
        ok &= r.passed
    r = experiment_tait(args.graph_n, args.k, "graph")
    print(r.text())
    r.write(args.out / f"tait_graph_n{args.graph_n}_k{args.k}.json")
    raise SystemExit(0 if ok and r.passed else 1)


if __name__ == "__main__":
    main()
