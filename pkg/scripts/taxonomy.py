"""Chordless cycle census of gadget graphs of small orderings."""

import argparse
import json
from pathlib import Path

from fmtbench.gadgets import cycle_taxonomy, encode
from fmtbench.structures import complete_ordering


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--max-len", type=int, default=16)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(exist_ok=True)
    summary = {}
    for n in args.sizes:
        gg = encode(complete_ordering(n))
        report = cycle_taxonomy(gg, args.max_len)
        print(f"n={n}, {gg.size} vertices")
        print(report.text(), end="\n\n")
        summary[n] = report.as_dict()
    (args.out / "taxonomy.json").write_text(json.dumps(summary, indent=2) + "\n")


if __name__ == "__main__":
    main()
