"""Measured size blow-ups: translated sentences relative to their source, and
compiled machine sentences relative to the input word."""

import argparse

from fmtbench.interp import TAU0_INTERP, measure_translation_constant
from fmtbench.logic import TAU_0, parse_formula
from fmtbench.logic.sentences import phi0, phi1
from fmtbench.tm import ONE_STEP, TWO_STEP, measure_size_constant

CORPUS = [
    phi0(),
    phi1(),
    parse_formula("exists x. U_min(x)", TAU_0),
    parse_formula("forall x. forall y. (S(x,y) -> Lt(x,y))", TAU_0),
    parse_formula("forall x. exists y. (Lt(x,y) | U_max(x))", TAU_0),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=8)
    args = ap.parse_args()
    c = measure_translation_constant(TAU0_INTERP, CORPUS)
    print(f"translation: max |phi^I| / |phi| = {c} ~ {float(c):.1f}")
    words = ["0" * i for i in range(1, args.max_len + 1)] + ["01" * i for i in range(1, args.max_len // 2 + 1)]
    for machine in (ONE_STEP, TWO_STEP):
        for family in ("phi0w", "chi"):
            d = measure_size_constant(machine, words, family)
            print(f"{machine.name} {family}: max size / |w| = {d} ~ {float(d):.1f}")


if __name__ == "__main__":
    main()
