"""Compare binary dihedral class counts with (|det| - 1) / 2 over a box of three-strand knots."""

import argparse
import itertools
from dataclasses import dataclass

from knotrep.knot import PretzelKnot, determinant, is_knot, klassen_bd_count
from knotrep.reps import enumerate_binary_dihedral


@dataclass(frozen=True)
class Config:
    bound: int = 9


def main(cfg: Config) -> int:
    values = [x for x in range(-cfg.bound, cfg.bound + 1) if x]
    checked = mismatches = 0
    for p in itertools.combinations_with_replacement(values, 3):
        k = PretzelKnot(p)
        if not is_knot(k) or determinant(k)[0] == 0:
            continue
        got, want = len(enumerate_binary_dihedral(k)), klassen_bd_count(k)
        checked += 1
        if got != want:
            mismatches += 1
            print(f"{k}: enumerated {got}, expected {want}")
    print(f"{checked} knots checked, {mismatches} mismatches")
    return 1 if mismatches else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=Config.bound)
    raise SystemExit(main(Config(bound=ap.parse_args().bound)))
