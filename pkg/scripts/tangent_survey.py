"""Tabulate dim H^1 over odd three-strand knots and list the classes where it is nonzero."""

import argparse
import itertools
from dataclasses import dataclass

from knotrep.knot import PretzelKnot, determinant, is_knot
from knotrep.reps import enumerate_all
from knotrep.tangent import cocycle_system


@dataclass(frozen=True)
class Config:
    bound: int = 7


def main(cfg: Config) -> None:
    values = [x for x in range(-cfg.bound, cfg.bound + 1) if x % 2]
    for p in itertools.combinations_with_replacement(values, 3):
        k = PretzelKnot(p)
        if not is_knot(k) or determinant(k)[0] == 0:
            continue
        classes = enumerate_all(k).all_classes
        systems = [cocycle_system(c, k) for c in classes]
        flagged = [(c, s) for c, s in zip(classes, systems) if s.h1_dim > 0]
        tag = "coprime" if k.pairwise_coprime() else ""
        print(f"{str(k):16s} classes {len(classes):3d}  h1>0 at {len(flagged):2d}  {tag}")
        for c, s in flagged:
            print(f"    {c.label()}: z1={s.z1_dim} b1={s.b1_dim} h1={s.h1_dim}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=Config.bound)
    main(Config(bound=ap.parse_args().bound))
