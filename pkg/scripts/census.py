"""Print a census of small idempotent semirings: counts, property flags and
the sizes of their spectra.

    python scripts/census.py --max-order 4
"""

import argparse
from dataclasses import dataclass

from semispec.congruence import enumerate_congruences, spec_c
from semispec.corpus import corpus
from semispec.ideals import enumerate_ideals, spec_k
from semispec.semiring import classify

FLAGS = ("idealic", "radical_idealic", "totally_ordered", "freshman_dream", "cancellative")


@dataclass
class CensusConfig:
    max_order: int = 3


def row(S) -> list:
    r = classify(S)
    return [
        S.name,
        S.n,
        "".join("x" if getattr(r, f) else "." for f in FLAGS),
        len(enumerate_ideals(S, "k")),
        spec_k(S).n,
        len(enumerate_congruences(S)),
        spec_c(S).n,
    ]


def main(cfg: CensusConfig) -> None:
    head = ["name", "n", "flags", "#k-ideals", "|Spec_k|", "#congr", "|Spec_c|"]
    rows = [row(S) for S in corpus(cfg.max_order)]
    widths = [max(len(str(v)) for v in col) for col in zip(head, *rows)]
    print("flags: " + ", ".join(f"{i + 1}={f}" for i, f in enumerate(FLAGS)))
    for r in [head] + rows:
        print("  ".join(str(v).ljust(w) for v, w in zip(r, widths)))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=CensusConfig.max_order)
    main(CensusConfig(max_order=ap.parse_args().max_order))
