"""Show the bounded CD fragment on B[x,y]: class counts per degree, the
membership traces for (x^2n + y^2n, x^n y^n) and the monomial partner scan.

    python scripts/cd_fragment.py --degree 10
"""

import argparse

from semispec.fragment import cd_example, fragment_member, parse_bool_poly, partners_scan


def main(degree: int) -> None:
    F = cd_example(degree)
    print(f"degree bound {degree}; complete generators: {F.complete_generators}")
    print("classes per degree:", [F.class_count(d) for d in range(degree + 1)])
    for n in range(1, degree // 2 + 1):
        m = fragment_member(F, (f"x^{2 * n} + y^{2 * n}", f"x^{n}y^{n}"))
        print(f"n={n}: {m.verdict}")
        for line in m.trace:
            print("    " + line)
        if m.reason:
            print("    " + m.reason)
    for k in range(1, min(degree, 4) + 1):
        print(f"partners of x^{k}:", [str(p) for p in partners_scan(F, parse_bool_poly(f"x^{k}"))])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=8)
    main(ap.parse_args().degree)
