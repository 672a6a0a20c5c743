"""Named small semirings and exhaustive enumeration of commutative idempotent
semirings of a given order (up to isomorphism)."""

from __future__ import annotations

from functools import lru_cache

from .semiring import FiniteSemiring
from .topology import enumerate_posets


def _lattice_semiring(names, leq_pairs, one=None, mul=None, name=""):
    """Semiring whose addition is the join of the given order."""
    n = len(names)
    pos = {x: i for i, x in enumerate(names)}
    le = [[a == b for b in range(n)] for a in range(n)]
    for a, b in leq_pairs:
        le[pos[a]][pos[b]] = True
    for k in range(n):
        for a in range(n):
            for b in range(n):
                if le[a][k] and le[k][b]:
                    le[a][b] = True
    join = [[next(c for c in range(n) if le[a][c] and le[b][c] and all(
        le[c][d] for d in range(n) if le[a][d] and le[b][d])) for b in range(n)] for a in range(n)]
    if mul is None:
        mul = [[next(c for c in range(n) if le[c][a] and le[c][b] and all(
            le[d][c] for d in range(n) if le[d][a] and le[d][b])) for b in range(n)] for a in range(n)]
    else:
        mul = [[pos[mul[(names[a], names[b])]] if (names[a], names[b]) in mul else pos[mul[(names[b], names[a])]]
                for b in range(n)] for a in range(n)]
    bottom = next(a for a in range(n) if all(le[a][b] for b in range(n)))
    top = next(a for a in range(n) if all(le[b][a] for b in range(n)))
    o = pos[one] if one is not None else top
    return FiniteSemiring.from_tables(names, join, mul, bottom, o, name=name)


def trivial() -> FiniteSemiring:
    return FiniteSemiring.from_tables(["0"], [[0]], [[0]], 0, 0, name="trivial")


def boolean() -> FiniteSemiring:
    return _lattice_semiring(["0", "1"], [("0", "1")], name="B")


def chain3() -> FiniteSemiring:
    """({0,a,1}, max, min)."""
    return _lattice_semiring(["0", "a", "1"], [("0", "a"), ("a", "1")], name="chain3")


def n3() -> FiniteSemiring:
    """({0,a,1}, max) with a*a = 0: idealic but not radical."""
    mul = {("0", "0"): "0", ("0", "a"): "0", ("0", "1"): "0", ("a", "a"): "0", ("a", "1"): "a", ("1", "1"): "1"}
    return _lattice_semiring(["0", "a", "1"], [("0", "a"), ("a", "1")], mul=mul, name="N3")


def u3() -> FiniteSemiring:
    """0 < 1 < t with t*t = t: the multiplicative unit is not the top."""
    mul = {("0", "0"): "0", ("0", "1"): "0", ("0", "t"): "0", ("1", "1"): "1", ("1", "t"): "t", ("t", "t"): "t"}
    return _lattice_semiring(["0", "1", "t"], [("0", "1"), ("1", "t")], one="1", mul=mul, name="U3")


def diamond() -> FiniteSemiring:
    """The four-element Boolean lattice {0,a,b,1} with join and meet."""
    return _lattice_semiring(
        ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], name="D"
    )


NAMED = {
    "trivial": trivial,
    "B": boolean,
    "chain3": chain3,
    "N3": n3,
    "U3": u3,
    "D": diamond,
}


def named(name: str) -> FiniteSemiring:
    return NAMED[name]()


# ---------------------------------------------------------------- enumeration


def _lattices_on(n: int) -> list[list[list[int]]]:
    """Join tables of all lattices on n points (bottom relabelled to 0)."""
    out = []
    for P in enumerate_posets(n):
        L = P.leq
        bottoms = [a for a in range(n) if all(L[a][b] for b in range(n))]
        if not bottoms:
            continue
        join = [[-1] * n for _ in range(n)]
        ok = True
        for a in range(n):
            for b in range(n):
                ubs = [c for c in range(n) if L[a][c] and L[b][c]]
                least = [c for c in ubs if all(L[c][d] for d in ubs)]
                if not least:
                    ok = False
                    break
                join[a][b] = least[0]
            if not ok:
                break
        if not ok:
            continue
        bot = bottoms[0]
        perm = list(range(n))
        perm[0], perm[bot] = bot, 0
        # perm is its own inverse
        out.append([[perm[join[perm[a]][perm[b]]] for b in range(n)] for a in range(n)])
    return out


def _multiplications(join: list[list[int]], one: int):
    n = len(join)
    free = [(i, j) for i in range(n) for j in range(i, n) if 0 not in (i, j) and one not in (i, j)]
    mul = [[None] * n for _ in range(n)]
    for a in range(n):
        mul[0][a] = mul[a][0] = 0
        mul[one][a] = mul[a][one] = a
    mul[0][one] = mul[one][0] = 0

    def consistent() -> bool:
        for a in range(n):
            for b in range(n):
                ab = mul[a][b]
                if ab is None:
                    continue
                for c in range(n):
                    ac, bc = mul[a][c], mul[b][c]
                    s = mul[a][join[b][c]]
                    if s is not None and ab is not None and ac is not None and s != join[ab][ac]:
                        return False
                    if bc is not None:
                        l, r = mul[ab][c], mul[a][bc]
                        if l is not None and r is not None and l != r:
                            return False
        return True

    def go(k: int):
        if k == len(free):
            yield [row[:] for row in mul]
            return
        i, j = free[k]
        for v in range(n):
            mul[i][j] = mul[j][i] = v
            if consistent():
                yield from go(k + 1)
        mul[i][j] = mul[j][i] = None

    yield from go(0)


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[FiniteSemiring, ...]:
    if n == 1:
        return (trivial(),)
    seen: dict[tuple, FiniteSemiring] = {}
    for join in _lattices_on(n):
        for one in range(1, n):
            for mul in _multiplications(join, one):
                S = FiniteSemiring.from_tables([str(i) for i in range(n)], join, mul, 0, one)
                seen.setdefault(S.canonical_key(), S)
    named_keys = {}
    for f in NAMED.values():
        T = f()
        named_keys[T.canonical_key()] = T
    out = []
    for k, key in enumerate(sorted(seen)):
        if key in named_keys:
            out.append(named_keys[key])
        else:
            S = seen[key]
            out.append(FiniteSemiring(S.names, S.add, S.mul, S.zero, S.one, name=f"S{n}_{k}"))
    return tuple(out)


def enumerate_semirings(n: int) -> list[FiniteSemiring]:
    """All commutative additively idempotent semirings of order ``n`` up to
    isomorphism. Orders up to 4 are routine; 5 takes a few seconds."""
    return list(_enumerate(n))


def corpus(max_order: int = 3) -> list[FiniteSemiring]:
    """The named semirings plus every idempotent semiring of order <= max_order."""
    out: dict[tuple, FiniteSemiring] = {}
    for f in NAMED.values():
        S = f()
        out.setdefault(S.canonical_key(), S)
    for n in range(1, max_order + 1):
        for S in enumerate_semirings(n):
            out.setdefault(S.canonical_key(), S)
    return sorted(out.values(), key=lambda S: (S.n, S.name))
