"""Congruences on finite semirings.

A congruence is stored as a partition of the carrier (restricted growth
string). Pairs of elements are :class:`PairElement` values; the twisted
product makes ``A x A`` into a semiring whose ideals-with-extra-structure are
exactly the congruences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .ideals import IdealSet, is_k_subset
from .semiring import FiniteSemiring, require_idempotent
from .topology import FiniteSpace, hull_kernel_space


@dataclass(frozen=True)
class PairElement:
    first: Any
    second: Any

    def __iter__(self):
        return iter((self.first, self.second))

    @property
    def is_diagonal(self) -> bool:
        return self.first == self.second

    def swap(self) -> "PairElement":
        return PairElement(self.second, self.first)

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


def _pair(x) -> PairElement:
    return x if isinstance(x, PairElement) else PairElement(*x)


def twisted_product(x, y, S: FiniteSemiring | None = None) -> PairElement:
    """``(x1 y1 + x2 y2, x1 y2 + x2 y1)``.

    With ``S`` the components are carrier indices; otherwise Python's ``+``
    and ``*`` are used, which covers :class:`TropElem` and :class:`BoolPoly`.
    """
    x, y = _pair(x), _pair(y)
    if S is None:
        return PairElement(x.first * y.first + x.second * y.second, x.first * y.second + x.second * y.first)
    a, m = S.add, S.mul
    return PairElement(
        a[m[x.first][y.first]][m[x.second][y.second]],
        a[m[x.first][y.second]][m[x.second][y.first]],
    )


def pair_sum(x, y, S: FiniteSemiring | None = None) -> PairElement:
    x, y = _pair(x), _pair(y)
    if S is None:
        return PairElement(x.first + y.first, x.second + y.second)
    return PairElement(S.add[x.first][y.first], S.add[x.second][y.second])


def twisted_power(x, n: int, S: FiniteSemiring | None = None) -> PairElement:
    """``x`` to the n-th twisted power; the zeroth power ``(1, 0)`` needs ``S``."""
    x = _pair(x)
    if n == 0:
        if S is None:
            raise ValueError("zeroth twisted power needs a finite carrier")
        return PairElement(S.one, S.zero)
    out = x
    for _ in range(n - 1):
        out = twisted_product(out, x, S)
    return out


def star(x, S: FiniteSemiring) -> PairElement:
    """``x* = (x1 + x2, 0)``."""
    x = _pair(x)
    return PairElement(S.add[x.first][x.second], S.zero)


# ---------------------------------------------------------------- relations


def _normalize(blocks: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(b, len(seen)) for b in blocks)


@dataclass(frozen=True)
class CongruenceRel:
    semiring: FiniteSemiring
    blocks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", _normalize(self.blocks))
        if len(self.blocks) != self.semiring.n:
            raise ValueError("one block index per carrier element required")

    @classmethod
    def from_pairs(cls, S: FiniteSemiring, pairs: Iterable) -> "CongruenceRel":
        """Partition induced by an equivalence relation given as pairs."""
        parent = list(S.elements)

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in pairs:
            parent[find(a)] = find(b)
        return cls(S, tuple(find(a) for a in S.elements))

    @classmethod
    def from_classes(cls, S: FiniteSemiring, classes: Iterable[Iterable]) -> "CongruenceRel":
        blocks = [-1] * S.n
        for k, cl in enumerate(classes):
            for x in cl:
                blocks[x if isinstance(x, int) else S.index(x)] = k
        if -1 in blocks:
            raise ValueError("classes do not cover the carrier")
        return cls(S, tuple(blocks))

    def related(self, a: int, b: int) -> bool:
        return self.blocks[a] == self.blocks[b]

    def __contains__(self, pair) -> bool:
        a, b = _pair(pair)
        return self.blocks[a] == self.blocks[b]

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        els = self.semiring.elements
        return frozenset((a, b) for a in els for b in els if self.blocks[a] == self.blocks[b])

    def pair_codes(self) -> frozenset[int]:
        n = self.semiring.n
        return frozenset(a * n + b for a, b in self.pairs)

    @property
    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(max(self.blocks) + 1)]
        for a, b in enumerate(self.blocks):
            out[b].append(a)
        return out

    def class_labels(self) -> list[list[str]]:
        return [self.semiring.labels(c) for c in self.classes]

    def __str__(self) -> str:
        return "".join("{" + ",".join(c) + "}" for c in self.class_labels())

    __repr__ = __str__

    def __le__(self, other: "CongruenceRel") -> bool:
        return all(other.blocks[a] == other.blocks[b] for a, b in self.pairs)

    def __lt__(self, other: "CongruenceRel") -> bool:
        return self <= other and self != other

    @property
    def is_full(self) -> bool:
        return max(self.blocks) == 0

    @property
    def is_diagonal(self) -> bool:
        return len(set(self.blocks)) == len(self.blocks)

    @property
    def is_compatible(self) -> bool:
        return is_congruence(self.semiring, self.blocks)

    def meet(self, other: "CongruenceRel") -> "CongruenceRel":
        return intersect(self, other)


def is_congruence(S: FiniteSemiring, blocks: Sequence[int]) -> bool:
    """Exhaustive compatibility check of a partition with + and *."""
    els = S.elements
    for a in els:
        for b in els:
            if a < b and blocks[a] == blocks[b]:
                for c in els:
                    if blocks[S.add[a][c]] != blocks[S.add[b][c]]:
                        return False
                    if blocks[S.mul[a][c]] != blocks[S.mul[b][c]]:
                        return False
    return True


def diagonal(S: FiniteSemiring) -> CongruenceRel:
    return CongruenceRel(S, tuple(S.elements))


def full(S: FiniteSemiring) -> CongruenceRel:
    return CongruenceRel(S, (0,) * S.n)


def intersect(C: CongruenceRel, D: CongruenceRel) -> CongruenceRel:
    keys = list(zip(C.blocks, D.blocks))
    ids: dict = {}
    return CongruenceRel(C.semiring, tuple(ids.setdefault(k, len(ids)) for k in keys))


# ---------------------------------------------------------------- generation


def _recipe(S: FiniteSemiring, seed: set[tuple[int, int]]) -> set[tuple[int, int]]:
    R = set(seed)
    while True:
        before = len(R)
        # symmetrize and add the diagonal
        R |= {(b, a) for a, b in R}
        R |= {(a, a) for a in S.elements}
        # subsemiring of A x A generated by R
        frontier = list(R)
        while frontier:
            p = frontier.pop()
            for q in list(R):
                for r in ((S.add[p[0]][q[0]], S.add[p[1]][q[1]]), (S.mul[p[0]][q[0]], S.mul[p[1]][q[1]])):
                    if r not in R:
                        R.add(r)
                        frontier.append(r)
        # transitive closure
        succ: dict[int, set[int]] = {}
        for a, b in R:
            succ.setdefault(a, set()).add(b)
        changed = True
        while changed:
            changed = False
            for a in S.elements:
                reach = set(succ.get(a, ()))
                for b in list(reach):
                    reach |= succ.get(b, set())
                if reach != succ.get(a, set()):
                    succ[a] = reach
                    changed = True
        R = {(a, b) for a, bs in succ.items() for b in bs}
        if len(R) == before:
            return R


def _unary(S: FiniteSemiring, seed: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Union-find closure under translations ``x -> x + c`` and ``x -> xc``."""
    parent = list(S.elements)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    work = list(seed)
    while work:
        a, b = work.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[ra] = rb
        for c in S.elements:
            work.append((S.add[a][c], S.add[b][c]))
            work.append((S.mul[a][c], S.mul[b][c]))
    return tuple(find(a) for a in S.elements)


def _index_pairs(S: FiniteSemiring, seed) -> set[tuple[int, int]]:
    out = set()
    for p in seed:
        a, b = _pair(p)
        out.add((a if isinstance(a, int) else S.index(a), b if isinstance(b, int) else S.index(b)))
    return out


def generate_congruence(S: FiniteSemiring, seed: Iterable = (), method: str = "recipe") -> CongruenceRel:
    """Least congruence containing ``seed``.

    ``method="recipe"`` iterates symmetrize / diagonal / subsemiring closure
    in ``A x A`` / transitive closure until nothing changes. ``"unary"`` is a
    union-find over translations, much faster on large carriers; both agree
    with :func:`generate_congruence_oracle`.
    """
    pairs = _index_pairs(S, seed)
    if method == "recipe":
        return CongruenceRel.from_pairs(S, _recipe(S, pairs))
    if method == "unary":
        return CongruenceRel(S, _unary(S, pairs))
    raise ValueError(f"unknown method {method!r}")


def _partitions(n: int):
    def go(prefix, k):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(k + 1):
            yield from go(prefix + [b], max(k, b + 1))

    if n == 0:
        yield ()
    else:
        yield from go([0], 1)


def enumerate_congruences_brute(S: FiniteSemiring) -> list[CongruenceRel]:
    """Scan every set partition (Bell number many)."""
    return _sorted([CongruenceRel(S, p) for p in _partitions(S.n) if is_congruence(S, p)])


def generate_congruence_oracle(S: FiniteSemiring, seed: Iterable = ()) -> CongruenceRel:
    """Intersection of all congruences containing the seed."""
    pairs = _index_pairs(S, seed)
    out = full(S)
    for C in enumerate_congruences_brute(S):
        if all(C.related(a, b) for a, b in pairs):
            out = intersect(out, C)
    return out


def _sorted(cs):
    return sorted(set(cs), key=lambda C: (-len(set(C.blocks)), C.blocks))


def enumerate_congruences(S: FiniteSemiring) -> list[CongruenceRel]:
    """All congruences, found as joins of principal congruences; ordered from
    the diagonal towards the full relation."""
    found = {diagonal(S)}
    frontier = list(found)
    while frontier:
        C = frontier.pop()
        for a in S.elements:
            for b in S.elements:
                if a < b and not C.related(a, b):
                    D = CongruenceRel(S, _unary(S, list(_rep_pairs(C)) + [(a, b)]))
                    if D not in found:
                        found.add(D)
                        frontier.append(D)
    return _sorted(found)


def _rep_pairs(C: CongruenceRel):
    for cl in C.classes:
        for x in cl[1:]:
            yield (cl[0], x)


def join(C: CongruenceRel, D: CongruenceRel) -> CongruenceRel:
    return CongruenceRel(C.semiring, _unary(C.semiring, list(_rep_pairs(C)) + list(_rep_pairs(D))))


def congruence_product(C: CongruenceRel, D: CongruenceRel, method: str = "unary") -> CongruenceRel:
    """Congruence generated by the twisted products ``c . d``, c in C, d in D."""
    S = C.semiring
    gens = {tuple(twisted_product(c, d, S)) for c in C.pairs for d in D.pairs}
    return generate_congruence(S, gens, method=method)


def componentwise_product(C: CongruenceRel, D: CongruenceRel) -> CongruenceRel:
    """Experimental: the congruence generated by ``(c1 d1, c2 d2)``.

    Kept separate from :func:`congruence_product`; it generally differs.
    """
    S = C.semiring
    gens = {(S.mul[c1][d1], S.mul[c2][d2]) for c1, c2 in C.pairs for d1, d2 in D.pairs}
    return generate_congruence(S, gens, method="unary")


# ---------------------------------------------------------------- quotients


def quotient(S: FiniteSemiring, C: CongruenceRel) -> tuple[FiniteSemiring, list[int]]:
    """``S / C`` with each class named by its first member, plus the projection."""
    reps = [cl[0] for cl in C.classes]
    proj = list(C.blocks)
    add = [[proj[S.add[a][b]] for b in reps] for a in reps]
    mul = [[proj[S.mul[a][b]] for b in reps] for a in reps]
    Q = FiniteSemiring.from_tables(
        [S.names[r] for r in reps], add, mul, proj[S.zero], proj[S.one], name=f"{S.name}/C", check=False
    )
    return Q, proj


def kernel(C: CongruenceRel) -> IdealSet:
    """The class of 0, always a k-ideal."""
    S = C.semiring
    return IdealSet(S, frozenset(a for a in S.elements if C.related(a, S.zero)))


# ---------------------------------------------------------------- primes


def prime_congruence_witness(S: FiniteSemiring, C: CongruenceRel) -> tuple[PairElement, PairElement] | None:
    els = S.elements
    outside = [PairElement(a, b) for a in els for b in els if not C.related(a, b)]
    for x in outside:
        for y in outside:
            if twisted_product(x, y, S) in C:
                return (x, y)
    return None


def is_prime_congruence(S: FiniteSemiring, C: CongruenceRel) -> bool:
    """Proper, and ``x . y in C`` forces ``x in C`` or ``y in C``."""
    require_idempotent(S)
    return not C.is_full and prime_congruence_witness(S, C) is None


def is_prime_by_quotient(S: FiniteSemiring, C: CongruenceRel) -> bool:
    """Proper with a totally ordered, multiplicatively cancellative quotient."""
    require_idempotent(S)
    if C.is_full:
        return False
    Q, _ = quotient(S, C)
    els = Q.elements
    total = all(Q.leq(a, b) or Q.leq(b, a) for a in els for b in els)
    cancel = all(
        a == b for a in els for b in els for c in els if c != Q.zero and Q.mul[a][c] == Q.mul[b][c]
    )
    return total and cancel


def prime_congruences(S: FiniteSemiring) -> list[CongruenceRel]:
    return [C for C in enumerate_congruences(S) if is_prime_congruence(S, C)]


def _pair_labels(S: FiniteSemiring) -> list[str]:
    return [f"({S.names[a]},{S.names[b]})" for a in S.elements for b in S.elements]


def congruence_space(S: FiniteSemiring, congruences: Sequence[CongruenceRel]) -> FiniteSpace:
    """Hull-kernel space on congruences viewed as subsets of ``A x A``."""
    cs = list(dict.fromkeys(congruences))
    return hull_kernel_space(
        [C.pair_codes() for C in cs], base=range(S.n * S.n), labels=[str(C) for C in cs]
    )


def spec_c(S: FiniteSemiring) -> FiniteSpace:
    require_idempotent(S)
    return congruence_space(S, prime_congruences(S))


# ---------------------------------------------------------------- radicals


def generalized_powers(S: FiniteSemiring, alpha, m_max: int, n_max: int, m_min: int = 1) -> set[PairElement]:
    """Values of ``((alpha*)^m + (c, 0)) . alpha^n`` for ``m_min <= m <= m_max``,
    ``1 <= n <= n_max`` and c over the carrier."""
    require_idempotent(S)
    alpha = _pair(alpha)
    s = star(alpha, S).first
    out = set()
    for n in range(1, n_max + 1):
        a1, a2 = twisted_power(alpha, n, S)
        for m in range(m_min, m_max + 1):
            sm = S.power(s, m)
            for c in S.elements:
                u = S.add[sm][c]
                out.add(PairElement(S.mul[u][a1], S.mul[u][a2]))
    return out


def radical_congruence(S: FiniteSemiring, C: CongruenceRel, method: str = "primes") -> CongruenceRel:
    """Radical of a congruence.

    ``"primes"`` intersects the prime congruences containing C (the full
    relation if there are none). ``"gp"`` keeps the pairs some generalized
    power of which lies in C, searching exponents up to ``|S|^2 + 1``.
    """
    require_idempotent(S)
    if method == "primes":
        out = full(S)
        for P in prime_congruences(S):
            if C <= P:
                out = intersect(out, P)
        return out
    if method == "gp":
        bound = S.n * S.n + 1
        keep = [
            (a, b)
            for a in S.elements
            for b in S.elements
            if any(g in C for g in generalized_powers(S, (a, b), bound, bound))
        ]
        return CongruenceRel.from_pairs(S, keep)
    raise ValueError(f"unknown method {method!r}")


def kernel_is_k_ideal(C: CongruenceRel) -> bool:
    return is_k_subset(C.semiring, kernel(C).members)


# ---------------------------------------------------------------- documents


def congruence_to_document(C: CongruenceRel) -> list[list[str]]:
    return C.class_labels()


def load_congruence(S: FiniteSemiring, doc) -> CongruenceRel:
    C = CongruenceRel.from_classes(S, doc)
    if not C.is_compatible:
        from .semiring import DocumentError

        raise DocumentError(f"partition {C} is not compatible with the operations")
    return C
