"""Ideals, k-ideals, prime k-ideals, radicals and the prime k-spectrum."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .semiring import FiniteSemiring, SemiringError, require_idempotent
from .topology import FiniteSpace, hull_kernel_space

KINDS = ("all", "proper", "k", "prime", "prime-k")


class NotAnIdeal(SemiringError):
    pass


@dataclass(frozen=True)
class IdealSet:
    semiring: FiniteSemiring
    members: frozenset[int]

    @classmethod
    def of(cls, S: FiniteSemiring, elems: Iterable) -> "IdealSet":
        return cls(S, frozenset(e if isinstance(e, int) else S.index(e) for e in elems))

    @classmethod
    def whole(cls, S: FiniteSemiring) -> "IdealSet":
        return cls(S, frozenset(S.elements))

    @classmethod
    def zero_ideal(cls, S: FiniteSemiring) -> "IdealSet":
        return cls(S, frozenset([S.zero]))

    def __le__(self, other: "IdealSet") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "IdealSet") -> bool:
        return self.members < other.members

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    @property
    def labels(self) -> list[str]:
        return self.semiring.labels(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(self.labels) + "}"

    __repr__ = __str__

    def sort_key(self) -> tuple:
        return (len(self.members), sorted(self.members))

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.semiring.n

    @property
    def is_ideal(self) -> bool:
        return is_ideal(self.semiring, self.members)

    @property
    def is_k(self) -> bool:
        return self.is_ideal and is_k_subset(self.semiring, self.members)

    @property
    def kind(self) -> str:
        if not self.is_ideal:
            return "subset"
        if not self.is_k:
            return "plain"
        return "prime-k" if is_prime_k_ideal(self.semiring, self) else "k"


def is_ideal(S: FiniteSemiring, I) -> bool:
    I = set(I)
    if S.zero not in I:
        return False
    return all(S.add[a][b] in I for a in I for b in I) and all(S.mul[r][a] in I for r in S.elements for a in I)


def is_k_subset(S: FiniteSemiring, I) -> bool:
    """x in I and x+y in I imply y in I."""
    I = set(I)
    return all(y in I for x in I for y in S.elements if S.add[x][y] in I)


def is_downset(S: FiniteSemiring, I) -> bool:
    I = set(I)
    return all(y in I for x in I for y in S.elements if S.leq(y, x))


def _require_ideal(I: IdealSet) -> None:
    if not I.is_ideal:
        raise NotAnIdeal(f"{I} is not an ideal of {I.semiring!r}")


def _require_k(I: IdealSet) -> None:
    if not I.is_k:
        raise NotAnIdeal(f"{I} is not a k-ideal of {I.semiring!r}")


def additive_closure(S: FiniteSemiring, gens: Iterable[int]) -> frozenset[int]:
    out = {S.zero} | set(gens)
    frontier = list(out)
    while frontier:
        a = frontier.pop()
        for b in list(out):
            c = S.add[a][b]
            if c not in out:
                out.add(c)
                frontier.append(c)
    return frozenset(out)


def generated_ideal(S: FiniteSemiring, gens: Iterable[int]) -> IdealSet:
    """Smallest ideal containing ``gens``: finite sums of multiples."""
    return IdealSet(S, additive_closure(S, {S.mul[r][g] for g in gens for r in S.elements}))


def _all_subsets(n: int):
    for k in range(n + 1):
        yield from combinations(range(n), k)


def _ideals_by_generation(S: FiniteSemiring) -> list[frozenset[int]]:
    found = {frozenset([S.zero])}
    frontier = list(found)
    while frontier:
        I = frontier.pop()
        for x in S.elements:
            if x not in I:
                J = generated_ideal(S, I | {x}).members
                if J not in found:
                    found.add(J)
                    frontier.append(J)
    return list(found)


def enumerate_ideals(S: FiniteSemiring, kind: str = "all") -> list[IdealSet]:
    """Every ideal of the requested kind, deduplicated and sorted by
    ``(size, members)``.

    Plain ideals are reached by closing ``{0}`` under adjoining generators, so
    no power set is ever materialized; :func:`enumerate_ideals_brute` is the
    subset-scan oracle.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown ideal kind {kind!r}; expected one of {KINDS}")
    base = _ideals_by_generation(S)
    return _filter(S, base, kind)


def enumerate_ideals_brute(S: FiniteSemiring, kind: str = "all") -> list[IdealSet]:
    base = [frozenset(c) for c in _all_subsets(S.n) if is_ideal(S, c)]
    return _filter(S, base, kind)


def _filter(S: FiniteSemiring, base, kind: str) -> list[IdealSet]:
    out = [IdealSet(S, m) for m in base]
    if kind == "proper":
        out = [I for I in out if I.is_proper]
    elif kind == "k":
        out = [I for I in out if is_k_subset(S, I.members)]
    elif kind == "prime":
        out = [I for I in out if is_prime_ideal(S, I)]
    elif kind == "prime-k":
        out = [I for I in out if is_k_subset(S, I.members) and is_prime_ideal(S, I)]
    return sorted(out, key=IdealSet.sort_key)


# ---------------------------------------------------------------- k-closure


def k_closure(S: FiniteSemiring, I: IdealSet) -> IdealSet:
    """``{x : x + y in I for some y in I}``, the least k-ideal over ``I``."""
    _require_ideal(I)
    m = I.members
    return IdealSet(S, frozenset(x for x in S.elements if any(S.add[x][y] in m for y in m)))


def k_closure_oracle(S: FiniteSemiring, I: IdealSet) -> IdealSet:
    """Intersection of every k-ideal containing ``I`` (subset scan)."""
    out = frozenset(S.elements)
    for c in _all_subsets(S.n):
        J = frozenset(c)
        if I.members <= J and is_ideal(S, J) and is_k_subset(S, J):
            out &= J
    return IdealSet(S, out)


def ideal_sum(S: FiniteSemiring, I: IdealSet, J: IdealSet) -> IdealSet:
    return IdealSet(S, frozenset(S.add[a][b] for a in I.members for b in J.members))


def ideal_product(S: FiniteSemiring, I: IdealSet, J: IdealSet) -> IdealSet:
    """Plain ideal product: the ideal generated by all ``xy``."""
    return IdealSet(S, additive_closure(S, {S.mul[a][b] for a in I.members for b in J.members}))


def ideal_power(S: FiniteSemiring, I: IdealSet, k: int) -> IdealSet:
    """Plain power ``I^k``; ``I^0`` is the unit ideal."""
    P = IdealSet.whole(S)
    for _ in range(k):
        P = ideal_product(S, P, I)
    return P


def k_sum(S: FiniteSemiring, I: IdealSet, J: IdealSet) -> IdealSet:
    _require_k(I)
    _require_k(J)
    return k_closure(S, ideal_sum(S, I, J))


def k_product(S: FiniteSemiring, I: IdealSet, J: IdealSet) -> IdealSet:
    _require_k(I)
    _require_k(J)
    return k_closure(S, ideal_product(S, I, J))


def k_power(S: FiniteSemiring, J: IdealSet, k: int) -> IdealSet:
    P = J
    for _ in range(k - 1):
        P = k_product(S, P, J)
    return P


def smallest_k_ideal_containing(S: FiniteSemiring, elems: Iterable[int]) -> IdealSet:
    """Oracle for the k-ideal sum and product: intersect all containing k-ideals."""
    need = set(elems)
    out = frozenset(S.elements)
    for c in _all_subsets(S.n):
        J = frozenset(c)
        if need <= J and is_ideal(S, J) and is_k_subset(S, J):
            out &= J
    return IdealSet(S, out)


def principal_k_ideal(S: FiniteSemiring, x: int) -> IdealSet:
    return k_closure(S, generated_ideal(S, [x]))


# ---------------------------------------------------------------- primes


def is_prime_ideal(S: FiniteSemiring, p: IdealSet) -> bool:
    if not p.is_proper or not p.is_ideal:
        return False
    m = p.members
    return all(a in m or b in m for a in S.elements for b in S.elements if S.mul[a][b] in m)


def is_prime_k_ideal(S: FiniteSemiring, p: IdealSet) -> bool:
    """Proper k-ideal with ``xy in p  =>  x in p or y in p``."""
    return p.is_ideal and is_k_subset(S, p.members) and is_prime_ideal(S, p)


def prime_witness(S: FiniteSemiring, p: IdealSet) -> tuple[int, int] | None:
    m = p.members
    for a in S.elements:
        for b in S.elements:
            if S.mul[a][b] in m and a not in m and b not in m:
                return (a, b)
    return None


def is_prime_k_ideal_pairwise(S: FiniteSemiring, p: IdealSet) -> bool:
    """Primality quantified over pairs of k-ideals: ``IJ <= p`` forces
    ``I <= p`` or ``J <= p``, with ``IJ`` the k-ideal product."""
    if not p.is_k or not p.is_proper:
        return False
    ks = enumerate_ideals(S, "k")
    return all(I <= p or J <= p for I in ks for J in ks if k_product(S, I, J) <= p)


def spec_k(S: FiniteSemiring) -> FiniteSpace:
    """Prime k-ideals with the hull-kernel topology over the carrier."""
    primes = enumerate_ideals(S, "prime-k")
    return hull_kernel_space([P.members for P in primes], base=S.elements, names=S.names)


def spec(S: FiniteSemiring) -> FiniteSpace:
    primes = enumerate_ideals(S, "prime")
    return hull_kernel_space([P.members for P in primes], base=S.elements, names=S.names)


def ideal_family_space(S: FiniteSemiring, kind: str) -> FiniteSpace:
    return hull_kernel_space([I.members for I in enumerate_ideals(S, kind)], base=S.elements, names=S.names)


def radical_k_ideal(S: FiniteSemiring, I: IdealSet) -> IdealSet:
    """Intersection of the prime k-ideals containing ``I`` (whole carrier if none)."""
    _require_k(I)
    out = frozenset(S.elements)
    for P in enumerate_ideals(S, "prime-k"):
        if I <= P:
            out &= P.members
    return IdealSet(S, out)


def radical_power_criterion(S: FiniteSemiring, I: IdealSet, J: IdealSet) -> tuple[bool, int | None]:
    """Whether some k-ideal power ``J^n`` lies in ``I``; returns the least such n.

    Powers are iterated until they stop changing, with a hard cap of ``|S|^2``.
    """
    _require_k(I)
    _require_k(J)
    P = J
    for n in range(1, S.n * S.n + 1):
        if P <= I:
            return True, n
        nxt = k_product(S, P, J)
        if nxt == P:
            return False, None
        P = nxt
    return False, None


def downset_k_ideals(S: FiniteSemiring) -> list[IdealSet]:
    """k-ideals of an idempotent semiring as principal downsets ``{y <= m}``
    with ``rm <= m`` for every r; linear in the carrier size."""
    require_idempotent(S)
    out = []
    for m in S.elements:
        if all(S.leq(S.mul[r][m], m) for r in S.elements):
            out.append(IdealSet(S, frozenset(y for y in S.elements if S.leq(y, m))))
    return sorted(set(out), key=IdealSet.sort_key)
