"""Finite lattices, radical idealic semirings, k-subsemigroup lattices,
idealization / radicalization, Zariski spaces and realization of spectral
spaces as prime k-spectra."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .congruence import generate_congruence, quotient
from .ideals import (
    IdealSet,
    downset_k_ideals,
    enumerate_ideals,
    k_product,
    k_sum,
    principal_k_ideal,
    radical_k_ideal,
    spec_k,
)
from .semiring import (
    CapabilityError,
    DocumentError,
    FiniteSemiring,
    check_homomorphism,
    classify,
    find_isomorphism,
    require_idempotent,
)
from .topology import (
    HOMEOMORPHISM_BOUND,
    FiniteSpace,
    Poset,
    SearchBoundError,
    _members,
    _set_label,
    enumerate_posets,
    find_homeomorphism,
    hull_kernel_space,
    is_homeomorphism,
    is_spectral,
)


@dataclass(frozen=True)
class FiniteLattice:
    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    name: str = ""

    def __post_init__(self):
        n = len(self.names)
        L = self.leq
        for a in range(n):
            for b in range(n):
                j, m = self.join[a][b], self.meet[a][b]
                ubs = [c for c in range(n) if L[a][c] and L[b][c]]
                lbs = [c for c in range(n) if L[c][a] and L[c][b]]
                if j not in ubs or not all(L[j][c] for c in ubs):
                    raise DocumentError(f"join table is not the least upper bound at ({self.names[a]},{self.names[b]})")
                if m not in lbs or not all(L[c][m] for c in lbs):
                    raise DocumentError(f"meet table is not the greatest lower bound at ({self.names[a]},{self.names[b]})")
        if not all(L[self.bottom][a] and L[a][self.top] for a in range(n)):
            raise DocumentError("bottom/top are not bounds")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    def is_distributive(self) -> bool:
        J, M = self.join, self.meet
        return all(
            J[x][M[y][z]] == M[J[x][y]][J[x][z]] for x in self.elements for y in self.elements for z in self.elements
        )

    def poset(self) -> Poset:
        return Poset(self.names, self.leq)

    def index(self, label: str) -> int:
        return self.names.index(label)


def lattice_from_order(names: Sequence[str], leq, name: str = "") -> FiniteLattice:
    """Lattice from a full order matrix; fails if some join or meet is missing."""
    n = len(names)
    L = tuple(tuple(bool(v) for v in row) for row in leq)

    def best(cands, up):
        out = [c for c in cands if all((L[c][d] if up else L[d][c]) for d in cands)]
        return out[0] if out else None

    join, meet = [], []
    for a in range(n):
        jr, mr = [], []
        for b in range(n):
            j = best([c for c in range(n) if L[a][c] and L[b][c]], True)
            m = best([c for c in range(n) if L[c][a] and L[c][b]], False)
            if j is None or m is None:
                raise DocumentError("order is not a lattice")
            jr.append(j)
            mr.append(m)
        join.append(tuple(jr))
        meet.append(tuple(mr))
    bottom = next((a for a in range(n) if all(L[a][b] for b in range(n))), None)
    top = next((a for a in range(n) if all(L[b][a] for b in range(n))), None)
    if bottom is None or top is None:
        raise DocumentError("lattice is not bounded")
    return FiniteLattice(tuple(names), L, tuple(join), tuple(meet), bottom, top, name)


def load_lattice(doc) -> FiniteLattice:
    """``{"elements": [...], "leq": [[a, b], ...]}`` (transitively closed here)
    or ``{"elements", "join", "meet"}`` with label tables."""
    import json

    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        names = [str(e) for e in doc["elements"]]
    except (KeyError, TypeError) as e:
        raise DocumentError("lattice document needs an 'elements' list") from e
    pos = {x: i for i, x in enumerate(names)}
    n = len(names)
    if "leq" in doc:
        le = [[a == b for b in range(n)] for a in range(n)]
        for a, b in doc["leq"]:
            le[pos[str(a)]][pos[str(b)]] = True
        for k in range(n):
            for a in range(n):
                for b in range(n):
                    if le[a][k] and le[k][b]:
                        le[a][b] = True
        for a in range(n):
            for b in range(n):
                if a != b and le[a][b] and le[b][a]:
                    raise DocumentError(f"leq is not antisymmetric at {names[a]}, {names[b]}")
        return lattice_from_order(names, le, doc.get("name", ""))
    if "join" in doc:
        join = [[pos[str(v)] for v in row] for row in doc["join"]]
        le = [[join[a][b] == b for b in range(n)] for a in range(n)]
        return lattice_from_order(names, le, doc.get("name", ""))
    raise DocumentError("lattice document needs 'leq' or 'join'")


def lattice_to_document(L: FiniteLattice) -> dict:
    return {
        "elements": list(L.names),
        "leq": [[L.names[a], L.names[b]] for a, b in L.poset().covers()],
        "join": [[L.names[v] for v in row] for row in L.join],
        "meet": [[L.names[v] for v in row] for row in L.meet],
    }


def lattice_to_dot(L: FiniteLattice, name: str = "L") -> str:
    from .topology import poset_to_dot

    return poset_to_dot(L.poset(), name)


# ---------------------------------------------------------------- equivalence


def semiring_to_lattice(S: FiniteSemiring) -> FiniteLattice:
    """Radical idealic semiring as a bounded distributive lattice (join = +, meet = *)."""
    if not classify(S).radical_idealic:
        raise CapabilityError(f"{S.name or 'semiring'} is not radical idealic")
    leq = tuple(tuple(S.add[a][b] == b for b in S.elements) for a in S.elements)
    return FiniteLattice(S.names, leq, S.add, S.mul, S.zero, S.one, S.name)


def lattice_to_semiring(L: FiniteLattice) -> FiniteSemiring:
    if not L.is_distributive():
        raise CapabilityError("lattice is not distributive")
    return FiniteSemiring.from_tables(L.names, L.join, L.meet, L.bottom, L.top, name=L.name)


@lru_cache(maxsize=None)
def _distributive(n: int) -> tuple[FiniteLattice, ...]:
    out = []
    for k, P in enumerate(enumerate_posets(n)):
        try:
            L = lattice_from_order(P.points, P.leq, name=f"L{n}_{len(out)}")
        except DocumentError:
            continue
        if L.is_distributive():
            out.append(L)
    return tuple(out)


def enumerate_distributive_lattices(n: int) -> list[FiniteLattice]:
    """Bounded distributive lattices on n elements up to isomorphism."""
    return list(_distributive(n))


def lattice_homomorphisms(L: FiniteLattice, M: FiniteLattice) -> list[tuple[int, ...]]:
    """All maps preserving join, meet, bottom and top."""
    out = []

    def go(f):
        k = len(f)
        for a in range(k):
            for b in range(k):
                j, m = L.join[a][b], L.meet[a][b]
                if j < k and f[j] != M.join[f[a]][f[b]]:
                    return
                if m < k and f[m] != M.meet[f[a]][f[b]]:
                    return
        if k == L.n:
            out.append(tuple(f))
            return
        for v in M.elements:
            if k == L.bottom and v != M.bottom or k == L.top and v != M.top:
                continue
            go(f + [v])

    go([])
    return out


# ---------------------------------------------------------------- k-subsemigroups


@dataclass(frozen=True)
class KSubsemigroupLattice:
    base: FiniteSemiring
    elements: tuple[frozenset[int], ...]

    def lattice(self) -> FiniteLattice:
        names = [_set_label(e, self.base.names) for e in self.elements]
        leq = [[a <= b for b in self.elements] for a in self.elements]
        return lattice_from_order(names, leq, name=f"S({self.base.name})")

    def index(self, s: frozenset[int]) -> int:
        return self.elements.index(frozenset(s))


def is_k_subsemigroup(S: FiniteSemiring, X) -> bool:
    X = set(X)
    return (
        S.zero in X
        and all(S.add[a][b] in X for a in X for b in X)
        and all(y in X for x in X for y in S.elements if S.leq(y, x))
    )


def k_subsemigroup_lattice(S: FiniteSemiring) -> KSubsemigroupLattice:
    """All k-subsemigroups of the additive reduct, found by closing unions.

    For an idempotent carrier each one is a downset closed under +, hence a
    principal downset in the finite case; the enumeration does not assume this.
    """
    require_idempotent(S)
    found = {smallest_k_subsemigroup(S, [])}
    frontier = list(found)
    while frontier:
        X = frontier.pop()
        for x in S.elements:
            if x not in X:
                Y = smallest_k_subsemigroup(S, X | {x})
                if Y not in found:
                    found.add(Y)
                    frontier.append(Y)
    return KSubsemigroupLattice(S, tuple(sorted(found, key=lambda s: (len(s), sorted(s)))))


def smallest_k_subsemigroup(S: FiniteSemiring, gens) -> frozenset[int]:
    X = {S.zero} | set(gens)
    while True:
        Y = X | {S.add[a][b] for a in X for b in X} | {y for x in X for y in S.elements if S.leq(y, x)}
        if Y == X:
            return frozenset(X)
        X = Y


def compact_elements(L: FiniteLattice) -> list[int]:
    """Elements c with: whenever c is below the join of a family, it is below
    the join of a finite subfamily. On a finite lattice every family is finite,
    so this returns everything; kept explicit to mirror the general statement."""
    return [c for c in L.elements]


def principal_k_subsemigroup(S: FiniteSemiring, x: int) -> frozenset[int]:
    return smallest_k_subsemigroup(S, [x])


def subsemigroup_product(S: FiniteSemiring, X, Y) -> frozenset[int]:
    """Smallest k-subsemigroup containing every ``xy``."""
    return smallest_k_subsemigroup(S, {S.mul[a][b] for a in X for b in Y})


def compact_semiring(K: KSubsemigroupLattice) -> FiniteSemiring:
    """``S(A)^c`` as a semiring: join of k-subsemigroups and the product above."""
    S = K.base
    L = K.lattice()
    comp = compact_elements(L)
    els = [K.elements[i] for i in comp]
    pos = {e: i for i, e in enumerate(els)}
    add = [[pos[smallest_k_subsemigroup(S, a | b)] for b in els] for a in els]
    mul = [[pos[subsemigroup_product(S, a, b)] for b in els] for a in els]
    zero = pos[smallest_k_subsemigroup(S, [])]
    one = pos[principal_k_subsemigroup(S, S.one)]
    names = [_set_label(e, S.names) for e in els]
    return FiniteSemiring.from_tables(names, add, mul, zero, one, name=f"S({S.name})^c")


def principal_map(S: FiniteSemiring, T: FiniteSemiring) -> list[int]:
    """``x -> <x>`` from S into ``S(S)^c`` (labels of T are set labels)."""
    return [T.index(_set_label(principal_k_subsemigroup(S, x), S.names)) for x in S.elements]


def verify_compact_isomorphism(S: FiniteSemiring) -> bool:
    """``A = S(A)^c`` as semirings via ``x -> <x>``."""
    T = compact_semiring(k_subsemigroup_lattice(S))
    f = principal_map(S, T)
    return len(set(f)) == S.n == T.n and check_homomorphism(f, S, T)


def verify_lattice_reconstruction(L: FiniteLattice) -> bool:
    """``L = S(L^c)`` as lattices via ``x -> {y <= x}``; L^c is L under join."""
    S = FiniteSemiring.from_tables(L.names, L.join, L.meet, L.bottom, L.top, check=False)
    K = k_subsemigroup_lattice(S)
    M = K.lattice()
    f = [M.index(_set_label(frozenset(y for y in L.elements if L.leq[y][x]), L.names)) for x in L.elements]
    if len(set(f)) != L.n or M.n != L.n:
        return False
    return all(
        f[L.join[a][b]] == M.join[f[a]][f[b]] and f[L.meet[a][b]] == M.meet[f[a]][f[b]]
        for a in L.elements
        for b in L.elements
    )


def verify_multiplicative_reconstruction(S: FiniteSemiring) -> bool:
    """For the lattice-with-multiplication ``L = S(A)^c``, ``L = S(L^c)`` as
    semirings via ``x -> <x>``."""
    T = compact_semiring(k_subsemigroup_lattice(S))
    return verify_compact_isomorphism(T)


# ---------------------------------------------------------------- ideal semirings


def _ideal_semiring(S: FiniteSemiring, ideals: list[IdealSet], add, mul, zero, one, name) -> FiniteSemiring:
    pos = {I: i for i, I in enumerate(ideals)}
    names = [str(I) for I in ideals]
    return FiniteSemiring.from_tables(
        names,
        [[pos[add(a, b)] for b in ideals] for a in ideals],
        [[pos[mul(a, b)] for b in ideals] for a in ideals],
        pos[zero],
        pos[one],
        name=name,
    )


def k_ideal_semiring(S: FiniteSemiring) -> FiniteSemiring:
    """``I(A)``: k-ideals under k-ideal sum and product."""
    ks = enumerate_ideals(S, "k")
    return _ideal_semiring(
        S, ks, lambda a, b: k_sum(S, a, b), lambda a, b: k_product(S, a, b),
        k_sum(S, IdealSet.zero_ideal(S), IdealSet.zero_ideal(S)), IdealSet.whole(S), f"I({S.name})",
    )


def radical_ideal_semiring(S: FiniteSemiring) -> FiniteSemiring:
    """``I_rad(A)``: radical k-ideals with ``sqrt(I + J)`` and ``sqrt(IJ)``."""
    rad = sorted({radical_k_ideal(S, I) for I in enumerate_ideals(S, "k")}, key=IdealSet.sort_key)
    r = lambda I: radical_k_ideal(S, I)  # noqa: E731
    zero = r(IdealSet.zero_ideal(S))
    return _ideal_semiring(
        S, rad, lambda a, b: r(k_sum(S, a, b)), lambda a, b: r(k_product(S, a, b)),
        zero, IdealSet.whole(S), f"Irad({S.name})",
    )


@dataclass(frozen=True)
class QuotientResult:
    semiring: FiniteSemiring
    projection: tuple[int, ...]
    congruence: object


def _quotient_by(S: FiniteSemiring, seed, tag: str) -> QuotientResult:
    C = generate_congruence(S, seed, method="unary")
    Q, proj = quotient(S, C)
    Q = FiniteSemiring(Q.names, Q.add, Q.mul, Q.zero, Q.one, name=f"{tag}({S.name})")
    return QuotientResult(Q, tuple(proj), C)


def idealization(S: FiniteSemiring) -> QuotientResult:
    """Quotient by ``x + 1 ~ 1``."""
    require_idempotent(S)
    return _quotient_by(S, [(S.add[x][S.one], S.one) for x in S.elements], "idl")


def radicalization(S: FiniteSemiring) -> QuotientResult:
    """Quotient by ``x^2 ~ x``; defined on idealic semirings."""
    if not classify(S).idealic:
        raise CapabilityError(f"{S.name or 'semiring'} is not idealic")
    return _quotient_by(S, [(S.mul[x][x], x) for x in S.elements], "rad")


def i_rad_compact(S: FiniteSemiring) -> QuotientResult:
    """Quotient by ``x^2 ~ x`` and ``x + 1 ~ 1`` together."""
    require_idempotent(S)
    seed = [(S.mul[x][x], x) for x in S.elements] + [(S.add[x][S.one], S.one) for x in S.elements]
    return _quotient_by(S, seed, "irad")


def verify_idealization(S: FiniteSemiring) -> bool:
    """``idealization(S) = I(A)`` via ``[x] -> <x>'``."""
    R = idealization(S)
    T = k_ideal_semiring(S)
    reps = [next(x for x in S.elements if R.projection[x] == q) for q in R.semiring.elements]
    f = [T.index(str(principal_k_ideal(S, x))) for x in reps]
    return len(set(f)) == T.n == R.semiring.n and check_homomorphism(f, R.semiring, T)


def verify_i_rad(S: FiniteSemiring) -> bool:
    """``i_rad_compact(S) = I_rad(A)`` via ``[x] -> sqrt(<x>')``."""
    R = i_rad_compact(S)
    T = radical_ideal_semiring(S)
    reps = [next(x for x in S.elements if R.projection[x] == q) for q in R.semiring.elements]
    f = [T.index(str(radical_k_ideal(S, principal_k_ideal(S, x)))) for x in reps]
    return len(set(f)) == T.n == R.semiring.n and check_homomorphism(f, R.semiring, T)


# ---------------------------------------------------------------- Zariski spaces


def prime_elements(S: FiniteSemiring) -> list[int]:
    """``p != 1`` with ``xy <= p  =>  x <= p or y <= p``."""
    return [
        p for p in S.elements
        if p != S.one
        and all(S.leq(x, p) or S.leq(y, p) for x in S.elements for y in S.elements if S.leq(S.mul[x][y], p))
    ]


def zariski_space(S: FiniteSemiring) -> FiniteSpace:
    """Prime elements with closed sets generated by ``V(x) = {p : x <= p}``."""
    if not classify(S).idealic:
        raise CapabilityError(f"{S.name or 'semiring'} is not idealic")
    primes = prime_elements(S)
    downs = [frozenset(x for x in S.elements if S.leq(x, p)) for p in primes]
    return hull_kernel_space(downs, base=S.elements, labels=[S.names[p] for p in primes])


# ---------------------------------------------------------------- realization


@dataclass(frozen=True)
class Realization:
    space: FiniteSpace
    semiring: FiniteSemiring
    spectrum: FiniteSpace
    homeomorphism: tuple[int, ...]


def open_set_semiring(X: FiniteSpace) -> FiniteSemiring:
    """``O(X)`` with union and intersection; every open is compact here."""
    opens = sorted(X.opens, key=lambda u: (bin(u).count("1"), u))
    pos = {u: i for i, u in enumerate(opens)}
    names = ["{" + ",".join(X.points[i] for i in _members(u)) + "}" for u in opens]
    return FiniteSemiring.from_tables(
        names,
        [[pos[a | b] for b in opens] for a in opens],
        [[pos[a & b] for b in opens] for a in opens],
        pos[0],
        pos[X.full],
        name="O(X)",
    )


def realize_space(X: FiniteSpace) -> Realization:
    """Build ``O(X)^c`` and the homeomorphism ``X -> Spec_k(O(X)^c)``.

    A point p goes to the prime k-ideal of opens missing p, i.e. the opens
    disjoint from the closure of p.
    """
    if X.n > HOMEOMORPHISM_BOUND:
        raise SearchBoundError(f"realization is limited to {HOMEOMORPHISM_BOUND} points")
    v = is_spectral(X)
    if not v:
        raise CapabilityError(f"space is not spectral: {v.reason}")
    A = open_set_semiring(X)
    opens = sorted(X.opens, key=lambda u: (bin(u).count("1"), u))
    Y = spec_k(A)
    pos = {frozenset(P): i for i, P in enumerate(Y.payloads)}
    f = []
    for p in range(X.n):
        ideal = frozenset(i for i, u in enumerate(opens) if not u >> p & 1)
        if ideal not in pos:
            raise CapabilityError(f"opens missing {X.points[p]} do not form a prime k-ideal")
        f.append(pos[ideal])
    f = tuple(f)
    if not is_homeomorphism(X, Y, f):
        raise CapabilityError("constructed map is not a homeomorphism")
    return Realization(X, A, Y, f)


def fast_k_ideals(S: FiniteSemiring) -> list[IdealSet]:
    """k-ideals of an idempotent semiring without subset scans."""
    return downset_k_ideals(S)


def spectrum_chain(S: FiniteSemiring):
    """Homeomorphisms ``Spec_k A -> Zar(I(A))`` and ``Spec_k A -> Zar(I_rad(A))``."""
    X = spec_k(S)
    Z1 = zariski_space(k_ideal_semiring(S))
    Z2 = zariski_space(radical_ideal_semiring(S))
    return find_homeomorphism(X, Z1), find_homeomorphism(X, Z2)


def spec_k_invariance(S: FiniteSemiring):
    """Homeomorphism ``Spec_k A -> Spec_k(i_rad_compact(A))``."""
    return find_homeomorphism(spec_k(S), spec_k(i_rad_compact(S).semiring))


def semiring_isomorphism(S: FiniteSemiring, T: FiniteSemiring):
    return find_isomorphism(S, T)
