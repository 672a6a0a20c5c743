"""Valuations on finite idempotent semirings through prime congruences.

The quotient by a prime congruence is totally ordered and multiplicatively
cancellative. On a finite carrier its nonzero elements form a finite totally
ordered group, so the quotient is already a semifield (it is its own fraction
semifield) and in fact has two elements. Value groups are never built
separately; the quotient plays the role of ``Gamma_max``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .congruence import CongruenceRel, is_prime_congruence, prime_congruences, quotient
from .semiring import FiniteSemiring, SemiringError, TropElem, check_homomorphism, require_idempotent
from .topology import FiniteSpace, space_from_subbasis


class NotPrime(SemiringError):
    pass


@dataclass(frozen=True)
class ValuationWitness:
    source: FiniteSemiring
    prime: CongruenceRel
    quotient: FiniteSemiring
    map: tuple[int, ...]
    order: tuple[int, ...]  # quotient elements, ascending

    def value(self, x) -> int:
        return self.map[x if isinstance(x, int) else self.source.index(x)]

    def value_label(self, x) -> str:
        return self.quotient.names[self.value(x)]

    def rank(self, q: int) -> int:
        return self.order.index(q)

    def le(self, x: int, y: int) -> bool:
        return self.rank(self.map[x]) <= self.rank(self.map[y])

    def tropical(self, x) -> TropElem:
        """The value in the tropical semifield under ``B -> T``, ``0 -> -inf``, ``1 -> 0``."""
        if self.quotient.n != 2:
            raise SemiringError("value semifield is not B")
        return TropElem(None) if self.value(x) == self.quotient.zero else TropElem.unit()

    def __str__(self) -> str:
        return str(self.prime)


def is_semifield(Q: FiniteSemiring) -> bool:
    return all(any(Q.mul[a][b] == Q.one for b in Q.elements) for a in Q.elements if a != Q.zero)


def valuation_axioms(v: ValuationWitness) -> list[str]:
    """Names of violated valuation axioms; empty when all hold.

    Checks (a), (b), (c) and the equivalent pair (c1)/(c2), with ``+`` in the
    value semifield being the max of the total order.
    """
    S, Q, nu = v.source, v.quotient, v.map
    r = v.rank
    mx = lambda p, q: p if r(p) >= r(q) else q  # noqa: E731
    bad = []
    if nu[S.zero] != Q.zero or nu[S.one] != Q.one:
        bad.append("a")
    els = S.elements
    if any(nu[S.mul[x][y]] != Q.mul[nu[x]][nu[y]] for x in els for y in els):
        bad.append("b")
    if any(nu[S.add[x][y]] != mx(nu[x], nu[y]) for x in els for y in els):
        bad.append("c")
    if any(r(nu[S.add[x][y]]) > r(mx(nu[x], nu[y])) for x in els for y in els):
        bad.append("c1")
    if any(r(nu[x]) > r(mx(nu[S.add[x][y]], nu[y])) for x in els for y in els):
        bad.append("c2")
    if any(Q.add[p][q] != mx(p, q) for p in Q.elements for q in Q.elements):
        bad.append("max")
    return bad


def valuation_from_prime(S: FiniteSemiring, C: CongruenceRel) -> ValuationWitness:
    """``a -> [a]`` into the quotient, which is a totally ordered semifield."""
    require_idempotent(S)
    if not is_prime_congruence(S, C):
        raise NotPrime(f"{C} is not a prime congruence")
    Q, proj = quotient(S, C)
    if not is_semifield(Q):
        raise SemiringError("quotient by a prime congruence is not a semifield")
    order = tuple(sorted(Q.elements, key=lambda q: sum(Q.leq(p, q) for p in Q.elements)))
    if any(not Q.leq(order[i], order[i + 1]) for i in range(len(order) - 1)):
        raise SemiringError("quotient is not totally ordered")
    v = ValuationWitness(S, C, Q, tuple(proj), order)
    bad = valuation_axioms(v)
    if bad:
        raise SemiringError(f"valuation axioms fail: {bad}")
    if not check_homomorphism(list(proj), S, Q):
        raise SemiringError("projection is not a homomorphism")
    return v


def kernel_congruence(v: ValuationWitness) -> CongruenceRel:
    """``{(x, y) : v(x) = v(y)}``."""
    return CongruenceRel(v.source, v.map)


def equivalent(v: ValuationWitness, w: ValuationWitness) -> bool:
    """Is there a semiring isomorphism ``v(A) -> w(A)`` over A?"""
    if v.source is not w.source and v.source != w.source:
        return False
    f: dict[int, int] = {}
    for x in v.source.elements:
        a, b = v.map[x], w.map[x]
        if f.setdefault(a, b) != b:
            return False
    if len(set(f.values())) != len(f):
        return False
    Qv, Qw = v.quotient, w.quotient
    img = sorted(f)
    return all(
        f.get(Qv.add[a][b]) == Qw.add[f[a]][f[b]] and f.get(Qv.mul[a][b]) == Qw.mul[f[a]][f[b]]
        for a in img for b in img
    )


def spv(S: FiniteSemiring) -> list[ValuationWitness]:
    """One valuation per prime congruence."""
    require_idempotent(S)
    return [valuation_from_prime(S, C) for C in prime_congruences(S)]


def verify_spv_bijection(S: FiniteSemiring) -> bool:
    """Both round trips between prime congruences and valuation classes."""
    primes = prime_congruences(S)
    vals = [valuation_from_prime(S, C) for C in primes]
    if any(kernel_congruence(v) != C for v, C in zip(vals, primes)):
        return False
    return all(equivalent(valuation_from_prime(S, kernel_congruence(v)), v) for v in vals)


@dataclass(frozen=True)
class ValuationOrder:
    source: FiniteSemiring
    rel: tuple[tuple[bool, ...], ...]

    def is_total_preorder(self) -> bool:
        R, els = self.rel, self.source.elements
        return all(R[a][b] or R[b][a] for a in els for b in els) and all(
            R[a][c] for a in els for b in els for c in els if R[a][b] and R[b][c]
        )

    def is_multiplicative(self) -> bool:
        S, R = self.source, self.rel
        return all(R[S.mul[a][c]][S.mul[b][c]] for a in S.elements for b in S.elements for c in S.elements if R[a][b])

    def levels(self) -> list[list[str]]:
        """Equivalence classes from the bottom up."""
        S, R = self.source, self.rel
        groups: dict[int, list[str]] = {}
        for a in S.elements:
            below = sum(R[b][a] for b in S.elements)
            groups.setdefault(below, []).append(S.names[a])
        return [groups[k] for k in sorted(groups)]


def valuation_order(v: ValuationWitness) -> ValuationOrder:
    """``x <= y`` iff ``v(x) <= v(y)``."""
    els = v.source.elements
    return ValuationOrder(v.source, tuple(tuple(v.le(x, y) for y in els) for x in els))


def spv_topology(S: FiniteSemiring) -> FiniteSpace:
    """Basis ``D(x, y) = {v : v(x) <= v(y), v(y) != 0}``."""
    vals = spv(S)
    basis = []
    for x in S.elements:
        for y in S.elements:
            basis.append([i for i, v in enumerate(vals) if v.le(x, y) and v.value(y) != v.quotient.zero])
    return space_from_subbasis([str(v) for v in vals], basis, payloads=vals)


def indistinguishable_points_equal(X: FiniteSpace) -> bool:
    """Points with identical open neighbourhoods are the same valuation."""
    for p in range(X.n):
        for q in range(p + 1, X.n):
            if all((u >> p & 1) == (u >> q & 1) for u in X.opens):
                if kernel_congruence(X.payloads[p]) != kernel_congruence(X.payloads[q]):
                    return False
    return True


def support(t: TropElem) -> int:
    """The support valuation of the tropical semifield onto B: 0 exactly at -inf."""
    return 0 if t.is_bottom else 1


def valuation_to_document(v: ValuationWitness) -> dict:
    S, Q = v.source, v.quotient
    return {
        "prime": v.prime.class_labels(),
        "quotient": {
            "elements": list(Q.names),
            "add": [[Q.names[c] for c in row] for row in Q.add],
            "mul": [[Q.names[c] for c in row] for row in Q.mul],
            "zero": Q.names[Q.zero],
            "one": Q.names[Q.one],
        },
        "order": [Q.names[q] for q in v.order],
        "values": {S.names[x]: Q.names[v.map[x]] for x in S.elements},
        "levels": valuation_order(v).levels(),
    }
