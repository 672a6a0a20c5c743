"""Closure operations on the finite posets of ideals and congruences."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable

from .congruence import (
    CongruenceRel,
    congruence_space,
    diagonal,
    enumerate_congruences,
    radical_congruence,
)
from .ideals import (
    IdealSet,
    enumerate_ideals,
    generated_ideal,
    ideal_power,
    is_ideal,
    k_closure,
    radical_k_ideal,
)
from .semiring import CapabilityError, FiniteSemiring, classify, require_idempotent
from .topology import FiniteSpace, hull_kernel_space


@dataclass(frozen=True)
class AxiomVerdict:
    ok: bool
    axiom: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class ClosureOperator:
    """A map on a finite poset, tabulated. ``leq`` is the poset order."""

    name: str
    domain: list
    table: dict
    leq: Callable[[Any, Any], bool] = field(default=lambda a, b: a <= b, repr=False)

    def __call__(self, x):
        return self.table[x]

    def fixed_points(self) -> list:
        return [x for x in self.domain if self.table[x] == x]


def make_closure(name: str, domain, fn, leq=None) -> ClosureOperator:
    domain = list(domain)
    table = {x: fn(x) for x in domain}
    return ClosureOperator(name, domain, table, leq or (lambda a, b: a <= b))


def verify_closure_axioms(op: ClosureOperator) -> AxiomVerdict:
    """Extension, idempotence and order preservation, exhaustively."""
    cl, leq = op.table, op.leq
    for x in op.domain:
        if cl[x] not in cl:
            return AxiomVerdict(False, "closed domain", (x, cl[x]))
    for x in op.domain:
        if not leq(x, cl[x]):
            return AxiomVerdict(False, "extension", (x, cl[x]))
    for x in op.domain:
        if cl[cl[x]] != cl[x]:
            return AxiomVerdict(False, "idempotence", (x, cl[x], cl[cl[x]]))
    for x in op.domain:
        for y in op.domain:
            if leq(x, y) and not leq(cl[x], cl[y]):
                return AxiomVerdict(False, "order preservation", (x, y))
    return AxiomVerdict(True)


def is_finite_type(op: ClosureOperator) -> bool:
    """``cl(I)`` is the union of ``cl(J)`` over finitely generated ``J <= I``.

    Every ideal of a finite semiring is finitely generated, so this is a
    consistency check of the union formula.
    """
    for x in op.domain:
        parts = [op.table[j] for j in op.domain if op.leq(j, x)]
        if isinstance(x, IdealSet):
            union = frozenset().union(*(p.members for p in parts))
            if union != op.table[x].members:
                return False
        else:
            pairs = frozenset().union(*(p.pairs for p in parts))
            if pairs != op.table[x].pairs:
                return False
    return True


def fixed_point_space(op: ClosureOperator) -> FiniteSpace:
    """Fixed points with the hull-kernel topology."""
    pts = op.fixed_points()
    if pts and isinstance(pts[0], CongruenceRel):
        return congruence_space(pts[0].semiring, pts)
    if not pts:
        return hull_kernel_space([])
    S = pts[0].semiring
    return hull_kernel_space([p.members for p in pts], base=S.elements, names=S.names)


# ---------------------------------------------------------------- ideal closures


def closure_at_congruence(S: FiniteSemiring, C: CongruenceRel, I: IdealSet) -> IdealSet:
    """``I^C``: elements congruent to some element of I."""
    return IdealSet(S, frozenset(x for x in S.elements if any(C.related(x, z) for z in I.members)))


def bracket_closure(S: FiniteSemiring, C: CongruenceRel, I: IdealSet) -> IdealSet:
    """``I^[C]``: x with ``(z, x + z)`` in C for some z in I; always a k-ideal."""
    return IdealSet(S, frozenset(x for x in S.elements if any(C.related(z, S.add[x][z]) for z in I.members)))


def integral_witness(S: FiniteSemiring, I: IdealSet, x: int) -> tuple[int, int] | None:
    """Least ``(z, n)`` with ``(x + z)^n = z (x + z)^(n-1)``, n up to ``|S|^2 + 1``."""
    bound = S.n * S.n + 1
    for n in range(1, bound + 1):
        for z in sorted(I.members):
            w = S.add[x][z]
            if S.power(w, n) == S.mul[z][S.power(w, n - 1)]:
                return z, n
    return None


def integral_elements(S: FiniteSemiring, I: IdealSet) -> IdealSet:
    require_idempotent(S)
    return IdealSet(S, frozenset(x for x in S.elements if integral_witness(S, I, x) is not None))


def integral_elements_definitional(S: FiniteSemiring, I: IdealSet, max_n: int = 3) -> IdealSet:
    """Brute force over ``x^n + a1 x^(n-1) + ... + an = b1 x^(n-1) + ... + bn``
    with ``ai, bi`` in ``I^i`` (plain ideal powers) and ``n <= max_n``."""
    powers = [None] + [sorted(ideal_power(S, I, i).members) for i in range(1, max_n + 1)]
    out = set()
    for x in S.elements:
        xp = [S.power(x, k) for k in range(max_n + 1)]
        for n in range(1, max_n + 1):
            choices = [powers[i] for i in range(1, n + 1)]
            found = False
            for a in product(*choices):
                lhs = xp[n]
                for i, ai in enumerate(a, start=1):
                    lhs = S.add[lhs][S.mul[ai][xp[n - i]]]
                for b in product(*choices):
                    rhs = S.zero
                    for i, bi in enumerate(b, start=1):
                        rhs = S.add[rhs][S.mul[bi][xp[n - i]]]
                    if lhs == rhs:
                        found = True
                        break
                if found:
                    break
            if found:
                out.add(x)
                break
    return IdealSet(S, frozenset(out))


def integral_closure(S: FiniteSemiring, I: IdealSet) -> IdealSet:
    """``(I^int)'``: the k-closure of the integral elements."""
    return k_closure(S, integral_elements(S, I))


def _power_period(S: FiniteSemiring) -> tuple[int, int]:
    """``(start, period)`` of the sequence of power vectors ``(e^n)_e``, n >= 1."""
    seen: dict[tuple, int] = {}
    n = 1
    while True:
        vec = tuple(S.power(e, n) for e in S.elements)
        if vec in seen:
            return seen[vec], n - seen[vec]
        seen[vec] = n
        n += 1


def frobenius_bracket(S: FiniteSemiring, I: IdealSet, n: int) -> IdealSet:
    """``I^[n]``: the ideal generated by n-th powers of elements of I."""
    return generated_ideal(S, {S.power(i, n) for i in I.members})


def frobenius_witness(S: FiniteSemiring, I: IdealSet, x: int, bound: int | None = None) -> int | None:
    """Least n with ``x^n`` in ``I^[n]``.

    By default every n up to the end of the first period of the power
    vectors is tried, which is exact; ``bound`` replaces that cut-off.
    """
    if bound is None:
        start, period = _power_period(S)
        bound = start + period - 1
    for n in range(1, bound + 1):
        if S.power(x, n) in frobenius_bracket(S, I, n).members:
            return n
    return None


def _require_frobenius(S: FiniteSemiring) -> None:
    if not classify(S).freshman_dream:
        raise CapabilityError(f"{S.name or 'semiring'} fails x^n + y^n = (x + y)^n; Frobenius closure not available")


def frobenius_closure(S: FiniteSemiring, I: IdealSet, bound: int | None = None) -> IdealSet:
    _require_frobenius(S)
    return IdealSet(S, frozenset(x for x in S.elements if frobenius_witness(S, I, x, bound) is not None))


# ---------------------------------------------------------------- registry


def _ideal_leq(a: IdealSet, b: IdealSet) -> bool:
    return a.members <= b.members


def registered_closures(S: FiniteSemiring, with_congruences: bool = True) -> dict[str, ClosureOperator]:
    """Every closure operation available on S, keyed by name.

    ``congruence:<C>`` and ``bracket:<C>`` appear once per congruence C.
    """
    ideals = enumerate_ideals(S)
    kideals = [I for I in ideals if I.is_k]
    ops: dict[str, ClosureOperator] = {}
    ops["identity"] = make_closure("identity", ideals, lambda I: I, _ideal_leq)
    ops["indiscrete"] = make_closure("indiscrete", ideals, lambda I: IdealSet.whole(S), _ideal_leq)
    ops["k-closure"] = make_closure("k-closure", ideals, lambda I: k_closure(S, I), _ideal_leq)
    ops["radical"] = make_closure("radical", kideals, lambda I: radical_k_ideal(S, I), _ideal_leq)
    if not S.is_idempotent():
        return ops
    ops["integral"] = make_closure("integral", ideals, lambda I: integral_closure(S, I), _ideal_leq)
    ops["integral-raw"] = make_closure("integral-raw", ideals, lambda I: integral_elements(S, I), _ideal_leq)
    if classify(S).freshman_dream:
        ops["frobenius"] = make_closure("frobenius", ideals, lambda I: frobenius_closure(S, I), _ideal_leq)
    if with_congruences:
        congs = enumerate_congruences(S)
        for C in congs:
            ops[f"congruence:{C}"] = make_closure(
                f"congruence:{C}", ideals, lambda I, C=C: closure_at_congruence(S, C, I), _ideal_leq
            )
            ops[f"bracket:{C}"] = make_closure(
                f"bracket:{C}", ideals, lambda I, C=C: bracket_closure(S, C, I), _ideal_leq
            )
        nil = radical_congruence(S, diagonal(S))
        ops["bracket-radical"] = make_closure(
            "bracket-radical", ideals, lambda I: bracket_closure(S, nil, I), _ideal_leq
        )
        ops["congruence-radical"] = make_closure(
            "congruence-radical", congs, lambda C: radical_congruence(S, C), lambda a, b: a <= b
        )
    return ops


def closure_names(S: FiniteSemiring) -> list[str]:
    return list(registered_closures(S))


def apply_closure(S: FiniteSemiring, name: str, I: IdealSet, C: CongruenceRel | None = None) -> tuple[IdealSet, dict]:
    """Closure of a single ideal by name, plus a machine-readable derivation."""
    if not is_ideal(S, I.members):
        from .ideals import NotAnIdeal

        raise NotAnIdeal(f"{I} is not an ideal")
    if name == "identity":
        return I, {}
    if name == "indiscrete":
        return IdealSet.whole(S), {}
    if name == "k-closure":
        J = k_closure(S, I)
        return J, {"witnesses": {S.label(x): S.label(next(y for y in I.members if S.add[x][y] in I.members))
                                 for x in J.members}}
    if name == "radical":
        return radical_k_ideal(S, I), {}
    if name in ("integral", "integral-raw"):
        require_idempotent(S)
        raw = integral_elements(S, I)
        wit = {}
        for x in raw.members:
            z, n = integral_witness(S, I, x)
            wit[S.label(x)] = {"z": S.label(z), "n": n}
        J = raw if name == "integral-raw" else k_closure(S, raw)
        return J, {"integral_witnesses": wit}
    if name == "frobenius":
        J = frobenius_closure(S, I)
        return J, {"frobenius_witnesses": {S.label(x): frobenius_witness(S, I, x) for x in J.members}}
    if name in ("congruence", "bracket"):
        if C is None:
            raise CapabilityError(f"closure {name!r} needs a congruence")
        fn = closure_at_congruence if name == "congruence" else bracket_closure
        return fn(S, C, I), {"congruence": C.class_labels()}
    if name == "bracket-radical":
        nil = radical_congruence(S, diagonal(S))
        return bracket_closure(S, nil, I), {"congruence": nil.class_labels()}
    raise CapabilityError(f"unknown closure {name!r}")


IDEAL_CLOSURE_NAMES = (
    "identity",
    "indiscrete",
    "k-closure",
    "radical",
    "integral",
    "integral-raw",
    "frobenius",
    "congruence",
    "bracket",
    "bracket-radical",
)
