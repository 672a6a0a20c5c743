"""Finite table semirings, Boolean polynomials and exact tropical numbers.

Elements of a :class:`FiniteSemiring` are plain integer indices into the
label tuple; labels only appear at the document boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence


class SemiringError(Exception):
    """Base class for all errors raised by this package."""


class DocumentError(SemiringError):
    """A document could not be parsed into the expected structure."""


class AxiomViolation(SemiringError):
    def __init__(self, axiom: str, witness: tuple, detail: str = ""):
        self.axiom = axiom
        self.witness = witness
        msg = f"{axiom} fails at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class CapabilityError(SemiringError):
    """The input lacks a structural property the operation requires."""


@dataclass(frozen=True)
class FiniteSemiring:
    names: tuple[str, ...]
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int
    one: int
    name: str = field(default="", compare=False)

    @classmethod
    def from_tables(cls, names, add, mul, zero, one, name="", check=True) -> "FiniteSemiring":
        names = tuple(str(x) for x in names)
        S = cls(
            names,
            tuple(tuple(int(v) for v in row) for row in add),
            tuple(tuple(int(v) for v in row) for row in mul),
            int(zero),
            int(one),
            name,
        )
        if check:
            S.check_axioms()
        return S

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        tag = self.name or "FiniteSemiring"
        return f"<{tag} {{{', '.join(self.names)}}}>"

    def index(self, label) -> int:
        try:
            return self.names.index(str(label))
        except ValueError:
            raise DocumentError(f"unknown element label {label!r}") from None

    def label(self, i: int) -> str:
        return self.names[i]

    def labels(self, idx: Iterable[int]) -> list[str]:
        return [self.names[i] for i in sorted(idx)]

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def power(self, a: int, k: int) -> int:
        """``a**k`` with ``a**0 == 1``."""
        r = self.one
        for _ in range(k):
            r = self.mul[r][a]
        return r

    def total(self, xs: Iterable[int]) -> int:
        r = self.zero
        for x in xs:
            r = self.add[r][x]
        return r

    def leq(self, a: int, b: int) -> bool:
        """Canonical order; only meaningful on idempotent carriers."""
        return self.add[a][b] == b

    def is_idempotent(self) -> bool:
        return all(self.add[a][a] == a for a in self.elements)

    def check_axioms(self) -> None:
        """Exhaustive verification of the commutative semiring laws."""
        n = self.n
        if n == 0:
            raise AxiomViolation("nonempty carrier", ())
        for tab, nm in ((self.add, "add"), (self.mul, "mul")):
            if len(tab) != n or any(len(r) != n for r in tab):
                raise DocumentError(f"{nm} table is not {n}x{n}")
            for row in tab:
                for v in row:
                    if not 0 <= v < n:
                        raise DocumentError(f"{nm} table entry {v} out of range")
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise DocumentError("zero/one index out of range")
        if n > 1 and self.zero == self.one:
            raise AxiomViolation("zero != one", (self.names[self.zero],))
        A, M, z, o = self.add, self.mul, self.zero, self.one
        nm = self.names
        for a in range(n):
            if A[z][a] != a:
                raise AxiomViolation("additive identity", (nm[a],))
            if M[o][a] != a:
                raise AxiomViolation("multiplicative identity", (nm[a],))
            if M[z][a] != z:
                raise AxiomViolation("absorption 0*a = 0", (nm[a],))
            for b in range(n):
                if A[a][b] != A[b][a]:
                    raise AxiomViolation("additive commutativity", (nm[a], nm[b]))
                if M[a][b] != M[b][a]:
                    raise AxiomViolation("multiplicative commutativity", (nm[a], nm[b]))
        for a, b, c in product(range(n), repeat=3):
            if A[A[a][b]][c] != A[a][A[b][c]]:
                raise AxiomViolation("additive associativity", (nm[a], nm[b], nm[c]))
            if M[M[a][b]][c] != M[a][M[b][c]]:
                raise AxiomViolation("multiplicative associativity", (nm[a], nm[b], nm[c]))
            if M[A[a][b]][c] != A[M[a][c]][M[b][c]]:
                raise AxiomViolation("distributivity (a+b)c = ac+bc", (nm[a], nm[b], nm[c]))

    def relabel(self, perm: Sequence[int]) -> "FiniteSemiring":
        """Image under the bijection ``i -> perm[i]``."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        add = tuple(tuple(perm[self.add[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
        mul = tuple(tuple(perm[self.mul[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
        names = tuple(self.names[inv[i]] for i in range(n))
        return FiniteSemiring(names, add, mul, perm[self.zero], perm[self.one], self.name)

    def table_key(self) -> tuple:
        return (self.add, self.mul, self.zero, self.one)

    def canonical_key(self) -> tuple:
        """Isomorphism invariant: least relabelled table key over all bijections
        sending zero to 0 and one to 1."""
        n = self.n
        if n == 1:
            return self.table_key()
        rest = [i for i in range(n) if i not in (self.zero, self.one)]
        best = None
        for order in permutations(rest):
            perm = [0] * n
            perm[self.zero] = 0
            perm[self.one] = 1
            for k, i in enumerate(order):
                perm[i] = k + 2
            key = self.relabel(perm).table_key()
            if best is None or key < best:
                best = key
        return best


# ---------------------------------------------------------------- documents


def semiring_to_document(S: FiniteSemiring) -> dict:
    nm = S.names
    return {
        "elements": list(nm),
        "zero": nm[S.zero],
        "one": nm[S.one],
        "add": [[nm[v] for v in row] for row in S.add],
        "mul": [[nm[v] for v in row] for row in S.mul],
    }


def load_finite_semiring(doc, name: str = "") -> FiniteSemiring:
    """Parse a semiring document (JSON text or an already-decoded mapping).

    Raises :class:`DocumentError` on malformed input and
    :class:`AxiomViolation` when the tables break a semiring law.
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, Mapping):
        raise DocumentError("semiring document must be an object")
    for key in ("elements", "zero", "one", "add", "mul"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    names = [str(x) for x in doc["elements"]]
    if len(set(names)) != len(names):
        raise DocumentError("duplicate element labels")
    pos = {x: i for i, x in enumerate(names)}

    def idx(v):
        if str(v) not in pos:
            raise DocumentError(f"unknown element label {v!r}")
        return pos[str(v)]

    n = len(names)
    tabs = []
    for key in ("add", "mul"):
        rows = doc[key]
        if not isinstance(rows, list) or len(rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in rows
        ):
            raise DocumentError(f"{key} must be a {n}x{n} array")
        tabs.append([[idx(v) for v in r] for r in rows])
    return FiniteSemiring.from_tables(
        names, tabs[0], tabs[1], idx(doc["zero"]), idx(doc["one"]), name=name or str(doc.get("name", ""))
    )


# ---------------------------------------------------------------- properties


@dataclass(frozen=True)
class PropertyReport:
    idempotent: bool
    integral: bool
    cancellative: bool
    zero_sum_free: bool
    idealic: bool
    radical_idealic: bool
    totally_ordered: bool
    freshman_dream: bool


def classify(S: FiniteSemiring) -> PropertyReport:
    E = S.elements
    z = S.zero
    idem = S.is_idempotent()
    integral = all(S.mul[a][b] != z or a == z or b == z for a in E for b in E)
    canc = all(
        S.mul[a][c] != S.mul[b][c] or a == b for a in E for b in E for c in E if c != z
    )
    # strict: x + a = 0 forces x = a = 0
    zsf = all(S.add[x][a] != z or (x == z and a == z) for x in E for a in E)
    idealic = idem and all(S.leq(x, S.one) for x in E)
    rad = idealic and all(S.mul[x][x] == x for x in E)
    total = idem and all(S.leq(x, y) or S.leq(y, x) for x in E for y in E)
    fresh = all(
        S.add[S.power(x, k)][S.power(y, k)] == S.power(S.add[x][y], k)
        for x in E
        for y in E
        for k in range(1, S.n + 1)
    )
    return PropertyReport(idem, integral, canc, zsf, idealic, rad, total, fresh)


def require_idempotent(S: FiniteSemiring) -> None:
    if not S.is_idempotent():
        raise CapabilityError(f"{S!r} is not additively idempotent")


def canonical_leq(S: FiniteSemiring, x, y) -> bool:
    require_idempotent(S)
    x = x if isinstance(x, int) else S.index(x)
    y = y if isinstance(y, int) else S.index(y)
    return S.add[x][y] == y


def _as_index_map(f, S: FiniteSemiring, T: FiniteSemiring) -> list[int]:
    if isinstance(f, Mapping):
        out = [None] * S.n
        for k, v in f.items():
            i = k if isinstance(k, int) else S.index(k)
            out[i] = v if isinstance(v, int) else T.index(v)
        if any(v is None for v in out):
            raise SemiringError("map is not total on the source carrier")
        return out
    return list(f)


def check_homomorphism(f, S: FiniteSemiring, T: FiniteSemiring) -> bool:
    """True iff ``f`` preserves sums, products, zero and one at every pair."""
    g = _as_index_map(f, S, T)
    if g[S.zero] != T.zero or g[S.one] != T.one:
        return False
    return all(
        g[S.add[a][b]] == T.add[g[a]][g[b]] and g[S.mul[a][b]] == T.mul[g[a]][g[b]]
        for a in S.elements
        for b in S.elements
    )


def _profile(S: FiniteSemiring, a: int) -> tuple:
    E = S.elements
    return (
        sum(S.leq(x, a) for x in E),
        sum(S.leq(a, x) for x in E),
        S.mul[a][a] == a,
        sum(S.mul[a][x] == a for x in E),
        sum(S.mul[a][x] == S.zero for x in E),
    )


def find_isomorphism(S: FiniteSemiring, T: FiniteSemiring) -> list[int] | None:
    """Backtracking search for a semiring isomorphism, keyed on additive order
    profiles. Returns the index map or ``None``."""
    if S.n != T.n:
        return None
    ps = [_profile(S, a) for a in S.elements]
    pt = [_profile(T, b) for b in T.elements]
    if sorted(ps) != sorted(pt):
        return None
    n = S.n
    f = [-1] * n
    used = [False] * n
    f[S.zero] = T.zero
    used[T.zero] = True
    if S.one != S.zero:
        if ps[S.one] != pt[T.one] or used[T.one]:
            return None
        f[S.one] = T.one
        used[T.one] = True
    order = [a for a in S.elements if f[a] < 0]

    def consistent() -> bool:
        for a in S.elements:
            if f[a] < 0:
                continue
            for b in S.elements:
                if f[b] < 0:
                    continue
                s, p = S.add[a][b], S.mul[a][b]
                if f[s] >= 0 and f[s] != T.add[f[a]][f[b]]:
                    return False
                if f[p] >= 0 and f[p] != T.mul[f[a]][f[b]]:
                    return False
        return True

    def go(k: int) -> bool:
        if k == len(order):
            return consistent()
        a = order[k]
        for b in T.elements:
            if not used[b] and pt[b] == ps[a]:
                f[a] = b
                used[b] = True
                if consistent() and go(k + 1):
                    return True
                f[a] = -1
                used[b] = False
        return False

    if not consistent():
        return None
    return list(f) if go(0) else None


def is_isomorphic(S: FiniteSemiring, T: FiniteSemiring) -> bool:
    return find_isomorphism(S, T) is not None


# ---------------------------------------------------------------- B[x_1..x_k]


@dataclass(frozen=True)
class BoolPoly:
    """Polynomial over the Boolean semifield: a finite set of exponent vectors.

    Addition is union and multiplication is the sumset of exponent vectors.
    """

    arity: int
    monomials: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        mons = tuple(sorted(set(tuple(int(e) for e in m) for m in self.monomials)))
        for m in mons:
            if len(m) != self.arity or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for arity {self.arity}")
        object.__setattr__(self, "monomials", mons)

    @classmethod
    def zero(cls, arity: int) -> "BoolPoly":
        return cls(arity, ())

    @classmethod
    def one(cls, arity: int) -> "BoolPoly":
        return cls(arity, ((0,) * arity,))

    @classmethod
    def var(cls, arity: int, i: int, power: int = 1) -> "BoolPoly":
        e = [0] * arity
        e[i] = power
        return cls(arity, (tuple(e),))

    @classmethod
    def monomial(cls, *exps: int) -> "BoolPoly":
        return cls(len(exps), (tuple(exps),))

    def _check(self, other: "BoolPoly") -> None:
        if not isinstance(other, BoolPoly):
            raise TypeError(f"cannot combine BoolPoly with {type(other).__name__}")
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "BoolPoly") -> "BoolPoly":
        self._check(other)
        return BoolPoly(self.arity, self.monomials + other.monomials)

    def __mul__(self, other: "BoolPoly") -> "BoolPoly":
        self._check(other)
        return BoolPoly(
            self.arity,
            tuple(tuple(a + b for a, b in zip(m, k)) for m in self.monomials for k in other.monomials),
        )

    def __pow__(self, k: int) -> "BoolPoly":
        r = BoolPoly.one(self.arity)
        for _ in range(k):
            r = r * self
        return r

    def __le__(self, other: "BoolPoly") -> bool:
        self._check(other)
        return set(self.monomials) <= set(other.monomials)

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def degree(self) -> int:
        return max((sum(m) for m in self.monomials), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.monomials}) <= 1

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        vars_ = "xyzuvw" if self.arity <= 6 else None
        terms = []
        for m in sorted(self.monomials, key=lambda m: (-sum(m), tuple(-e for e in m))):
            parts = []
            for i, e in enumerate(m):
                v = vars_[i] if vars_ else f"x{i}"
                if e == 1:
                    parts.append(v)
                elif e > 1:
                    parts.append(f"{v}^{e}")
            terms.append("".join(parts) or "1")
        return " + ".join(terms)


def bool_poly_add(p: BoolPoly, q: BoolPoly) -> BoolPoly:
    return p + q


def bool_poly_mul(p: BoolPoly, q: BoolPoly) -> BoolPoly:
    return p * q


def bool_poly_leq(p: BoolPoly, q: BoolPoly) -> bool:
    return p <= q


# ---------------------------------------------------------------- tropical


@dataclass(frozen=True)
class TropElem:
    """Element of the max-plus semifield over the rationals; ``None`` is -inf."""

    value: Fraction | None = None

    def __post_init__(self):
        if self.value is not None and not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    @classmethod
    def bottom(cls) -> "TropElem":
        return cls(None)

    @classmethod
    def unit(cls) -> "TropElem":
        return cls(Fraction(0))

    @property
    def is_bottom(self) -> bool:
        return self.value is None

    def __add__(self, other: "TropElem") -> "TropElem":
        if self.value is None:
            return other
        if other.value is None:
            return self
        return self if self.value >= other.value else other

    def __mul__(self, other: "TropElem") -> "TropElem":
        if self.value is None or other.value is None:
            return TropElem(None)
        return TropElem(self.value + other.value)

    def __pow__(self, k: int) -> "TropElem":
        if k == 0:
            return TropElem.unit()
        if self.value is None:
            return self
        return TropElem(self.value * k)

    def __le__(self, other: "TropElem") -> bool:
        return (self + other) == other

    def __str__(self) -> str:
        return "-inf" if self.value is None else str(self.value)


def trop(v) -> TropElem:
    if v is None or v == "-inf":
        return TropElem(None)
    return TropElem(Fraction(v))
