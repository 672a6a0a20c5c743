"""Finite topological spaces with opens stored as integer bitsets.

The specialization order used throughout is ``p <= q  iff  q in cl{p}``, so a
generic point sits at the bottom and, for hull-kernel spaces, the order is
plain inclusion of the underlying sets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .semiring import DocumentError, SemiringError

HOMEOMORPHISM_BOUND = 8


class SearchBoundError(SemiringError):
    """A bounded search was asked to go beyond its hard limit."""


def _mask(idx: Iterable[int]) -> int:
    m = 0
    for i in idx:
        m |= 1 << i
    return m


def _members(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def generate_topology(n: int, subbasis: Iterable[int]) -> frozenset[int]:
    """Close a family of bitsets under finite intersection, then arbitrary union."""
    full = (1 << n) - 1
    inter = {full}
    for s in subbasis:
        s &= full
        inter |= {s & t for t in inter}
        inter.add(s)
    opens = {0}
    for b in inter:
        opens |= {b | u for u in opens}
    opens.add(full)
    return frozenset(opens)


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple[str, ...]
    opens: frozenset[int]
    payloads: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.points)
        full = (1 << n) - 1
        if 0 not in self.opens or full not in self.opens:
            raise SemiringError("open family must contain the empty set and the whole space")
        ops = self.opens
        for u in ops:
            if u & ~full:
                raise SemiringError("open set mentions a point outside the space")
            for v in ops:
                if (u | v) not in ops or (u & v) not in ops:
                    raise SemiringError("open family is not closed under union and intersection")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def __repr__(self) -> str:
        return f"<FiniteSpace {len(self.points)} points, {len(self.opens)} opens>"

    def closed_sets(self) -> list[int]:
        return sorted(self.full & ~u for u in self.opens)

    def closure(self, mask: int) -> int:
        """Smallest closed superset of ``mask``."""
        best = self.full
        for u in self.opens:
            c = self.full & ~u
            if c & mask == mask:
                best &= c
        return best

    def point_closure(self, p: int) -> int:
        return self.closure(1 << p)

    def specializes(self, p: int, q: int) -> bool:
        """``p <= q``: q lies in the closure of p."""
        return bool(self.point_closure(p) >> q & 1)

    def specialization(self) -> "Poset":
        n = self.n
        cl = [self.point_closure(p) for p in range(n)]
        return Poset(self.points, tuple(tuple(bool(cl[p] >> q & 1) for q in range(n)) for p in range(n)))

    def is_discrete(self) -> bool:
        return len(self.opens) == 1 << self.n

    def open_labels(self) -> list[list[str]]:
        return sorted(
            ([self.points[i] for i in _members(u)] for u in self.opens), key=lambda s: (len(s), s)
        )

    def index(self, label: str) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise DocumentError(f"unknown point {label!r}") from None


@dataclass(frozen=True)
class Poset:
    points: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n = len(self.points)
        L = self.leq
        for a in range(n):
            if not L[a][a]:
                raise SemiringError("poset relation is not reflexive")
            for b in range(n):
                if a != b and L[a][b] and L[b][a]:
                    raise SemiringError("poset relation is not antisymmetric")
                for c in range(n):
                    if L[a][b] and L[b][c] and not L[a][c]:
                        raise SemiringError("poset relation is not transitive")

    @property
    def n(self) -> int:
        return len(self.points)

    def covers(self) -> list[tuple[int, int]]:
        n, L = self.n, self.leq
        return [
            (a, b)
            for a in range(n)
            for b in range(n)
            if a != b and L[a][b] and not any(c not in (a, b) and L[a][c] and L[c][b] for c in range(n))
        ]

    def relation(self) -> frozenset[tuple[int, int]]:
        return frozenset((a, b) for a in range(self.n) for b in range(self.n) if self.leq[a][b])


# ---------------------------------------------------------------- constructors


def space_from_subbasis(points: Sequence[str], subbasic_opens, payloads=()) -> FiniteSpace:
    points = tuple(str(p) for p in points)
    pos = {p: i for i, p in enumerate(points)}
    masks = []
    for s in subbasic_opens:
        if isinstance(s, int):
            masks.append(s)
        else:
            masks.append(_mask(pos[x] if isinstance(x, str) else x for x in s))
    return FiniteSpace(points, generate_topology(len(points), masks), tuple(payloads))


def _set_label(s, names=None) -> str:
    items = sorted(s)
    if names is not None:
        items = [names[i] for i in items]
    return "{" + ",".join(str(x) for x in items) + "}"


def hull_kernel_space(family, base=None, labels=None, names=None) -> FiniteSpace:
    """Hull-kernel topology on a family of subsets of a finite set.

    Points are the (deduplicated) family members and the subbasic opens are
    ``D(F) = {I : F not subset of I}``. Because ``D(F)`` is the union of the
    ``D({f})`` for ``f`` in ``F``, the singleton sets already generate the
    topology; :func:`hull_kernel_space_all_subsets` is the literal variant.
    """
    fam = []
    seen = set()
    for s in family:
        fs = frozenset(s)
        if fs not in seen:
            seen.add(fs)
            fam.append(fs)
    if base is None:
        base = set().union(*fam) if fam else set()
    pts = tuple(labels) if labels is not None else tuple(_set_label(s, names) for s in fam)
    if len(pts) != len(fam):
        raise SemiringError("one label per distinct family member required")
    subbasis = [_mask(i for i, s in enumerate(fam) if f not in s) for f in base]
    return FiniteSpace(pts, generate_topology(len(fam), subbasis), tuple(fam))


def hull_kernel_space_all_subsets(family, base) -> FiniteSpace:
    """Same space as :func:`hull_kernel_space`, enumerating every ``F``."""
    fam = list(dict.fromkeys(frozenset(s) for s in family))
    base = sorted(base, key=repr)
    subbasis = []
    for bits in range(1 << len(base)):
        F = {base[i] for i in range(len(base)) if bits >> i & 1}
        subbasis.append(_mask(i for i, s in enumerate(fam) if not F <= s))
    return FiniteSpace(tuple(_set_label(s) for s in fam), generate_topology(len(fam), subbasis), tuple(fam))


def space_from_poset(P: Poset) -> FiniteSpace:
    """Alexandrov space whose specialization order is ``P``: opens are downsets."""
    n = P.n
    down = [_mask(a for a in range(n) if P.leq[a][b]) for b in range(n)]
    return FiniteSpace(P.points, generate_topology(n, down))


def discrete_space(points: Sequence[str]) -> FiniteSpace:
    return space_from_subbasis(points, [[i] for i in range(len(points))])


def indiscrete_space(points: Sequence[str]) -> FiniteSpace:
    return space_from_subbasis(points, [])


def sierpinski_space() -> FiniteSpace:
    return space_from_subbasis(["0", "1"], [[0]])


# ---------------------------------------------------------------- spectrality


@dataclass(frozen=True)
class SpectralVerdict:
    spectral: bool
    reason: str
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.spectral


def is_t0(X: FiniteSpace) -> tuple[int, int] | None:
    """Returns a pair of indistinguishable points, or ``None`` when T0."""
    for p in range(X.n):
        for q in range(p + 1, X.n):
            if all(bool(u >> p & 1) == bool(u >> q & 1) for u in X.opens):
                return (p, q)
    return None


def is_spectral(X: FiniteSpace) -> SpectralVerdict:
    """Direct check of the spectral-space axioms on a finite space.

    Quasi-compactness is automatic for finite spaces, and so every open is
    quasi-compact; the basis condition then reduces to closure of the opens
    under intersection, which is verified rather than assumed.
    """
    bad = is_t0(X)
    if bad is not None:
        p, q = bad
        return SpectralVerdict(False, "not T0: points are topologically indistinguishable", (X.points[p], X.points[q]))
    for u in X.opens:
        for v in X.opens:
            if (u & v) not in X.opens:
                return SpectralVerdict(False, "quasi-compact opens not closed under intersection", (u, v))
    closed = X.closed_sets()
    closed_set = set(closed)
    cl = [X.point_closure(p) for p in range(X.n)]
    for Y in closed:
        if Y == 0:
            continue
        proper = [Z for Z in closed if Z & Y == Z and Z != Y]
        reducible = any((a | b) == Y for a in proper for b in proper)
        if reducible:
            continue
        generic = [p for p in _members(Y) if cl[p] == Y]
        if len(generic) != 1:
            return SpectralVerdict(
                False,
                f"irreducible closed set has {len(generic)} generic points",
                tuple(X.points[i] for i in _members(Y)),
            )
    assert all(c in closed_set for c in cl)
    return SpectralVerdict(True, "finite, T0, sober; all opens quasi-compact")


def patch_topology(X: FiniteSpace) -> FiniteSpace:
    v = is_spectral(X)
    if not v:
        raise SemiringError(f"patch topology needs a spectral space: {v.reason}")
    subbasis = list(X.opens) + X.closed_sets()
    P = FiniteSpace(X.points, generate_topology(X.n, subbasis), X.payloads)
    assert P.is_discrete(), "patch topology of a finite spectral space must be discrete"
    return P


# ---------------------------------------------------------------- homeomorphism


def _point_profile(X: FiniteSpace, p: int, cl: list[int]) -> tuple:
    return (
        sum(1 for u in X.opens if u >> p & 1),
        bin(cl[p]).count("1"),
        sum(1 for q in range(X.n) if cl[q] >> p & 1),
    )


def find_homeomorphism(X: FiniteSpace, Y: FiniteSpace) -> tuple[int, ...] | None:
    """Point bijection ``f`` (as ``f[p]``) carrying opens of X onto opens of Y."""
    if max(X.n, Y.n) > HOMEOMORPHISM_BOUND:
        raise SearchBoundError(f"homeomorphism search is capped at {HOMEOMORPHISM_BOUND} points")
    if X.n != Y.n or len(X.opens) != len(Y.opens):
        return None
    n = X.n
    clx = [X.point_closure(p) for p in range(n)]
    cly = [Y.point_closure(p) for p in range(n)]
    px = [_point_profile(X, p, clx) for p in range(n)]
    py = [_point_profile(Y, p, cly) for p in range(n)]
    if sorted(px) != sorted(py):
        return None
    f = [-1] * n
    used = [False] * n

    def ok(p: int) -> bool:
        for q in range(n):
            if f[q] < 0:
                continue
            if bool(clx[p] >> q & 1) != bool(cly[f[p]] >> f[q] & 1):
                return False
            if bool(clx[q] >> p & 1) != bool(cly[f[q]] >> f[p] & 1):
                return False
        return True

    def image(u: int) -> int:
        return _mask(f[i] for i in _members(u))

    def go(p: int) -> bool:
        if p == n:
            return all(image(u) in Y.opens for u in X.opens)
        for q in range(n):
            if not used[q] and py[q] == px[p]:
                f[p] = q
                used[q] = True
                if ok(p) and go(p + 1):
                    return True
                f[p] = -1
                used[q] = False
        return False

    return tuple(f) if go(0) else None


def is_homeomorphism(X: FiniteSpace, Y: FiniteSpace, f: Sequence[int]) -> bool:
    if X.n != Y.n or sorted(f) != list(range(Y.n)):
        return False
    imgs = {_mask(f[i] for i in _members(u)) for u in X.opens}
    return imgs == set(Y.opens)


def invert(f: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(f)
    for i, j in enumerate(f):
        inv[j] = i
    return tuple(inv)


# ---------------------------------------------------------------- enumeration


def _canonical_relation(n: int, rel: frozenset) -> tuple:
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted((perm[a], perm[b]) for a, b in rel))
        if best is None or key < best:
            best = key
    return best


def enumerate_posets(n: int) -> list[Poset]:
    """All posets on ``n`` points up to isomorphism (one-point extensions)."""
    if n == 0:
        return [Poset((), ())]
    classes: dict[tuple, frozenset] = {}
    for P in enumerate_posets(n - 1):
        m = n - 1
        rel = P.relation()
        for dmask in range(1 << m):
            D = _members(dmask)
            if any((c, d) in rel and not dmask >> c & 1 for d in D for c in range(m)):
                continue
            for umask in range(1 << m):
                if umask & dmask:
                    continue
                U = _members(umask)
                if any((u, c) in rel and not umask >> c & 1 for u in U for c in range(m)):
                    continue
                if any((d, u) not in rel for d in D for u in U):
                    continue
                new = set(rel) | {(m, m)} | {(d, m) for d in D} | {(m, u) for u in U}
                fr = frozenset(new)
                classes.setdefault(_canonical_relation(n, fr), fr)
    out = []
    for key in sorted(classes):
        rel = set(key)
        out.append(
            Poset(tuple(str(i) for i in range(n)), tuple(tuple((a, b) in rel for b in range(n)) for a in range(n)))
        )
    return out


def enumerate_t0_spaces(n: int) -> list[FiniteSpace]:
    """All T0 spaces on ``n`` points up to homeomorphism."""
    return [space_from_poset(P) for P in enumerate_posets(n)]


# ---------------------------------------------------------------- documents


def space_to_document(X: FiniteSpace) -> dict:
    return {"points": list(X.points), "opens": X.open_labels()}


def load_space(doc) -> FiniteSpace:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, Mapping) or "points" not in doc or "opens" not in doc:
        raise DocumentError("space document needs 'points' and 'opens'")
    points = [str(p) for p in doc["points"]]
    if len(set(points)) != len(points):
        raise DocumentError("duplicate point labels")
    pos = {p: i for i, p in enumerate(points)}
    opens = set()
    for u in doc["opens"]:
        try:
            opens.add(_mask(pos[str(p)] for p in u))
        except KeyError as exc:
            raise DocumentError(f"open set mentions unknown point {exc}") from None
    full = (1 << len(points)) - 1
    opens |= {0, full}
    return FiniteSpace(tuple(points), frozenset(opens))


def poset_to_dot(P: Poset, name: str = "G") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, p in enumerate(P.points):
        lines.append(f'  n{i} [label="{p}"];')
    for a, b in P.covers():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def space_to_dot(X: FiniteSpace, name: str = "G") -> str:
    return poset_to_dot(X.specialization(), name)
