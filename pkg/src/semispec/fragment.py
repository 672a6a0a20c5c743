"""Degree-bounded congruence fragments on the Boolean polynomial semiring B[x,y].

Congruences generated by homogeneous pairs are graded: ``(p, q)`` is related
iff every homogeneous component ``(p_d, q_d)`` is. So saturation runs one
degree at a time. A homogeneous polynomial of degree d is a bitmask over the
monomials ``x^i y^(d-i)`` (bit i), which keeps every degree-d class
computation a union-find over ``2^(d+1)`` integers.

Saturation under symmetrize / diagonal / + and * / transitivity reduces, in
the presence of the diagonal, to: base pairs of degree d are the generators
of degree d plus ``x`` and ``y`` multiples of the base pairs of degree d-1;
the degree-d classes are the union-find closure of all translates
``(u + s, v + s)`` of base pairs. Sums and products of two non-diagonal pairs
are reached through transitivity.

Everything found carries a derivation, so fragments are sound. Absence at the
degree bound is reported as ``inconclusive``, never as non-membership.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

from .semiring import BoolPoly, CapabilityError, DocumentError

MAX_DEGREE = 12


# ---------------------------------------------------------------- encoding


def _split(p: BoolPoly) -> dict[int, int]:
    """Homogeneous components of a two-variable BoolPoly as ``{degree: mask}``."""
    if p.arity != 2:
        raise CapabilityError("fragments are implemented for B[x,y] (arity 2) only")
    out: dict[int, int] = {}
    for i, j in p.monomials:
        out[i + j] = out.get(i + j, 0) | (1 << i)
    return out


def _poly(d: int, mask: int) -> BoolPoly:
    return BoolPoly(2, tuple((i, d - i) for i in range(d + 1) if mask >> i & 1))


def _mask_mul(d1: int, m1: int, d2: int, m2: int) -> int:
    out = 0
    for i in range(d1 + 1):
        if m1 >> i & 1:
            out |= m2 << i
    return out


def _show(d: int, mask: int) -> str:
    return str(_poly(d, mask))


def parse_bool_poly(text: str, arity: int = 2) -> BoolPoly:
    """Parse ``"x^4 + y^4"``, ``"x^2y^2"``, ``"xy"``, ``"1"`` or ``"0"``."""
    names = "xyzuvw"[:arity]
    text = text.replace(" ", "").replace("*", "")
    if text in ("", "0"):
        return BoolPoly.zero(arity)
    mons = []
    for term in text.split("+"):
        e = [0] * arity
        if term != "1":
            pos = 0
            for m in re.finditer(r"([a-z])(?:\^(\d+))?", term):
                if m.start() != pos or m.group(1) not in names:
                    raise DocumentError(f"cannot parse monomial {term!r}")
                e[names.index(m.group(1))] += int(m.group(2) or 1)
                pos = m.end()
            if pos != len(term):
                raise DocumentError(f"cannot parse monomial {term!r}")
        mons.append(tuple(e))
    return BoolPoly(arity, tuple(mons))


# ---------------------------------------------------------------- saturation


@dataclass
class _Degree:
    d: int
    parent: list[int]
    # base pairs (u, v, reason); reason is ("gen", text) or ("mul", var, index)
    base: list[tuple[int, int, tuple]] = field(default_factory=list)
    # merge edges: (a, b, base index, translate s)
    edges: list[tuple[int, int, int, int]] = field(default_factory=list)

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a


@dataclass
class CongruenceFragment:
    """Saturated pairs of a graded congruence on B[x,y] up to a degree bound."""

    generators: list[tuple[BoolPoly, BoolPoly]]
    degree_bound: int
    degrees: list[_Degree]
    label: str = ""
    complete_generators: bool = True

    def related(self, d: int, a: int, b: int) -> bool:
        D = self.degrees[d]
        return D.find(a) == D.find(b)

    def class_of(self, p: BoolPoly) -> list[BoolPoly]:
        """Proven partners of a homogeneous polynomial (itself included)."""
        comps = _split(p)
        if len(comps) > 1:
            raise CapabilityError("class_of needs a homogeneous polynomial")
        if not comps:
            raise CapabilityError("use zero_class(d) for the zero polynomial")
        (d, m), = comps.items()
        if d > self.degree_bound:
            return [p]
        D = self.degrees[d]
        r = D.find(m)
        return [_poly(d, k) for k in range(1 << (d + 1)) if D.find(k) == r]

    def class_count(self, d: int) -> int:
        D = self.degrees[d]
        return len({D.find(k) for k in range(1 << (d + 1))})

    def pair_count(self, d: int) -> int:
        """Number of related ordered pairs in degree d (diagonal included)."""
        D = self.degrees[d]
        sizes: dict[int, int] = {}
        for k in range(1 << (d + 1)):
            r = D.find(k)
            sizes[r] = sizes.get(r, 0) + 1
        return sum(s * s for s in sizes.values())

    def _explain_base(self, d: int, idx: int) -> list[str]:
        u, v, why = self.degrees[d].base[idx]
        head = f"({_show(d, u)}, {_show(d, v)})"
        if why[0] == "gen":
            return [f"{head}  [generator {why[1]}]"]
        _, var, parent = why
        return self._explain_base(d - 1, parent) + [f"{head}  [multiply by {var}]"]

    @staticmethod
    def _translate_line(d: int, u: int, v: int, s: int, a: int, b: int) -> list[str]:
        out = []
        if s:
            out.append(f"({_show(d, u | s)}, {_show(d, v | s)})  [add ({_show(d, s)}, {_show(d, s)})]")
        if (u | s, v | s) != (a, b):
            out.append(f"({_show(d, a)}, {_show(d, b)})  [symmetry]")
        return out

    def derivation(self, d: int, a: int, b: int) -> list[str] | None:
        """Chain of justified steps from ``a`` to ``b`` in degree d."""
        if a == b:
            return [f"({_show(d, a)}, {_show(d, a)})  [diagonal]"]
        D = self.degrees[d]
        if D.find(a) != D.find(b):
            return None
        # a single translate of a base pair needs the translate a & b
        t = a & b
        for bi, (u, v, _) in enumerate(D.base):
            if (u | t, v | t) in ((a, b), (b, a)):
                return self._explain_base(d, bi) + self._translate_line(d, u, v, t, a, b)
        adj: dict[int, list[tuple[int, int]]] = {}
        for k, (x, y, _, _) in enumerate(D.edges):
            adj.setdefault(x, []).append((y, k))
            adj.setdefault(y, []).append((x, k))
        prev: dict[int, tuple[int, int]] = {a: (a, -1)}
        q = deque([a])
        while q:
            x = q.popleft()
            if x == b:
                break
            for y, k in adj.get(x, ()):
                if y not in prev:
                    prev[y] = (x, k)
                    q.append(y)
        steps = []
        x = b
        while x != a:
            px, k = prev[x]
            steps.append(k)
            x = px
        out: list[str] = []
        for k in reversed(steps):
            u, v, bi, s = D.edges[k]
            out.extend(self._explain_base(d, bi))
            bu, bv, _ = D.base[bi]
            out.extend(self._translate_line(d, bu, bv, s, bu | s, bv | s))
        out.append(f"({_show(d, a)}, {_show(d, b)})  [transitivity over {len(steps)} step(s)]")
        return out


def _saturate(gens_by_degree: dict[int, list[tuple[int, int, str]]], bound: int) -> list[_Degree]:
    degrees: list[_Degree] = []
    for d in range(bound + 1):
        D = _Degree(d, list(range(1 << (d + 1))))
        if d > 0:
            for k, (u, v, _) in enumerate(degrees[d - 1].base):
                D.base.append((u << 1, v << 1, ("mul", "x", k)))
                D.base.append((u, v, ("mul", "y", k)))
        for u, v, text in gens_by_degree.get(d, []):
            D.base.append((u, v, ("gen", text)))
        # drop diagonal and duplicate base pairs, keeping the first derivation
        seen = set()
        kept = []
        for u, v, why in D.base:
            key = (min(u, v), max(u, v))
            if u != v and key not in seen:
                seen.add(key)
                kept.append((u, v, why))
        D.base = kept
        full = 1 << (d + 1)
        for bi, (u, v, _) in enumerate(D.base):
            # the closure so far is translation invariant, so a base pair whose
            # ends are already related contributes nothing new
            if D.find(u) == D.find(v):
                continue
            for s in range(full):
                a, b = u | s, v | s
                ra, rb = D.find(a), D.find(b)
                if ra != rb:
                    D.parent[ra] = rb
                    D.edges.append((a, b, bi, s))
        degrees.append(D)
    return degrees


def _homogeneous_pair(p: BoolPoly, q: BoolPoly) -> tuple[int, int, int]:
    cp, cq = _split(p), _split(q)
    ds = set(cp) | set(cq)
    if len(ds) != 1 or not p or not q:
        raise CapabilityError(
            f"fragment generators must be pairs of nonzero homogeneous polynomials of equal degree, got ({p}, {q})"
        )
    d = ds.pop()
    return d, cp[d], cq[d]


def fragment_saturate(seeds, degree_bound: int, label: str = "") -> CongruenceFragment:
    """Saturate the congruence generated by homogeneous ``seeds`` up to ``degree_bound``."""
    if degree_bound > MAX_DEGREE:
        raise CapabilityError(f"degree bound {degree_bound} exceeds {MAX_DEGREE}")
    gens: dict[int, list[tuple[int, int, str]]] = {}
    pairs = []
    for p, q in seeds:
        p = parse_bool_poly(p) if isinstance(p, str) else p
        q = parse_bool_poly(q) if isinstance(q, str) else q
        d, u, v = _homogeneous_pair(p, q)
        if d > degree_bound:
            raise CapabilityError(f"seed degree {d} exceeds the bound {degree_bound}")
        gens.setdefault(d, []).append((u, v, f"({p}, {q})"))
        pairs.append((p, q))
    return CongruenceFragment(pairs, degree_bound, _saturate(gens, degree_bound), label)


def _monomial_partners(F: CongruenceFragment, d: int) -> list[int]:
    """For each monomial bit i of degree d, the mask of monomials related to it."""
    return [sum(1 << j for j in range(d + 1) if F.related(d, 1 << i, 1 << j)) for i in range(d + 1)]


def _decomposes(F: CongruenceFragment, d: int) -> bool:
    """Is every related pair of degree d a sum of related monomial pairs?

    ``(p, q)`` is such a sum iff every monomial of p has a partner in q and
    vice versa; within one class this is checked once per monomial.
    """
    part = _monomial_partners(F, d)
    D = F.degrees[d]
    classes: dict[int, list[int]] = {}
    for k in range(1 << (d + 1)):
        classes.setdefault(D.find(k), []).append(k)
    for members in classes.values():
        if len(members) == 1:
            continue
        if 0 in members:
            return False
        used = 0
        for p in members:
            used |= p
        for i in range(d + 1):
            if used >> i & 1 and any(not part[i] & q for q in members):
                return False
    return True


def product_fragment(C: CongruenceFragment, D: CongruenceFragment, degree_bound: int) -> CongruenceFragment:
    """Fragment of the product congruence ``CD`` up to ``degree_bound``.

    Generators are twisted products ``(m, n) . (m', n')`` of monomial pairs
    proven in C and D. Twisted products are additive in each argument, so
    when every pair of C and D is a componentwise sum of related monomial
    pairs these generate all of ``CD`` in the bounded degrees; that condition
    is checked and reported in ``complete_generators``. Either way every
    generator lies in ``CD``.
    """
    if degree_bound > min(C.degree_bound, D.degree_bound) * 2 or degree_bound > MAX_DEGREE:
        raise CapabilityError("factor fragments are too shallow for this bound")
    gens: dict[int, list[tuple[int, int, str]]] = {}
    seen = set()
    complete = all(_decomposes(C, i) for i in range(min(C.degree_bound, degree_bound) + 1))
    complete &= all(_decomposes(D, j) for j in range(min(D.degree_bound, degree_bound) + 1))
    for i in range(min(C.degree_bound, degree_bound) + 1):
        pc = _monomial_partners(C, i)
        for j in range(min(D.degree_bound, degree_bound - i) + 1):
            pd = _monomial_partners(D, j)
            for a in range(i + 1):
                for b in range(i + 1):
                    if not pc[a] >> b & 1:
                        continue
                    for e in range(j + 1):
                        for f in range(j + 1):
                            if not pd[e] >> f & 1:
                                continue
                            first = (1 << (a + e)) | (1 << (b + f))
                            second = (1 << (a + f)) | (1 << (b + e))
                            if first == second:
                                continue
                            key = (i + j, min(first, second), max(first, second))
                            if key in seen:
                                continue
                            seen.add(key)
                            m, n = _poly(i, 1 << a), _poly(i, 1 << b)
                            m2, n2 = _poly(j, 1 << e), _poly(j, 1 << f)
                            gens.setdefault(i + j, []).append(
                                (first, second, f"({m}, {n}) *t ({m2}, {n2})")
                            )
    label = f"{C.label or 'C'}{D.label or 'D'}"
    F = CongruenceFragment([], degree_bound, _saturate(gens, degree_bound), label, complete)
    return F


def cd_example(degree_bound: int = 8) -> CongruenceFragment:
    """``CD`` for ``C = D = <(x, y)>`` on B[x,y]."""
    C = fragment_saturate([("x", "y")], degree_bound, label="C")
    return product_fragment(C, C, degree_bound)


# ---------------------------------------------------------------- membership


@dataclass(frozen=True)
class Membership:
    verdict: str  # "proven" or "inconclusive"
    pair: tuple[str, str]
    trace: tuple[str, ...] = ()
    reason: str = ""

    @property
    def proven(self) -> bool:
        return self.verdict == "proven"

    def to_document(self) -> dict:
        return {"pair": list(self.pair), "verdict": self.verdict, "trace": list(self.trace), "reason": self.reason}


def fragment_member(F: CongruenceFragment, pair) -> Membership:
    """``proven`` with a derivation, or ``inconclusive``; never a refutation."""
    p, q = pair
    p = parse_bool_poly(p) if isinstance(p, str) else p
    q = parse_bool_poly(q) if isinstance(q, str) else q
    shown = (str(p), str(q))
    cp, cq = _split(p), _split(q)
    trace: list[str] = []
    for d in sorted(set(cp) | set(cq)):
        a, b = cp.get(d, 0), cq.get(d, 0)
        if d > F.degree_bound:
            return Membership("inconclusive", shown, reason=f"degree {d} exceeds the bound {F.degree_bound}")
        steps = F.derivation(d, a, b)
        if steps is None:
            return Membership(
                "inconclusive", shown, reason=f"not found in degree {d} of the fragment at bound {F.degree_bound}"
            )
        trace.extend(steps)
    if len(set(cp) | set(cq)) > 1:
        trace.append(f"({p}, {q})  [sum of homogeneous components]")
    return Membership("proven", shown, tuple(trace))


def partners_scan(F: CongruenceFragment, p: BoolPoly) -> list[BoolPoly]:
    """Every ``q != p`` with ``(p, q)`` proven, over all degrees within the bound.

    ``p`` must be homogeneous of degree d. Partners are the rest of p's class
    in degree d, plus ``p + z`` for any nonzero z related to 0 in another
    degree (a graded congruence relates components independently).
    """
    comps = _split(p)
    if len(comps) != 1:
        raise CapabilityError("partners_scan needs a nonzero homogeneous polynomial")
    (d, m), = comps.items()
    if d > F.degree_bound:
        raise CapabilityError(f"degree {d} exceeds the bound {F.degree_bound}")
    out = []
    for e in range(F.degree_bound + 1):
        D = F.degrees[e]
        own = m if e == d else 0
        r = D.find(own)
        for k in range(1 << (e + 1)):
            if k != own and D.find(k) == r:
                out.append(_poly(d, m) + _poly(e, k) if e != d else _poly(e, k))
    return out


def fragment_to_document(F: CongruenceFragment) -> dict:
    return {
        "label": F.label,
        "degree_bound": F.degree_bound,
        "generators": [[str(p), str(q)] for p, q in F.generators]
        or [why[1] for D in F.degrees for _, _, why in D.base if why[0] == "gen"],
        "complete_generators": F.complete_generators,
        "classes_per_degree": [F.class_count(d) for d in range(F.degree_bound + 1)],
    }
