import json
from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semispec.corpus import enumerate_semirings, named
from semispec.semiring import (
    AxiomViolation,
    BoolPoly,
    DocumentError,
    FiniteSemiring,
    SemiringError,
    TropElem,
    canonical_leq,
    check_homomorphism,
    classify,
    find_isomorphism,
    is_isomorphic,
    load_finite_semiring,
    semiring_to_document,
    trop,
)

from conftest import CORPUS4



X, Y = BoolPoly.var(2, 0), BoolPoly.var(2, 1)


# ------------------------------------------------------------- loading


def test_load_boolean_tables():
    doc = {
        "elements": ["0", "1"],
        "zero": "0",
        "one": "1",
        "add": [["0", "1"], ["1", "1"]],
        "mul": [["0", "0"], ["0", "1"]],
    }
    S = load_finite_semiring(doc)
    assert is_isomorphic(S, named("B"))


def test_load_from_json_text_round_trip(D):
    text = json.dumps(semiring_to_document(D))
    assert load_finite_semiring(text) == D


def test_trivial_allows_zero_equal_one():
    S = load_finite_semiring({"elements": ["0"], "zero": "0", "one": "0", "add": [["0"]], "mul": [["0"]]})
    assert S.n == 1


def test_distributivity_violation_names_triple():
    # 0 < 1 < 2 under max; multiplication keeps 1 as unit but 2*2 = 1 breaks (1+2)*2 = 1*2 + 2*2
    doc = {
        "elements": ["0", "1", "2"],
        "zero": "0",
        "one": "1",
        "add": [["0", "1", "2"], ["1", "1", "2"], ["2", "2", "2"]],
        "mul": [["0", "0", "0"], ["0", "1", "2"], ["0", "2", "0"]],
    }
    with pytest.raises(AxiomViolation) as err:
        load_finite_semiring(doc)
    assert err.value.axiom.startswith("distributivity")
    assert len(err.value.witness) == 3


@pytest.mark.parametrize("bad", ["{", "[]", '{"elements": ["0"]}'])
def test_malformed_documents(bad):
    with pytest.raises(DocumentError):
        load_finite_semiring(bad)


def test_zero_equal_one_rejected_for_n2():
    doc = {"elements": ["0", "1"], "zero": "0", "one": "0", "add": [["0", "1"], ["1", "1"]],
           "mul": [["0", "0"], ["0", "1"]]}
    with pytest.raises(SemiringError):
        load_finite_semiring(doc)


# ------------------------------------------------------------- classify


def test_classify_boolean_all_true(B):
    r = classify(B)
    assert all(getattr(r, f) for f in r.__dataclass_fields__)


def test_classify_chain3(chain3):
    r = classify(chain3)
    assert r.idempotent and r.idealic and r.radical_idealic and r.totally_ordered
    assert not r.cancellative


def test_classify_n3(N3):
    r = classify(N3)
    assert r.idempotent and r.idealic and r.totally_ordered and r.freshman_dream
    assert not r.radical_idealic and not r.integral


def test_classify_u3_not_idealic(U3):
    r = classify(U3)
    assert r.idempotent and not r.idealic


def test_property_implications(S4):
    r = classify(S4)
    assert not r.radical_idealic or r.idealic
    assert not r.idealic or r.idempotent
    assert not r.cancellative or r.integral
    assert not r.totally_ordered or r.freshman_dream


# ------------------------------------------------------------- order


def test_canonical_leq_examples(B, chain3, D):
    assert canonical_leq(B, "0", "1")
    assert canonical_leq(chain3, "a", "1") and not canonical_leq(chain3, "1", "a")
    assert not canonical_leq(D, "a", "b") and not canonical_leq(D, "b", "a")


def test_canonical_leq_rejects_non_idempotent():
    Z3 = FiniteSemiring.from_tables(
        "012", [[(a + b) % 3 for b in range(3)] for a in range(3)],
        [[(a * b) % 3 for b in range(3)] for a in range(3)], 0, 1,
    )
    with pytest.raises(SemiringError):
        canonical_leq(Z3, 0, 1)


def test_canonical_order_is_compatible_partial_order(S4):
    els = S4.elements
    le = S4.leq
    assert all(le(a, a) for a in els)
    assert all(a == b for a in els for b in els if le(a, b) and le(b, a))
    assert all(le(a, c) for a in els for b in els for c in els if le(a, b) and le(b, c))
    assert all(le(S4.zero, a) for a in els)
    assert all(le(S4.mul[a][c], S4.mul[b][c]) for a in els for b in els for c in els if le(a, b))


# ------------------------------------------------------------- homomorphisms


def test_homomorphism_examples(B, chain3):
    assert check_homomorphism({"0": "0", "1": "1"}, B, chain3)
    assert check_homomorphism({"0": "0", "a": "1", "1": "1"}, chain3, B)
    # collapsing a to 0 is still a homomorphism of chain3 onto B
    assert check_homomorphism({"0": "0", "a": "0", "1": "1"}, chain3, B)


def test_non_homomorphism(N3, B):
    # a*a = 0 in N3 but 1*1 = 1 in B
    assert not check_homomorphism({"0": "0", "a": "1", "1": "1"}, N3, B)


def test_isomorphism_search_on_relabelling(D):
    T = D.relabel([0, 2, 1, 3])
    f = find_isomorphism(D, T)
    assert f is not None and check_homomorphism(f, D, T)
    assert not is_isomorphic(named("chain3"), named("N3"))


# ------------------------------------------------------------- identities on the corpus


def test_binomial_identity(S4):
    P = S4.power
    for a in S4.elements:
        for b in S4.elements:
            s = S4.add[a][b]
            for m in range(1, 4):
                for n in range(1, 4):
                    lhs = P(s, m + n)
                    rhs = S4.add[S4.mul[P(a, m)][P(s, n)]][S4.mul[P(b, n)][P(s, m)]]
                    assert lhs == rhs


def test_freshman_dream_on_cancellative_members():
    for S in CORPUS4:
        if not classify(S).cancellative:
            continue
        for a in S.elements:
            for b in S.elements:
                for n in range(1, 5):
                    assert S.power(S.add[a][b], n) == S.add[S.power(a, n)][S.power(b, n)]


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
trops = st.one_of(st.just(TropElem.bottom()), rationals.map(TropElem))


@given(trops, trops, st.integers(1, 4))
def test_tropical_freshman_dream(a, b, n):
    assert (a + b) ** n == a ** n + b ** n


def test_tropical_units():
    t = trop("3/2")
    assert t.value == Fraction(3, 2)
    assert t * TropElem.unit() == t and t + TropElem.bottom() == t
    assert (t * TropElem.bottom()).is_bottom
    assert trop(1) + trop(2) == trop(2)


# ------------------------------------------------------------- B[x, y]


def test_bool_poly_examples():
    assert (X ** 2 + Y ** 2) * (X * Y) == X ** 3 * Y + X * Y ** 3
    p = X + Y * Y
    assert p + p == p
    assert (X + Y) ** 2 == X ** 2 + X * Y + Y ** 2
    assert X <= X + Y and not (X + Y) <= X


def test_bool_poly_arity_mismatch():
    with pytest.raises(ValueError):
        BoolPoly.var(2, 0) + BoolPoly.var(3, 0)


def test_bool_poly_canonical_form():
    p = BoolPoly(2, [(1, 0), (0, 1), (1, 0)])
    assert p.monomials == ((0, 1), (1, 0))


@st.composite
def polys(draw, arity):
    mons = draw(st.lists(st.tuples(*[st.integers(0, 6)] * arity), max_size=5))
    return BoolPoly(arity, [m for m in mons if sum(m) <= 6])


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(polys(k), polys(k), polys(k))))
def test_bool_poly_laws(pqr):
    p, q, r = pqr
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * BoolPoly.one(p.arity) == p
    assert p * BoolPoly.zero(p.arity) == BoolPoly.zero(p.arity)


# ------------------------------------------------------------- enumeration oracle


def _brute_census(n):
    """Commutative idempotent semirings on {0..n-1} with 0 = zero, 1 = one,
    from raw table search; deduplicated by a separately written canonical form."""
    if n == 1:
        return 1
    free_add = [(a, b) for a in range(1, n) for b in range(a + 1, n)]
    free_mul = [(a, b) for a in range(2, n) for b in range(a, n)]
    seen = set()
    for av in product(range(n), repeat=len(free_add)):
        add = [[0] * n for _ in range(n)]
        for a in range(n):
            add[0][a] = add[a][0] = a
            add[a][a] = a
        for (a, b), v in zip(free_add, av):
            add[a][b] = add[b][a] = v
        if any(add[add[a][b]][c] != add[a][add[b][c]] for a, b, c in product(range(n), repeat=3)):
            continue
        for mv in product(range(n), repeat=len(free_mul)):
            mul = [[0] * n for _ in range(n)]
            for a in range(n):
                mul[1][a] = mul[a][1] = a
            mul[0] = [0] * n
            for a in range(n):
                mul[a][0] = 0
            for (a, b), v in zip(free_mul, mv):
                mul[a][b] = mul[b][a] = v
            ok = all(
                mul[mul[a][b]][c] == mul[a][mul[b][c]] and mul[add[a][b]][c] == add[mul[a][c]][mul[b][c]]
                for a, b, c in product(range(n), repeat=3)
            )
            if not ok:
                continue
            keys = []
            for rest in permutations(range(2, n)):
                perm = [0, 1, *rest]
                inv = [perm.index(i) for i in range(n)]
                keys.append((
                    tuple(tuple(perm[add[inv[i]][inv[j]]] for j in range(n)) for i in range(n)),
                    tuple(tuple(perm[mul[inv[i]][inv[j]]] for j in range(n)) for i in range(n)),
                ))
            seen.add(min(keys))
    return len(seen)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 3), (4, 16)])
def test_enumeration_counts_match_table_oracle(n, count):
    assert len(enumerate_semirings(n)) == count
    assert _brute_census(n) == count


def test_enumerated_members_pairwise_non_isomorphic():
    for n in (3, 4):
        keys = [S.canonical_key() for S in enumerate_semirings(n)]
        assert len(set(keys)) == len(keys)
