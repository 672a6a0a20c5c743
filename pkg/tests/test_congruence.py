from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semispec.congruence import (
    CongruenceRel,
    PairElement,
    componentwise_product,
    congruence_product,
    congruence_space,
    diagonal,
    enumerate_congruences,
    enumerate_congruences_brute,
    full,
    generalized_powers,
    generate_congruence,
    generate_congruence_oracle,
    is_congruence,
    is_prime_by_quotient,
    is_prime_congruence,
    kernel,
    kernel_is_k_ideal,
    load_congruence,
    congruence_to_document,
    pair_sum,
    prime_congruence_witness,
    prime_congruences,
    quotient,
    radical_congruence,
    spec_c,
    twisted_power,
    twisted_product,
)
from semispec.ideals import IdealSet, enumerate_ideals, k_closure
from semispec.semiring import BoolPoly, SemiringError, TropElem
from semispec.topology import is_spectral

from conftest import CORPUS, CORPUS4


def C_(S, text):
    """'0,a|1' -> partition."""
    return CongruenceRel.from_classes(S, [blk.split(",") for blk in text.split("|")])


def lab(S, *names):
    return tuple(S.index(n) for n in names)


# ------------------------------------------------------------- generation


def test_generation_examples(chain3, N3, S):
    assert str(generate_congruence(chain3, [("a", "1")])) == "{0}{a,1}"
    assert generate_congruence(S, []) == diagonal(S)
    assert generate_congruence(N3, [("a", "1")]).is_full


def _seeds(S, size):
    pairs = [(a, b) for a in S.elements for b in S.elements if a < b]
    for k in range(size + 1):
        yield from combinations(pairs, k)


@pytest.mark.parametrize("method", ["recipe", "unary"])
def test_generation_matches_intersection_oracle(S, method):
    for seed in _seeds(S, 2):
        assert generate_congruence(S, seed, method=method) == generate_congruence_oracle(S, seed)


def _single_pass(S, seed):
    """Symmetrize, add the diagonal, close under + and * in A x A, then take
    the transitive closure, once."""
    R = set(seed) | {(b, a) for a, b in seed} | {(a, a) for a in S.elements}
    while True:
        new = {(S.add[a][c], S.add[b][d]) for (a, b) in R for (c, d) in R}
        new |= {(S.mul[a][c], S.mul[b][d]) for (a, b) in R for (c, d) in R}
        if new <= R:
            break
        R |= new
    while True:
        new = {(a, d) for (a, b) in R for (c, d) in R if b == c}
        if new <= R:
            return R
        R |= new


def test_recipe_needs_one_pass():
    for S in CORPUS4:
        for seed in _seeds(S, 1):
            R = _single_pass(S, seed)
            C = CongruenceRel.from_pairs(S, R)
            assert C.pairs == frozenset(R)
            assert C == generate_congruence_oracle(S, seed)


def test_enumeration_matches_bell_scan(S4):
    assert enumerate_congruences(S4) == enumerate_congruences_brute(S4)


def test_partitions_count():
    from semispec.congruence import _partitions

    assert [sum(1 for _ in _partitions(n)) for n in range(6)] == [1, 1, 2, 5, 15, 52]


# ------------------------------------------------------------- twisted product


def test_twisted_product_examples():
    t = twisted_product((TropElem(3), TropElem(1)), (TropElem(2), TropElem(0)))
    assert t == PairElement(TropElem(5), TropElem(3))
    x, y = BoolPoly.var(2, 0), BoolPoly.var(2, 1)
    assert twisted_product((x, y), (x, y)) == PairElement(x * x + y * y, x * y)


def test_twisted_product_of_diagonal_pair_is_diagonal(S):
    for a, b, c in product(S.elements, repeat=3):
        assert twisted_product((a, a), (b, c), S).is_diagonal


pair_inputs = st.sampled_from(CORPUS4).flatmap(
    lambda S: st.tuples(
        st.just(S),
        *[st.tuples(st.integers(0, S.n - 1), st.integers(0, S.n - 1)) for _ in range(3)],
    )
)


@given(pair_inputs)
def test_twisted_product_commutative_associative(data):
    S, x, y, z = data
    assert twisted_product(x, y, S) == twisted_product(y, x, S)
    assert twisted_product(twisted_product(x, y, S), z, S) == twisted_product(x, twisted_product(y, z, S), S)


@given(pair_inputs, st.integers(1, 3))
def test_pair_power_identity(data, n):
    S, a, b, _ = data
    lhs = twisted_power(pair_sum(a, b, S), n, S)
    rhs = PairElement(S.zero, S.zero)
    for i in range(n + 1):
        rhs = pair_sum(rhs, twisted_product(twisted_power(a, i, S), twisted_power(b, n - i, S), S), S)
    assert lhs == rhs


rats = st.fractions(min_value=-9, max_value=9, max_denominator=6).map(TropElem)


@given(rats, rats, rats, rats)
def test_tropical_twisted_commutes(a, b, c, d):
    assert twisted_product((a, b), (c, d)) == twisted_product((c, d), (a, b))


# ------------------------------------------------------------- products


def test_product_examples(B, chain3):
    assert congruence_product(diagonal(B), diagonal(B)) == diagonal(B)
    C = generate_congruence(chain3, [("a", "1")])
    # every twisted product with a factor in C has C-related components
    assert congruence_product(C, full(chain3)) == C
    assert congruence_product(full(chain3), full(chain3)).is_full
    P = congruence_product(C, C)
    gens = {tuple(twisted_product(c, d, chain3)) for c in C.pairs for d in C.pairs}
    assert P == generate_congruence_oracle(chain3, gens)


def test_products_agree_across_methods(S):
    congs = enumerate_congruences(S)
    for C in congs:
        for D in congs:
            assert congruence_product(C, D) == congruence_product(C, D, method="recipe")
            assert congruence_product(C, D) == congruence_product(D, C)
            assert congruence_product(C, D) <= C.meet(D)
            assert componentwise_product(C, D).is_compatible


# ------------------------------------------------------------- primes


def test_prime_examples(B, chain3):
    assert is_prime_congruence(B, diagonal(B))
    assert not is_prime_congruence(chain3, diagonal(chain3))
    assert not is_prime_by_quotient(chain3, diagonal(chain3))
    assert prime_congruence_witness(chain3, diagonal(chain3)) is not None
    assert is_prime_congruence(chain3, C_(chain3, "0,a|1"))


def test_prime_definitions_agree(S4):
    for C in enumerate_congruences(S4):
        assert is_prime_congruence(S4, C) == is_prime_by_quotient(S4, C)


def test_prime_requires_idempotent():
    Z2 = __import__("semispec.semiring", fromlist=["FiniteSemiring"]).FiniteSemiring.from_tables(
        "01", [[0, 1], [1, 0]], [[0, 0], [0, 1]], 0, 1
    )
    with pytest.raises(SemiringError):
        is_prime_congruence(Z2, diagonal(Z2))


def test_spec_c_examples(B, chain3, D):
    assert spec_c(B).n == 1
    assert sorted(spec_c(chain3).points) == ["{0,a}{1}", "{0}{a,1}"]
    assert sorted(spec_c(D).points) == ["{0,a}{b,1}", "{0,b}{a,1}"]


def test_congruence_spaces_spectral(S4):
    congs = enumerate_congruences(S4)
    assert is_spectral(congruence_space(S4, congs))
    assert is_spectral(congruence_space(S4, [C for C in congs if not C.is_full]))
    assert is_spectral(spec_c(S4))


def test_prime_quotients_are_boolean(S4):
    for P in prime_congruences(S4):
        Q, _ = quotient(S4, P)
        assert Q.n == 2


# ------------------------------------------------------------- kernels


def test_kernel_examples(chain3, S):
    assert kernel(diagonal(chain3)) == IdealSet.of(chain3, ["0"])
    assert kernel(C_(chain3, "0,a|1")) == IdealSet.of(chain3, ["0", "a"])
    assert kernel(full(S)) == IdealSet.whole(S)


def test_kernels_are_k_ideals(S4):
    for C in enumerate_congruences(S4):
        assert kernel_is_k_ideal(C)


def test_kernel_of_generated_is_k_closure(S4):
    for J in enumerate_ideals(S4):
        C = generate_congruence(S4, [(a, S4.zero) for a in J.members], method="unary")
        assert kernel(C) == k_closure(S4, J)


# ------------------------------------------------------------- radicals


def test_generalized_power_examples(N3, chain3, S):
    a, z = N3.index("a"), N3.zero
    alpha = (a, z)
    assert twisted_power(alpha, 2, N3) == PairElement(z, z)
    assert PairElement(z, z) in generalized_powers(N3, alpha, 1, 2)
    gp = generalized_powers(chain3, lab(chain3, "a", "1"), 4, 4)
    assert not any(g.is_diagonal for g in gp)
    for x in S.elements:
        assert all(g.is_diagonal for g in generalized_powers(S, (x, x), 3, 3))


def test_radical_examples(D, N3, S4):
    assert radical_congruence(D, diagonal(D)) == diagonal(D)
    assert str(radical_congruence(N3, diagonal(N3))) == "{0,a}{1}"
    assert radical_congruence(N3, diagonal(N3), method="gp") == radical_congruence(N3, diagonal(N3))
    for P in prime_congruences(S4):
        assert radical_congruence(S4, P) == P


def test_radical_methods_agree(S4):
    for C in enumerate_congruences(S4):
        assert radical_congruence(S4, C, method="gp") == radical_congruence(S4, C)


def test_radical_gp_with_m_zero_agrees(S):
    for C in enumerate_congruences(S):
        bound = S.n * S.n + 1
        keep = [(a, b) for a in S.elements for b in S.elements
                if any(g in C for g in generalized_powers(S, (a, b), bound, bound, m_min=0))]
        assert CongruenceRel.from_pairs(S, keep) == radical_congruence(S, C)


def test_radical_closure_axioms(S4):
    congs = enumerate_congruences(S4)
    rad = {C: radical_congruence(S4, C) for C in congs}
    for C in congs:
        assert C <= rad[C] and radical_congruence(S4, rad[C]) == rad[C]
        for D in congs:
            if C <= D:
                assert rad[C] <= rad[D]


# ------------------------------------------------------------- documents


def test_congruence_document_round_trip(S):
    for C in enumerate_congruences(S):
        assert load_congruence(S, congruence_to_document(C)) == C


def test_incompatible_partition_rejected(chain3):
    assert not is_congruence(chain3, (0, 1, 0))
    with pytest.raises(SemiringError):
        load_congruence(chain3, [["0", "1"], ["a"]])
