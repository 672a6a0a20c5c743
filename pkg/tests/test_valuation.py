import pytest
from hypothesis import given
from hypothesis import strategies as st

from semispec.congruence import CongruenceRel, diagonal, prime_congruences, spec_c
from semispec.ideals import spec_k
from semispec.semiring import TropElem
from semispec.topology import is_spectral
from semispec.valuation import (
    NotPrime,
    equivalent,
    indistinguishable_points_equal,
    is_semifield,
    kernel_congruence,
    spv,
    spv_topology,
    support,
    valuation_axioms,
    valuation_from_prime,
    valuation_order,
    valuation_to_document,
    verify_spv_bijection,
)


def C_(S, *blocks):
    return CongruenceRel.from_classes(S, blocks)


def test_valuation_examples(chain3, B):
    v = valuation_from_prime(chain3, C_(chain3, ["0", "a"], ["1"]))
    assert v.quotient.n == 2 and v.value_label("a") == v.value_label("0")
    w = valuation_from_prime(chain3, C_(chain3, ["0"], ["a", "1"]))
    assert w.value_label("a") == w.value_label("1")
    u = valuation_from_prime(B, diagonal(B))
    assert list(u.map) == [0, 1]


def test_non_prime_rejected(chain3):
    with pytest.raises(NotPrime):
        valuation_from_prime(chain3, diagonal(chain3))


def test_kernel_round_trip_examples(chain3, B):
    C = C_(chain3, ["0", "a"], ["1"])
    assert kernel_congruence(valuation_from_prime(chain3, C)) == C
    assert kernel_congruence(valuation_from_prime(B, diagonal(B))) == diagonal(B)


@given(st.one_of(st.just(TropElem.bottom()), st.fractions(-10, 10).map(TropElem)))
def test_support_valuation(t):
    assert support(t) == (0 if t.is_bottom else 1)


@given(st.fractions(-10, 10).map(TropElem), st.fractions(-10, 10).map(TropElem))
def test_support_is_multiplicative_and_max(a, b):
    assert support(a * b) == support(a) * support(b)
    assert support(a + b) == max(support(a), support(b))
    assert support(a * TropElem.bottom()) == 0


def test_spv_counts(B, chain3, D):
    assert len(spv(B)) == 1
    assert len(spv(chain3)) == 2
    assert len(spv(D)) == 2
    assert len(spv(D)) == spec_c(D).n


def test_spv_bijection(S4):
    assert len(spv(S4)) == spec_c(S4).n == len(prime_congruences(S4))
    assert verify_spv_bijection(S4)


def test_axioms_and_semifield(S4):
    for v in spv(S4):
        assert valuation_axioms(v) == []
        assert is_semifield(v.quotient) and v.quotient.n == 2
        assert v.tropical(S4.zero).is_bottom and v.tropical(S4.one) == TropElem.unit()


def test_order_examples(chain3, B):
    w = valuation_from_prime(chain3, C_(chain3, ["0"], ["a", "1"]))
    assert valuation_order(w).levels() == [["0"], ["a", "1"]]
    v = valuation_from_prime(chain3, C_(chain3, ["0", "a"], ["1"]))
    assert valuation_order(v).levels() == [["0", "a"], ["1"]]
    assert valuation_order(valuation_from_prime(B, diagonal(B))).levels() == [["0"], ["1"]]


def test_orders_are_injective_and_well_formed(S4):
    vals = spv(S4)
    orders = [valuation_order(v) for v in vals]
    for o in orders:
        assert o.is_total_preorder() and o.is_multiplicative()
    assert len({o.rel for o in orders}) == len(orders)
    for i, v in enumerate(vals):
        for j, w in enumerate(vals):
            assert equivalent(v, w) == (i == j)


def test_spv_topology_examples(B, chain3, D):
    assert spv_topology(B).n == 1
    X = spv_topology(chain3)
    assert X.n == 2 and is_spectral(X)
    assert spv_topology(D).n == 2 and is_spectral(spv_topology(D))


def test_spv_topology_spectral(S4):
    X = spv_topology(S4)
    assert is_spectral(X)
    assert indistinguishable_points_equal(X)


def test_document(chain3):
    v = valuation_from_prime(chain3, C_(chain3, ["0", "a"], ["1"]))
    doc = valuation_to_document(v)
    assert doc["values"]["a"] == doc["values"]["0"] and doc["levels"] == [["0", "a"], ["1"]]


def test_diamond_spectra_sizes(D):
    # {0,a,b} is not an ideal (a + b = 1), so only {0,a} and {0,b} are prime k-ideals
    assert spec_k(D).n == 2
