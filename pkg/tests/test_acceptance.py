"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]`` / ``[FAIL]`` line to the terminal
(bypassing capture) and then asserts. All comparisons are exact.
The corpus is the named semirings plus every idempotent semiring of order <= 3.
"""

import time
from itertools import combinations

import pytest

from semispec.closure import (
    bracket_closure,
    fixed_point_space,
    frobenius_closure,
    integral_closure,
    integral_elements,
    integral_elements_definitional,
    registered_closures,
    verify_closure_axioms,
)
from semispec.congruence import (
    congruence_space,
    diagonal,
    enumerate_congruences,
    generate_congruence,
    generate_congruence_oracle,
    kernel,
    radical_congruence,
    spec_c,
)
from semispec.corpus import corpus
from semispec.fragment import cd_example, fragment_member, partners_scan
from semispec.ideals import (
    IdealSet,
    enumerate_ideals,
    k_closure,
    k_closure_oracle,
    radical_k_ideal,
    spec_k,
)
from semispec.lattice import (
    enumerate_distributive_lattices,
    k_ideal_semiring,
    k_subsemigroup_lattice,
    lattice_to_semiring,
    radical_ideal_semiring,
    realize_space,
    semiring_to_lattice,
    spec_k_invariance,
    spectrum_chain,
    verify_compact_isomorphism,
    verify_lattice_reconstruction,
    verify_multiplicative_reconstruction,
    zariski_space,
)
from semispec.semiring import BoolPoly, classify
from semispec.topology import enumerate_t0_spaces, hull_kernel_space, is_homeomorphism, is_spectral
from semispec.valuation import spv, spv_topology, valuation_order, verify_spv_bijection

CORPUS = corpus(3)
NAMED = {S.name: S for S in CORPUS}


@pytest.fixture
def report(capsys):
    t0 = time.perf_counter()

    def emit(number, title, failures):
        status = "PASS" if not failures else "FAIL"
        line = f"[{status}] criterion {number}: {title} ({time.perf_counter() - t0:.2f}s)"
        if failures:
            line += " :: " + "; ".join(failures[:5])
        with capsys.disabled():
            print("\n" + line)
        assert not failures, line

    return emit


def _ideals(S):
    return enumerate_ideals(S)


def test_criterion_1_closure_axioms(report):
    fails = []
    checked = 0
    for S in CORPUS:
        for name, op in registered_closures(S).items():
            v = verify_closure_axioms(op)
            checked += 1
            if not v:
                fails.append(f"{S.name}/{name}: {v.axiom} at {v.witness}")
    report(1, f"closure axioms, {checked} operators on {len(CORPUS)} semirings", fails)


def test_criterion_2_oracle_equivalences(report):
    fails = []
    for S in CORPUS:
        for I in _ideals(S):
            a = k_closure(S, I)
            b = k_closure_oracle(S, I)
            c = kernel(generate_congruence(S, [(x, S.zero) for x in I.members]))
            if not a == b == c:
                fails.append(f"{S.name}: k-closure of {I}: {a} / {b} / {c}")
            if integral_elements(S, I) != integral_elements_definitional(S, I, max_n=3):
                fails.append(f"{S.name}: integral elements of {I}")
        congs = enumerate_congruences(S)
        for C in congs:
            if radical_congruence(S, C, method="gp") != radical_congruence(S, C):
                fails.append(f"{S.name}: radical of {C}")
        pairs = [(a, b) for a in S.elements for b in S.elements if a < b]
        seeds = [s for k in range(3) for s in combinations(pairs, k)] + [tuple(C.pairs) for C in congs]
        for seed in seeds:
            if generate_congruence(S, seed) != generate_congruence_oracle(S, seed):
                fails.append(f"{S.name}: generation from {seed}")
    report(2, "k-closure, integral, radical and generation oracles agree", fails)


def test_criterion_3_spectrality(report):
    fails = []

    def check(tag, X):
        v = is_spectral(X)
        if not v:
            fails.append(f"{tag}: {v.reason}")

    for S in CORPUS:
        n = S.name
        check(f"{n} Spec_k", spec_k(S))
        check(f"{n} Spec_c", spec_c(S))
        check(f"{n} Spv", spv_topology(S))
        if classify(S).idealic:
            check(f"{n} Zar", zariski_space(S))
        check(f"{n} Zar(I)", zariski_space(k_ideal_semiring(S)))
        check(f"{n} Zar(Irad)", zariski_space(radical_ideal_semiring(S)))
        for kind in ("all", "proper", "k", "prime", "prime-k"):
            fam = [I.members for I in enumerate_ideals(S, kind)]
            check(f"{n} ideals:{kind}", hull_kernel_space(fam, base=S.elements))
        congs = enumerate_congruences(S)
        check(f"{n} congruences", congruence_space(S, congs))
        check(f"{n} proper congruences", congruence_space(S, [C for C in congs if not C.is_full]))
        for name, op in registered_closures(S).items():
            check(f"{n} Fix({name})", fixed_point_space(op))
    report(3, "every spectrum and fixed-point space is spectral", fails)


def test_criterion_4_duality(report):
    fails = []
    for k in range(1, 6):
        for L in enumerate_distributive_lattices(k):
            M = semiring_to_lattice(lattice_to_semiring(L))
            if (M.join, M.meet, M.leq, M.bottom, M.top) != (L.join, L.meet, L.leq, L.bottom, L.top):
                fails.append(f"round trip {L.name}")
    spaces = 0
    for k in range(1, 6):
        for X in enumerate_t0_spaces(k):
            spaces += 1
            try:
                R = realize_space(X)
                if not is_homeomorphism(X, R.spectrum, R.homeomorphism):
                    fails.append(f"realization of a {k}-point space")
            except Exception as exc:  # report rather than abort
                fails.append(f"realization of a {k}-point space: {exc}")
    for S in CORPUS:
        f, g = spectrum_chain(S)
        if f is None or g is None:
            fails.append(f"{S.name}: Spec_k vs Zar(I) / Zar(Irad)")
        if spec_k_invariance(S) is None:
            fails.append(f"{S.name}: Spec_k vs Spec_k of the radical idealic quotient")
    report(4, f"lattice round trips, {spaces} realized spaces, spectrum homeomorphisms", fails)


def test_criterion_5_valuations(report):
    fails = []
    for S in CORPUS:
        vals = spv(S)
        if len(vals) != spec_c(S).n:
            fails.append(f"{S.name}: |Spv| = {len(vals)} vs |Spec_c| = {spec_c(S).n}")
        if not verify_spv_bijection(S):
            fails.append(f"{S.name}: round trips")
        orders = {valuation_order(v).rel for v in vals}
        if len(orders) != len(vals):
            fails.append(f"{S.name}: valuation orders not injective")
    D = NAMED["D"]
    n_spv, n_speck = len(spv(D)), spec_k(D).n
    if n_spv != 2:
        fails.append(f"D: |Spv| = {n_spv}, expected 2")
    if n_speck != 3:
        fails.append(f"D: |Spec_k| = {n_speck}, expected 3 (prime k-ideals: "
                     + ", ".join(str(P) for P in enumerate_ideals(D, "prime-k")) + ")")
    report(5, "Spv/Spec_c bijection, order injectivity, D spectra sizes", fails)


def test_criterion_6_integral_frobenius(report):
    fails = []
    N3 = NAMED["N3"]
    zero = IdealSet.of(N3, ["0"])
    want = IdealSet.of(N3, ["0", "a"])
    got = (integral_closure(N3, zero), radical_k_ideal(N3, zero), frobenius_closure(N3, zero))
    if any(g != want for g in got):
        fails.append(f"N3 fixtures: {[str(g) for g in got]}")
    for S in CORPUS:
        nil = radical_congruence(S, diagonal(S))
        radical = classify(S).radical_idealic
        for I in _ideals(S):
            if radical and integral_closure(S, I) != k_closure(S, I):
                fails.append(f"{S.name}: integral closure of {I}")
            if integral_elements(S, I) != integral_elements(S, k_closure(S, I)):
                fails.append(f"{S.name}: integral elements of {I} vs its k-closure")
            if not integral_elements(S, I) <= bracket_closure(S, nil, I):
                fails.append(f"{S.name}: integral elements of {I} outside the nilradical bracket")
    report(6, "integral and Frobenius fixtures", fails)


def test_criterion_7_fragment(report):
    fails = []
    x, y = BoolPoly.var(2, 0), BoolPoly.var(2, 1)
    for n in (1, 2, 3):
        F = cd_example(2 * n + 4)
        m = fragment_member(F, (x ** (2 * n) + y ** (2 * n), x ** n * y ** n))
        if not m.proven:
            fails.append(f"n={n}: {m.verdict} ({m.reason})")
    F = cd_example(8)
    for k in range(1, 5):
        partners = partners_scan(F, x ** k)
        if partners:
            fails.append(f"x^{k} has partners {[str(p) for p in partners[:3]]}")
    report(7, "CD fragment memberships and monomial scan at degree 8", fails)


def test_criterion_8_algebraic_lattices(report):
    fails = []
    for S in CORPUS:
        if not verify_compact_isomorphism(S):
            fails.append(f"{S.name}: A vs S(A)^c")
        if not verify_multiplicative_reconstruction(S):
            fails.append(f"{S.name}: S(A)^c vs S(S(A)^c)^c")
        derived = [("S(A)", k_subsemigroup_lattice(S).lattice())]
        for tag, T in (("I(A)", k_ideal_semiring(S)), ("Irad(A)", radical_ideal_semiring(S))):
            derived.append((f"S({tag})", k_subsemigroup_lattice(T).lattice()))
            if classify(T).radical_idealic:
                derived.append((tag, semiring_to_lattice(T)))
        for tag, L in derived:
            if not verify_lattice_reconstruction(L):
                fails.append(f"{S.name}: {tag} vs S({tag}^c)")
    report(8, "A = S(A)^c and L = S(L^c)", fails)
