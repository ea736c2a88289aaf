import random

import pytest
from hypothesis import given, settings, strategies as st

from profcalc.corpus import equipment_corpus, span, z2
from profcalc.errors import CounterexampleFound, IllComposed
from profcalc.fincat import (chain, discrete, identity_functor, iter_functors, terminal,
                             walking_arrow)
from profcalc.prof import (Cell, ProbeBound, Profunctor, associator, check_equipment_laws, check_universal,
                           companion, companion_composite_iso, companion_conjoint, compose_prof, composite,
                           conjoint, factor_through, horizontal_compose, identity_cell, is_cartesian,
                           is_opcartesian, iter_cells, iter_profunctors, left_unitor, random_profunctor, restrict,
                           right_unitor, tabulate, unit_prof, validate_cell, validate_profunctor,
                           vertical_compose)


def coend_size(J, H, a, c):
    """Independent oracle: connected components of the generator graph, by depth-first search."""
    B = J.tgt
    nodes = [(b, u, v) for b in B.objects for u in J.elements(a, b) for v in H.elements(b, c)]
    adj = {n: set() for n in nodes}
    for q in B.morphisms:
        b, b1 = B.src(q), B.tgt(q)
        for u in J.elements(a, b):
            for v in H.elements(b1, c):
                x, y = (b1, J.ract(a, q, u), v), (b, u, H.lact(q, c, v))
                adj[x].add(y)
                adj[y].add(x)
    seen, comps = set(), 0
    for n in nodes:
        if n in seen:
            continue
        comps += 1
        stack = [n]
        while stack:
            m = stack.pop()
            if m not in seen:
                seen.add(m)
                stack.extend(adj[m] - seen)
    return comps


CATS = [terminal(), walking_arrow(), discrete([0, 1]), chain(3), z2(), span()]


def _random_pair(seed):
    rng = random.Random(seed)
    A, B, C = (rng.choice(CATS) for _ in range(3))
    return random_profunctor(A, B, 2, rng), random_profunctor(B, C, 2, rng)


@pytest.mark.parametrize("seed", range(12))
def test_composite_matches_component_oracle(seed):
    J, H = _random_pair(seed)
    P = composite(J, H)
    assert validate_profunctor(P).ok
    for a in J.src.objects:
        for c in H.tgt.objects:
            assert len(P.elements(a, c)) == coend_size(J, H, a, c)


@pytest.mark.parametrize("A", CATS, ids=lambda C: C.name)
def test_unit_profunctor_is_hom(A):
    U = unit_prof(A)
    assert validate_profunctor(U).ok
    assert U.size() == len(A.morphisms)


@pytest.mark.parametrize("seed", range(6))
def test_unitors_and_associator_are_isomorphisms(seed):
    J, H = _random_pair(seed)
    assert left_unitor(J).verify().ok
    assert right_unitor(J).verify().ok
    L = random_profunctor(H.tgt, walking_arrow(), 1, random.Random(seed))
    assert associator(J, H, L).verify().ok


def test_composite_with_mismatched_middle_raises():
    with pytest.raises(IllComposed):
        compose_prof(unit_prof(chain(3)), unit_prof(walking_arrow()))


def test_known_composite_value():
    # 1_A . 1_A is again the hom profunctor
    A = walking_arrow()
    U = unit_prof(A)
    P = composite(U, U)
    assert {(a, b): len(P.elements(a, b)) for a, b in P.pairs()} == {(0, 0): 1, (0, 1): 1, (1, 0): 0, (1, 1): 1}


def test_bad_action_detected():
    A = walking_arrow()
    one = terminal()
    # J(0,*) = {x, y}, J(1,*) = {z}; left action of the arrow sends z to x, which is fine
    good = Profunctor(A, one, {(0, "*"): ["x", "y"], (1, "*"): ["z"]}, {((0, 1), "*", "z"): "x"}, {})
    assert validate_profunctor(good).ok
    bad = Profunctor(A, one, {(0, "*"): ["x", "y"], (1, "*"): ["z"]}, {((0, 1), "*", "z"): "w"}, {})
    assert not validate_profunctor(bad).ok


def test_json_round_trip():
    J, _ = _random_pair(3)
    assert Profunctor.from_json(J.to_json(), J.src, J.tgt) == J


def test_restriction_is_cartesian_and_keeps_names():
    A, C = chain(3), walking_arrow()
    K = unit_prof(C)
    for f in iter_functors(A, C):
        R, cart = restrict(K, f, f)
        assert validate_cell(cart).ok
        assert is_cartesian(cart)
        for a, b, u in R.all_elements():
            assert cart(a, b, u) == u


def test_cartesian_universal_property_probe():
    f = next(iter(iter_functors(walking_arrow(), chain(3))))
    R, cart = restrict(unit_prof(chain(3)), f, f)
    cert = check_universal(cart, "cartesian", ProbeBound(1, 1))
    assert cert.canonical and cert.probe_count > 0


def test_non_cartesian_cell_fails_probe():
    # the unique cell from the empty profunctor into the hom profunctor is not cartesian
    A = walking_arrow()
    E = Profunctor(A, A, {}, {}, {})
    phi = Cell(E, unit_prof(A), identity_functor(A), identity_functor(A), {})
    assert not is_cartesian(phi)
    with pytest.raises(CounterexampleFound):
        check_universal(phi, "cartesian", ProbeBound(1, 1))


def test_companion_and_conjoint_defining_cells():
    A, C = walking_arrow(), chain(3)
    for f in iter_functors(A, C):
        comp = companion_conjoint(f, "companion")
        conj = companion_conjoint(f, "conjoint")
        assert is_cartesian(comp.cartesian) and is_cartesian(conj.cartesian)
        assert is_opcartesian(comp.opcartesian) and is_opcartesian(conj.opcartesian)
        assert companion(f).size() == sum(len(C.hom(f.ob(a), c)) for a in A.objects for c in C.objects)
        assert conjoint(f).size() == sum(len(C.hom(c, f.ob(a))) for a in A.objects for c in C.objects)


def test_companion_composition_iso():
    A, B, C = walking_arrow(), chain(3), chain(3)
    for f in iter_functors(A, B):
        for g in iter_functors(B, C, limit=5):
            assert companion_composite_iso(f, g).verify().ok


def test_equipment_laws_on_small_corpus():
    res = check_equipment_laws(equipment_corpus()[:4], max_functors=4)
    assert res["ok"], res["failures"][:2]
    assert res["companions"] > 0 and res["cartesian_display"] > 0


def test_vertical_and_horizontal_composition_of_identities():
    J, H = _random_pair(7)
    idJ = identity_cell(J)
    assert vertical_compose(idJ, idJ).key() == idJ.key()
    hc = horizontal_compose(idJ, identity_cell(H))
    assert hc.is_bijective()


def test_iter_cells_counts_on_hom():
    # cells 1_A => 1_A over identities form the centre of A: one for a poset
    A = chain(3)
    U = unit_prof(A)
    assert len(list(iter_cells(U, U, identity_functor(A), identity_functor(A)))) == 1
    G = z2()
    UG = unit_prof(G)
    # and the whole group for an abelian one
    assert len(list(iter_cells(UG, UG, identity_functor(G), identity_functor(G)))) == 2


def test_factor_through_cartesian():
    A, C = walking_arrow(), chain(3)
    f = list(iter_functors(A, C))[2]
    R, cart = restrict(unit_prof(C), f, f)
    H = unit_prof(A)
    psi = Cell(H, unit_prof(C), f, f, {(a, b): {p: f.mor(p) for p in A.hom(a, b)} for a, b in H.pairs()})
    psi.meta = (identity_functor(A), identity_functor(A))
    out = factor_through(cart, psi, "cartesian")
    assert vertical_compose(out, cart).key() == psi.key()


@pytest.mark.parametrize("seed", range(4))
def test_tabulation_report(seed):
    rng = random.Random(100 + seed)
    J = random_profunctor(rng.choice(CATS[:4]), rng.choice(CATS[:4]), 2, rng)
    tab = tabulate(J)
    assert tab.report["ok"], tab.report
    assert len(tab.category.objects) == J.size()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_random_profunctors_are_valid(seed):
    rng = random.Random(seed)
    J = random_profunctor(rng.choice(CATS), rng.choice(CATS), 2, rng)
    assert validate_profunctor(J).ok


def test_iter_profunctors_small_count():
    # profunctors 1 -|-> 1 with at most 2 elements: sets of size 0, 1, 2
    assert len(list(iter_profunctors(terminal(), terminal(), 2))) == 3
    # sizes (0,0), (1,0) and (1,1); (0,1) has no map J(1) -> J(0)
    counts = len(list(iter_profunctors(walking_arrow(), terminal(), 1)))
    assert counts == 3
