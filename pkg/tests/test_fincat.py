import itertools

import pytest
from hypothesis import given, settings, strategies as st

from profcalc.corpus import bool4, diamond_m3, lattices, pentagon_n5, small_categories, z2
from profcalc.errors import BoundExceeded, NoUniversalObject, StructuralError
from profcalc.fincat import (CatFunctor, ComputableCategory, FinCategory, SetFunctor, category_of_elements, chain,
                             colimit_or_limit, compose_functors, discrete, identity_functor, iter_functors,
                             monoid_category, opposite, parallel_pair, poset, power_category, product_category,
                             terminal, tuple_functor, validate, verify_universal_cone, walking_arrow)


@pytest.mark.parametrize("C", small_categories() + lattices(), ids=lambda C: C.name)
def test_corpus_categories_validate(C):
    assert validate(C).ok


def test_missing_composite_is_reported():
    A = walking_arrow()
    data = A.to_json()
    data["composition"] = data["composition"][:-1]
    rep = validate(FinCategory.from_json(data))
    assert "totality" in rep.laws()


def test_wrong_composite_breaks_associativity_or_unit():
    M = monoid_category([0, 1, 2], lambda a, b: (a + b) % 3, 0)
    table = M.composition_table()
    table[(1, 1)] = 0
    bad = FinCategory(M.objects, [(m, "*", "*") for m in M.morphisms], {"*": 0}, table)
    assert not validate(bad).ok


def test_unknown_morphism_rejected():
    with pytest.raises(StructuralError):
        FinCategory([0], [("i", 0, 0)], {0: "i"}, {("i", "j"): "i"})


@pytest.mark.parametrize("C", [walking_arrow(), chain(3), z2(), parallel_pair()], ids=lambda C: C.name)
def test_json_round_trip(C):
    assert FinCategory.from_json(C.to_json()) == C


def test_opposite_is_involutive():
    C = parallel_pair()
    assert opposite(opposite(C)).to_json() == C.to_json()


@pytest.mark.parametrize("X,T,expected", [
    (walking_arrow(), walking_arrow(), 3),   # monotone maps [2] -> [2]
    (chain(3), walking_arrow(), 4),
    (z2(), z2(), 2),                         # group endomorphisms of Z/2
    (discrete([0, 1]), chain(3), 9),
    (parallel_pair(), walking_arrow(), 3),
])
def test_functor_counts(X, T, expected):
    fs = list(iter_functors(X, T))
    assert len(fs) == expected
    assert all(validate(f).ok for f in fs)


def _monotone_count(n, m):
    """Independent count of monotone maps [n] -> [m]: weakly increasing sequences."""
    return sum(1 for s in itertools.product(range(m), repeat=n) if list(s) == sorted(s))


@pytest.mark.parametrize("n,m", [(1, 3), (2, 3), (3, 2), (3, 3), (0, 4)])
def test_functors_between_chains_match_monotone_maps(n, m):
    assert len(list(iter_functors(chain(n), chain(m)))) == _monotone_count(n, m)


def test_functor_composition_and_identity():
    A, B = chain(3), walking_arrow()
    for f in iter_functors(A, B):
        assert compose_functors(identity_functor(B), f) == f
        assert compose_functors(f, identity_functor(A)) == f


@pytest.mark.parametrize("L", [bool4(), diamond_m3(), pentagon_n5()], ids=lambda C: C.name)
def test_colimits_in_lattices_are_joins(L):
    for a, b in itertools.combinations(L.objects, 2):
        X = discrete([0, 1])
        D = CatFunctor(X, L, {0: a, 1: b}, {("id", 0): L.identity(a), ("id", 1): L.identity(b)})
        cone = colimit_or_limit(D, "colimit")
        uppers = [z for z in L.objects if L.hom(a, z) and L.hom(b, z)]
        least = [z for z in uppers if all(L.hom(z, w) for w in uppers)]
        assert [cone.apex] == least
        assert verify_universal_cone(D, cone.apex, cone.legs).ok


def test_limit_is_meet():
    L = bool4()
    X = discrete([0, 1])
    D = CatFunctor(X, L, {0: 1, 1: 2}, {("id", 0): L.identity(1), ("id", 1): L.identity(2)})
    assert colimit_or_limit(D, "limit").apex == 0
    assert colimit_or_limit(D, "colimit").apex == 3


def test_missing_coproduct_raises():
    T = discrete(["x", "y"])
    X = discrete([0, 1])
    D = CatFunctor(X, T, {0: "x", 1: "y"}, {("id", 0): ("id", "x"), ("id", 1): ("id", "y")})
    with pytest.raises(NoUniversalObject):
        colimit_or_limit(D)


def test_coequalizer_in_a_poset_and_a_bad_cocone():
    L = chain(3)
    P = parallel_pair()
    D = CatFunctor(P, L, {0: 0, 1: 1}, {("id", 0): (0, 0), ("id", 1): (1, 1), "s": (0, 1), "t": (0, 1)})
    cone = colimit_or_limit(D)
    assert cone.apex == 1
    rep = verify_universal_cone(D, 2, {0: (0, 2), 1: (1, 2)})
    assert "unique_factorization" in rep.laws()


def test_category_of_elements_contravariant():
    A = walking_arrow()
    # W(1) = {x, y}, W(0) = {z}, the arrow acts W(1) -> W(0)
    W = SetFunctor(A, "contravariant", {0: ("z",), 1: ("x", "y")},
                   {((0, 0), "z"): "z", ((1, 1), "x"): "x", ((1, 1), "y"): "y", ((0, 1), "x"): "z",
                    ((0, 1), "y"): "z"})
    El, proj = category_of_elements(W)
    assert len(El.objects) == 3
    assert validate(El).ok and validate(proj).ok
    assert len(El.hom((0, "z"), (1, "x"))) == 1


def test_power_category_sizes():
    A = walking_arrow()
    assert len(power_category(A, 0).objects) == 1
    assert len(power_category(A, 3).objects) == 8
    assert len(power_category(A, 2).morphisms) == 9
    assert validate(product_category(A, A)).ok


def test_tuple_functor_is_coordinatewise():
    A = chain(3)
    f = next(iter(iter_functors(A, A)))
    F = tuple_functor([f, identity_functor(A)])
    assert validate(F).ok
    assert F.ob((1, 2)) == (f.ob(1), 2)


def test_computable_category_bound():
    C = ComputableCategory(lambda: itertools.count(), lambda a, b: [(a, b)] if a <= b else [],
                           lambda g, f: (f[0], g[1]), lambda a: (a, a), name="N", bound=5)
    with pytest.raises(BoundExceeded):
        C.objects()
    frag = C.fragment(range(3))
    assert validate(frag).ok and len(frag.morphisms) == 6


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=5, unique=True))
def test_divisibility_posets_validate(xs):
    P = poset(xs, lambda a, b: a == b or (a != 0 and b % a == 0))
    assert validate(P).ok
    assert P.is_thin()


def test_terminal_has_one_morphism():
    assert len(terminal().morphisms) == 1
