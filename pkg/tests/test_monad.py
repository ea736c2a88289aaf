import itertools

import pytest
from hypothesis import given, settings, strategies as st

from profcalc.corpus import bool4
from profcalc.errors import PreconditionFailed
from profcalc.fincat import CatFunctor, chain, discrete, walking_arrow
from profcalc.kan import kan_extend
from profcalc.monad import (TCategory, beck_chevalley, block_permutation, check_T_cell, check_algebra,
                            check_composite_well_defined, check_horizontal, check_monad_laws, check_morphism,
                            check_normality, commutative_monoid_discrete, composite_monoidal, flatten,
                            identity_monoidal_functor, join_semilattice, lift_kan, lift_tabulation, meets,
                            monad_exactness, one_object_commutative, perm_compose, permutations, permute, regroup,
                            shape_of, strict_monoidal_functor, t_compositor, thin_monoidal,
                            thin_monoidal_profunctor, thin_probe_cells, unit_monoidal)
from profcalc.prof import Profunctor, unit_prof, validate_profunctor

DM = {0: 0, 1: 1, 2: 3}


def _setup():
    A, M = chain(3), bool4()
    Ad, Md = join_semilattice(A), join_semilattice(M)
    d = CatFunctor(A, M, DM, {(a, b): (DM[a], DM[b]) for (a, b) in A.morphisms})
    return A, M, Ad, Md, d, strict_monoidal_functor(d, Ad, Md)


def _total(A):
    return Profunctor(A, A, {(a, b): [0] for a in A.objects for b in A.objects},
                      {(p, b, 0): 0 for p in A.morphisms if not A.is_identity(p) for b in A.objects},
                      {(a, q, 0): 0 for q in A.morphisms if not A.is_identity(q) for a in A.objects})


def _upper(A):
    # E(x, y) iff y >= 1
    return Profunctor(A, A, {(a, b): [0] for a in A.objects for b in A.objects if b >= 1},
                      {(p, b, 0): 0 for p in A.morphisms if not A.is_identity(p) for b in (1, 2)},
                      {(a, q, 0): 0 for q in A.morphisms if not A.is_identity(q) and A.src(q) >= 1
                       for a in A.objects})


# combinatorics of lists


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(0, 3), max_size=3), max_size=3))
def test_regroup_inverts_flatten(xss):
    xss = tuple(tuple(x) for x in xss)
    assert regroup(flatten(xss), shape_of(xss)) == xss


@pytest.mark.parametrize("n", range(4))
def test_permutations_form_a_group(n):
    ps = permutations(n)
    assert len(ps) == len(list(itertools.permutations(range(n))))
    xs = tuple("abcd"[:n])
    for s, t in itertools.product(ps, repeat=2):
        # perm_compose(s, t) applies s first
        assert permute(perm_compose(s, t), xs) == permute(t, permute(s, xs))


def test_block_permutation_swaps_blocks():
    tau = block_permutation((1, 0), (2, 1))
    assert permute(tau, ("a", "b", "c")) == ("c", "a", "b")


# the truncated monad


@pytest.mark.parametrize("k,N", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_T_objects_are_lists(k, N):
    T = TCategory(discrete(list(range(k))), N)
    assert len(T.objects()) == sum(k ** n for n in range(N + 1))


@pytest.mark.parametrize("A", [walking_arrow(), chain(3), discrete([0, 1])], ids=lambda C: C.name)
def test_normality(A):
    assert check_normality(A, 2).ok


@pytest.mark.parametrize("J", [unit_prof(walking_arrow()), unit_prof(chain(3)), _total(chain(3))],
                         ids=["hom2", "hom3", "total3"])
def test_monad_laws(J):
    assert check_monad_laws(J, 2).ok


def test_t_compositor_is_invertible():
    A = walking_arrow()
    J = unit_prof(A)
    for n in range(3):
        assert t_compositor(J, J, n).verify().ok


def test_monad_exactness_on_hom():
    rep = monad_exactness(unit_prof(walking_arrow()), 2)
    assert rep["ok"]


# pseudomonoids and their morphisms


def test_algebra_checks():
    _, _, Ad, Md, _, _ = _setup()
    assert check_algebra(Ad).ok and check_algebra(Md).ok
    assert check_algebra(commutative_monoid_discrete([0, 1, 2], lambda a, b: (a + b) % 3, 0)).ok


def test_corrupted_associator_detected():
    G = one_object_commutative([0, 1, 2], lambda a, b: (a + b) % 3, 0)
    assert check_algebra(G).ok
    bad = G.with_override("assoc", (("*",), ("*",)), 1)
    assert "coherence_associativity" in check_algebra(bad).laws()


def test_corrupted_thin_associator_is_mistyped():
    _, _, _, Md, _, _ = _setup()
    bad = Md.with_override("assoc", ((1,), (2,)), (0, 3))
    assert not check_algebra(bad).ok


def test_strict_functor_is_a_morphism():
    *_, dd = _setup()
    assert check_morphism(dd).ok
    assert check_morphism(identity_monoidal_functor(dd.src)).ok


def test_unit_and_composite_are_monoidal():
    _, _, Ad, _, _, _ = _setup()
    U = unit_monoidal(Ad)
    assert check_horizontal(U).ok
    assert check_composite_well_defined(U, U).ok
    assert check_horizontal(composite_monoidal(U, U)).ok


def test_non_monoidal_profunctor_rejected():
    A = chain(3)
    Ad = join_semilattice(A)
    Bd = thin_monoidal(A, meets(A), name="min")
    # the hom of a join semilattice is not monoidal from joins to meets
    assert not check_horizontal(thin_monoidal_profunctor(unit_prof(A), Ad, Bd)).ok


def test_beck_chevalley_on_hom():
    _, _, Ad, _, _, _ = _setup()
    _, verdict = beck_chevalley(unit_monoidal(Ad))
    assert verdict["ok"]


def test_tabulation_lifts():
    _, _, Ad, _, _, _ = _setup()
    tab = lift_tabulation(unit_monoidal(Ad))
    assert tab.report["ok"]


# lifting Kan extensions


@pytest.mark.parametrize("mode", ["lax", "colax", "pseudo"])
def test_lift_along_hom(mode):
    A, M, Ad, Md, d, dd = _setup()
    J, Jd = unit_prof(A), unit_monoidal(Ad)
    cert = kan_extend(d, J, "left")
    kind = "colax" if mode == "colax" else "lax"
    probes = thin_probe_cells(cert, Jd, dd, Md, kind, limit=5)
    ldata, rep = lift_kan(cert, Jd, dd, Md, mode, probes=probes)
    assert rep["ok"], rep
    assert check_morphism(ldata).ok
    assert check_T_cell(cert.cell, dd, ldata, Jd, unit_monoidal(Md), kind=kind).ok
    if mode == "pseudo":
        assert rep["inverse"]["ok"]


@pytest.mark.parametrize("mode", ["colax", "pseudo"])
def test_lift_fails_without_exactness(mode):
    A, M, Ad, Md, d, dd = _setup()
    T = _total(A)
    assert validate_profunctor(T).ok
    Td = thin_monoidal_profunctor(T, Ad, Ad)
    with pytest.raises(PreconditionFailed) as exc:
        lift_kan(kan_extend(d, T, "left"), Td, dd, Md, mode)
    assert exc.value.condition == "e"


@pytest.mark.parametrize("mode", ["lax", "pseudo"])
def test_lift_fails_without_preservation(mode):
    A, M, Ad, Md, d, dd = _setup()
    E = _upper(A)
    assert validate_profunctor(E).ok
    Bd = thin_monoidal(A, meets(A), name="min")
    Ed = thin_monoidal_profunctor(E, Ad, Bd)
    with pytest.raises(PreconditionFailed) as exc:
        lift_kan(kan_extend(d, E, "left"), Ed, dd, Md, mode)
    assert exc.value.condition == "p"
