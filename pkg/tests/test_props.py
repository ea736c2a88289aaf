import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from profcalc.errors import DimensionMismatch, RelationFailed
from profcalc.props import (FMorphism, HMorphism, adjunction_check, algebra_from_group, alternative_representation,
                            antipode_matrix_identity, bc_factorize, bc_relate, check_algebra_laws,
                            check_embedding, check_hopf_axioms, check_prop_axioms, coend_equiv, coend_family,
                            coend_normal_form, coend_soundness_completeness, cyclic_group, embed_j, extract_hopf,
                            f_compose, f_functions, f_symmetry, free_hopf, h_compose, h_symmetry,
                            h_tensor, in_j_image, j_beck_chevalley, j_preimage, parse_group, product_group,
                            random_matrix)


def matmul(a, b, m=None):
    """Oracle: plain triple loop on nested lists; ``m`` is the column count of ``b``."""
    n, k = len(a), len(b)
    m = len(b[0]) if m is None else m
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def as_lists(h):
    return [list(r) for r in h.entries]


matrices = st.integers(0, 3).flatmap(
    lambda n: st.integers(0, 3).flatmap(
        lambda m: st.lists(st.lists(st.integers(-5, 5), min_size=m, max_size=m), min_size=n, max_size=n)
        .map(lambda rows: HMorphism(n, m, tuple(tuple(r) for r in rows)))))


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_composition_matches_oracle(data):
    f = data.draw(matrices)
    k = data.draw(st.integers(0, 3))
    g = HMorphism(k, f.rows, tuple(tuple(data.draw(st.integers(-5, 5)) for _ in range(f.rows)) for _ in range(k)))
    assert as_lists(h_compose(g, f)) == matmul(as_lists(g), as_lists(f), f.cols)


def test_tensor_is_block_diagonal():
    a, b = HMorphism.of([[1, 2]]), HMorphism.of([[3], [4]])
    assert as_lists(h_tensor([a, b])) == [[1, 2, 0], [0, 0, 3], [0, 0, 4]]


def test_parse_and_format_round_trip():
    h = HMorphism.of([[1, -2], [0, 3]])
    assert HMorphism.parse(h.format()) == h


@pytest.mark.parametrize("prop", ["F", "H"])
def test_prop_axioms(prop):
    assert check_prop_axioms(prop, 3).ok


@pytest.mark.parametrize("s,t", list(itertools.product(itertools.permutations(range(3)), repeat=2))[:12])
def test_symmetries_compose(s, t):
    st_ = tuple(s[t[i]] for i in range(3))
    assert h_compose(h_symmetry(s), h_symmetry(t)) == h_symmetry(st_)


def test_embedding_is_a_contravariant_functor():
    assert check_embedding(3).ok
    for f in f_functions(2, 3):
        for g in f_functions(3, 2):
            assert embed_j(f_compose(g, f)) == h_compose(embed_j(f), embed_j(g))


def test_embedding_on_symmetries():
    s = (1, 2, 0)
    inv = tuple(s.index(i) for i in range(3))
    assert embed_j(f_symmetry(inv)) == h_symmetry(s)


def test_j_image_detection():
    f = FMorphism(3, 2, (0, 1, 1))
    assert in_j_image(embed_j(f)) and j_preimage(embed_j(f)) == f
    assert not in_j_image(HMorphism.of([[2, 0]]))
    assert not in_j_image(HMorphism.of([[1, 1]]))


# Beck-Chevalley


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_factorization_rebuilds_matrix(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    split = [rng.randint(0, 3) for _ in range(k)]
    xi = random_matrix(rng, sum(split), rng.randint(0, 5))
    fac = bc_factorize(xi, split)
    assert fac.verified and in_j_image(fac.zeta)
    assert as_lists(h_compose(h_tensor(fac.blocks), fac.zeta)) == as_lists(xi)


def test_factorization_rejects_bad_split():
    with pytest.raises(DimensionMismatch):
        bc_factorize(HMorphism.of([[1], [2]]), [3])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_alternative_representations_relate(seed):
    rng = random.Random(seed)
    split = [rng.randint(0, 3) for _ in range(rng.randint(1, 3))]
    m = rng.randint(1, 5)
    blocks, zeta = alternative_representation(rng, split, m)
    rel = bc_relate((blocks, zeta), split)
    xi = h_compose(h_tensor(blocks), zeta)
    canon = bc_factorize(xi, split)
    for b, c, x in zip(blocks, rel.chis, canon.blocks):
        assert matmul(as_lists(b), as_lists(c), c.cols) == as_lists(x)


def test_relation_rejects_non_function_zeta():
    blocks = [HMorphism.of([[1]])]
    with pytest.raises(RelationFailed):
        bc_relate((blocks, HMorphism.of([[2]])), [1])


def test_relation_rejects_wrong_target():
    blocks = [HMorphism.of([[1]])]
    zeta = HMorphism.of([[1, 0]])
    with pytest.raises(RelationFailed) as exc:
        bc_relate((blocks, zeta), [1], xi=HMorphism.of([[0, 1]]))
    assert exc.value.block == 0


def test_exhaustive_beck_chevalley_small():
    out = j_beck_chevalley(max_m=1, max_rows=2, max_k=2, entry_bound=1)
    assert out["ok"] and out["factorized"] > 0 and out["related"] > 0


# groups, algebras and Hopf structure


@pytest.mark.parametrize("spec,order", [("Z/2", 2), ("Z/3", 3), ("Z/4", 4), ("Z/2xZ/2", 4), ("Z/6", 6)])
def test_groups_parse_and_validate(spec, order):
    G = parse_group(spec)
    assert len(G.elements) == order and G.validate().ok


def test_product_group_is_not_cyclic():
    G = product_group(cyclic_group(2), cyclic_group(2))
    assert all(G.times(2, x) == G.zero for x in G.elements)


@pytest.mark.parametrize("spec", ["Z/2", "Z/3", "Z/2xZ/2"])
def test_algebra_laws(spec):
    A = algebra_from_group(parse_group(spec), 2)
    mats = [HMorphism.of(r) for r in ([[1, 1]], [[2, -1], [0, 1]], [[1], [1]], [[-1]])]
    assert check_algebra_laws(A, mats).ok


@pytest.mark.parametrize("spec", ["Z/2", "Z/3", "Z/4", "Z/2xZ/2", "Z/6"])
def test_hopf_axioms(spec):
    rep = check_hopf_axioms(algebra_from_group(parse_group(spec), 3))
    assert rep.ok and rep.checked > 0


def test_hopf_extraction_values():
    data = extract_hopf(algebra_from_group(cyclic_group(4), 3))
    assert data.mu((1, 2, 3)) == 2
    assert data.delta(3, 2) == (3, 3)
    assert data.S(1) == 3


def test_broken_antipode_detected():
    data = extract_hopf(algebra_from_group(cyclic_group(3), 2))
    data.S = lambda x: x
    laws = check_hopf_axioms(data).laws()
    assert "antipode_left" in laws and "antipode_right" in laws


def test_antipode_matrix_identity():
    assert antipode_matrix_identity()


@pytest.mark.parametrize("X", [(), ("a",), ("a", "b")])
def test_free_hopf_monoid(X):
    assert check_hopf_axioms(free_hopf(X).hopf_data(1, 2)).ok


@pytest.mark.parametrize("X", [(), ("a",), ("a", "b")])
@pytest.mark.parametrize("spec", ["Z/2", "Z/3", "Z/2xZ/2"])
def test_adjunction(X, spec):
    G = parse_group(spec)
    cert = adjunction_check(X, G)
    assert cert.bijective and cert.composites_identity
    assert cert.functions == len(G.elements) ** len(X)


# coend presentation


def test_normal_form_sums_columns():
    nf = coend_normal_form((HMorphism.of([[1, 2]]), ("a", "a")))
    assert nf.coords == ((("a", 3),),)


def test_coend_related_path():
    p1 = (HMorphism.of([[1, 2]]), ("a", "a"))
    p2 = (HMorphism.of([[3]]), ("a",))
    v = coend_equiv(p1, p2)
    assert v.kind == "related" and v.path[0] == p1 and v.path[-1] == p2


def test_coend_distinct():
    v = coend_equiv((HMorphism.of([[1]]), ("a",)), (HMorphism.of([[1]]), ("b",)))
    assert v.kind == "distinct"


def test_dimension_mismatch_in_normal_form():
    with pytest.raises(DimensionMismatch):
        coend_normal_form((HMorphism.of([[1, 2]]), ("a",)))


def test_coend_family_is_sound_and_complete():
    pairs = coend_family(max_entry=2, max_m=2, X=("a", "b"), rows=1)
    out = coend_soundness_completeness(pairs, depth=4)
    assert out["sound"] and out["complete"], out["witness"]
