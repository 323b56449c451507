import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taucospond import (
    BudgetExceeded,
    FieldModeError,
    Morphism,
    PreconditionError,
    Representation,
    cogen_test,
    cokernel_rep,
    decompose,
    direct_sum,
    end_elements,
    ext1_basis,
    hom_basis,
    is_brick,
    is_indecomposable,
    is_isomorphic,
    kernel_rep,
    middle_term,
    projective_rep,
    radical_hom,
    submodules,
)
from taucospond.config import Budget, use_budget
from taucospond.linalg import rank
from taucospond.modules import ext1, hom_dim, projective_cover

from _oracles import brute_hom_dim, brute_is_brick
from conftest import fixture_inventory


def test_hom_examples(m2):
    assert hom_basis(m2.P1, m2.S1).dim == 1
    assert hom_basis(m2.S1, m2.P1).dim == 0
    assert hom_basis(m2.P1, Representation.zero(m2.alg)).dim == 0


def test_hom_basis_elements_intertwine(m2):
    for g in hom_basis(m2.S2, m2.P1).basis:
        assert g.is_intertwiner()


@pytest.mark.parametrize("name", ["a2", "n3", "a3"])
def test_hom_matches_brute_force(name):
    inv = fixture_inventory(name)
    for x in inv.items:
        for y in inv.items:
            assert hom_dim(x, y) == brute_hom_dim(x, y, 3)


@pytest.mark.parametrize("name", ["a2", "n3", "a3"])
def test_brick_matches_brute_force(name):
    inv = fixture_inventory(name)
    for x in inv.items:
        assert is_brick(x) == brute_is_brick(x, 3)


def test_end_elements(m2):
    assert len(list(end_elements(m2.S1))) == 3
    assert len(list(end_elements(m2.P1))) == 3
    assert len(list(end_elements(direct_sum([m2.S1, m2.S1])))) == 81


def test_end_budget(m2):
    big = direct_sum([m2.S1] * 4)
    with use_budget(Budget(max_states=1000)):
        with pytest.raises(BudgetExceeded):
            list(end_elements(big))


def test_rational_mode_refuses_enumeration(a2):
    q = a2.with_field(__import__("taucospond").linalg.Field.rational())
    with pytest.raises(FieldModeError):
        list(end_elements(Representation.simple(q, 0)))


def test_indecomposable(m2, n3):
    assert is_indecomposable(m2.P1)
    assert not is_indecomposable(direct_sum([m2.S1, m2.S2]))
    assert is_indecomposable(projective_rep(n3, 1))
    with pytest.raises(PreconditionError):
        is_indecomposable(Representation.zero(m2.alg))


def test_brick(m2, kronecker):
    assert all(is_brick(x) for x in (m2.S1, m2.S2, m2.P1))
    assert not is_brick(direct_sum([m2.S1, m2.S1]))
    x = Representation(kronecker, (1, 1), [[[1]], [[1]]])
    assert is_brick(x)


def test_local_non_brick():
    # k[x]/x^2 as a module over itself
    from taucospond import parse_algebra

    alg = parse_algebra("vertices 1; arrows x:1->1; relations x*x")
    p = projective_rep(alg, 0)
    assert is_indecomposable(p) and not is_brick(p)
    assert radical_hom(p, p).dim == 1


def test_decompose(m2):
    pieces = decompose(direct_sum([m2.P1, m2.S2]))
    assert sorted((x.dims, k) for x, k in pieces) == [((0, 1), 1), ((1, 1), 1)]
    x = Representation(m2.alg, (1, 2), [[[1], [0]]])
    pieces = decompose(x)
    assert sorted((y.dims, k) for y, k in pieces) == [((0, 1), 1), ((1, 1), 1)]
    assert decompose(Representation.zero(m2.alg)) == []


def test_decompose_multiplicity(m2):
    pieces = decompose(direct_sum([m2.S2, m2.P1, m2.S2]))
    assert sorted((x.dims, k) for x, k in pieces) == [((0, 1), 2), ((1, 1), 1)]


def test_isomorphic(m2):
    assert is_isomorphic(m2.P1, m2.I2)
    assert not is_isomorphic(m2.S1, m2.S2)
    assert is_isomorphic(m2.P1, m2.P1)
    twisted = Representation(m2.alg, (1, 1), [[[2]]])
    assert is_isomorphic(twisted, m2.P1)
    assert not is_isomorphic(direct_sum([m2.S1, m2.S2]), m2.P1)


def test_kernel_cokernel(m2):
    ident = Morphism.identity(m2.P1)
    assert kernel_rep(ident)[0].is_zero()
    assert cokernel_rep(ident)[0].is_zero()
    surj = hom_basis(m2.P1, m2.S1).basis[0]
    k, inc = kernel_rep(surj)
    assert is_isomorphic(k, m2.S2) and (surj @ inc).is_zero()
    inc2 = hom_basis(m2.S2, m2.P1).basis[0]
    c, q = cokernel_rep(inc2)
    assert is_isomorphic(c, m2.S1) and (q @ inc2).is_zero()
    zero = Morphism.zero(m2.P1, m2.S1)
    assert is_isomorphic(kernel_rep(zero)[0], m2.P1)
    assert is_isomorphic(cokernel_rep(zero)[0], m2.S1)


def test_submodules(m2, n3):
    assert [s.dims for s, _ in submodules(m2.P1)] == [(0, 0), (0, 1), (1, 1)]
    assert [s.dims for s, _ in submodules(m2.S1)] == [(0, 0), (1, 0)]
    assert [s.dims for s, _ in submodules(projective_rep(n3, 1))] == [(0, 0, 0), (0, 0, 1), (0, 1, 1)]
    for s, inc in submodules(m2.P1):
        assert inc.is_mono() and inc.is_intertwiner()


def test_submodule_dimension_bound(m2):
    with use_budget(Budget(submodule_dim_bound=2)):
        with pytest.raises(BudgetExceeded):
            submodules(direct_sum([m2.P1, m2.S1]))


def test_ext(m2, n3):
    assert len(ext1_basis(m2.S1, m2.S2)) == 1
    assert len(ext1_basis(m2.P1, m2.S1)) == 0
    s = [Representation.simple(n3, v) for v in range(3)]
    assert len(ext1_basis(s[0], projective_rep(n3, 1))) == 0


def test_middle_terms(m2, n3):
    e = ext1_basis(m2.S1, m2.S2)[0]
    mid, mono, epi = middle_term(e)
    assert is_isomorphic(mid, m2.P1)
    assert mono.is_mono() and epi.is_epi() and (epi @ mono).is_zero()
    assert mono.is_intertwiner() and epi.is_intertwiner()
    split, _, _ = ext1(m2.S1, m2.S2).middle_term((0,))
    assert is_isomorphic(split, direct_sum([m2.S1, m2.S2]))
    s = [Representation.simple(n3, v) for v in range(3)]
    e = ext1_basis(s[1], s[2])[0]
    assert is_isomorphic(middle_term(e)[0], projective_rep(n3, 1))


def test_cogen(m2):
    assert cogen_test(m2.S2, m2.P1)
    assert not cogen_test(m2.S1, m2.P1)
    assert cogen_test(Representation.zero(m2.alg), m2.S1)


def test_radical_hom(m2):
    assert radical_hom(m2.S2, m2.P1).dim == 1
    assert radical_hom(m2.S1, m2.S1).dim == 0
    assert radical_hom(m2.S1, m2.S2).dim == 0
    with pytest.raises(PreconditionError):
        radical_hom(direct_sum([m2.S1, m2.S2]), m2.S1)


def test_projective_cover_minimal(n3):
    s2 = Representation.simple(n3, 1)
    cov = projective_cover(s2)
    assert cov.vertices == (1,)
    assert cov.map.is_epi()


# -- properties over random pairs of fixture modules --------------------------

INV = {name: fixture_inventory(name) for name in ("a2", "n3", "a3")}


@st.composite
def module_sums(draw, name=None):
    name = name or draw(st.sampled_from(sorted(INV)))
    inv = INV[name]
    ids = draw(st.lists(st.integers(0, len(inv) - 1), min_size=0, max_size=3))
    return inv, inv.module(__import__("collections").Counter(ids))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_hom_additive(data):
    name = data.draw(st.sampled_from(sorted(INV)))
    inv, x = data.draw(module_sums(name))
    _, y = data.draw(module_sums(name))
    _, z = data.draw(module_sums(name))
    assert hom_dim(direct_sum([x, y], inv.alg), z) == hom_dim(x, z) + hom_dim(y, z)
    assert hom_dim(z, direct_sum([x, y], inv.alg)) == hom_dim(z, x) + hom_dim(z, y)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_rank_nullity_for_morphisms(data):
    name = data.draw(st.sampled_from(sorted(INV)))
    inv, x = data.draw(module_sums(name))
    _, y = data.draw(module_sums(name))
    hb = hom_basis(x, y)
    coeffs = data.draw(st.lists(st.integers(0, 2), min_size=hb.dim, max_size=hb.dim))
    f = hb.element(coeffs)
    k, _ = kernel_rep(f)
    c, _ = cokernel_rep(f)
    for v in range(inv.alg.n):
        r = rank(f.maps[v], inv.alg.field)
        assert k.dims[v] + r == x.dims[v]
        assert c.dims[v] + r == y.dims[v]


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_decompose_round_trip(data):
    inv, x = data.draw(module_sums())
    pieces = decompose(x)
    assert all(is_indecomposable(p) for p, _ in pieces)
    again = direct_sum([p for p, k in pieces for _ in range(k)], inv.alg)
    assert again.dims == x.dims
    assert is_isomorphic(again, x)
    assert inv.multiplicities(x) == inv.multiplicities_by_decomposition(x)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_cogen_passes_to_submodules(data):
    name = data.draw(st.sampled_from(sorted(INV)))
    inv = INV[name]
    x = inv.items[data.draw(st.integers(0, len(inv) - 1))]
    _, m = data.draw(module_sums(name))
    if cogen_test(x, m):
        for s, _ in submodules(x):
            assert cogen_test(s, m)


@pytest.mark.parametrize("name", sorted(INV))
def test_brick_iff_radical_zero(name):
    inv = INV[name]
    for x in inv.items:
        assert is_brick(x) == (radical_hom(x, x).dim == 0)


@pytest.mark.parametrize("name", sorted(INV))
def test_nonsplit_middle_term_not_split(name):
    inv = INV[name]
    for a in inv.items:
        for b in inv.items:
            sp = ext1(a, b)
            if sp.dim == 1:
                mid = sp.middle_term((1,))[0]
                assert not is_isomorphic(mid, direct_sum([a, b], inv.alg))


def test_loop_modules():
    from taucospond import parse_algebra

    alg = parse_algebra("vertices 1; arrows x:1->1; relations x*x*x")
    p = projective_rep(alg, 0)
    assert p.dims == (3,)
    assert is_indecomposable(p)
    assert [s.dims for s, _ in submodules(p)] == [(0,), (1,), (2,), (3,)]
    two = Representation(alg, (2,), [np.array([[0, 0], [1, 0]])])
    assert ext1(two, Representation.simple(alg, 0)).dim == 1
