import pytest

from taucospond import (
    Representation,
    decompose,
    direct_sum,
    injective_rep,
    is_isomorphic,
    is_tau_minus_rigid,
    min_proj_presentation,
    projective_rep,
    tau,
    tau_minus,
)

from conftest import fixture_inventory


def test_presentations(m2, n3):
    pres = min_proj_presentation(m2.S1)
    assert pres.p0_vertices == (0,) and pres.p1_vertices == (1,)
    pres = min_proj_presentation(m2.P1)
    assert pres.p1.is_zero() and pres.p0_vertices == (0,)
    s2 = Representation.simple(n3, 1)
    pres = min_proj_presentation(s2)
    assert pres.p0_vertices == (1,) and pres.p1_vertices == (2,)
    assert pres.d.is_intertwiner()


def test_tau_examples(m2, n3):
    assert is_isomorphic(tau_minus(m2.S2), m2.S1)
    assert tau_minus(m2.S1).is_zero() and tau_minus(m2.P1).is_zero()
    assert is_isomorphic(tau(m2.S1), m2.S2)
    assert tau(m2.S2).is_zero() and tau(m2.P1).is_zero()
    s = [Representation.simple(n3, v) for v in range(3)]
    assert is_isomorphic(tau_minus(s[2]), s[1])
    assert is_isomorphic(tau(s[1]), s[2])


def test_rigidity(m2):
    assert is_tau_minus_rigid(m2.S2)
    assert not is_tau_minus_rigid(direct_sum([m2.S1, m2.S2]))
    assert is_tau_minus_rigid(m2.P1)


def test_kronecker_preprojectives(kronecker):
    p2 = projective_rep(kronecker, 1)
    dims = []
    x = p2
    for _ in range(3):
        x = tau_minus(x)
        dims.append(x.dims)
    assert dims == [(2, 3), (4, 5), (6, 7)]
    assert tau(injective_rep(kronecker, 0)).dims == (3, 2)


@pytest.mark.parametrize("name", ["a2", "n3", "a3", "k"])
def test_quasi_inverse(name):
    inv = fixture_inventory(name)
    for x in inv.items:
        tm = tau_minus(x)
        if not tm.is_zero():
            assert is_isomorphic(tau(tm), x, indecomposable=True)
        t = tau(x)
        if not t.is_zero():
            assert is_isomorphic(tau_minus(t), x, indecomposable=True)


@pytest.mark.parametrize("name", ["a2", "n3", "a3"])
def test_translates_avoid_projectives_and_injectives(name):
    inv = fixture_inventory(name)
    alg = inv.alg
    injectives = [injective_rep(alg, v) for v in range(alg.n)]
    projectives = [projective_rep(alg, v) for v in range(alg.n)]
    for x in inv.items:
        # tau^- lands among non-projectives, tau among non-injectives
        for piece, _ in decompose(tau_minus(x)):
            assert not any(is_isomorphic(piece, p) for p in projectives)
        for piece, _ in decompose(tau(x)):
            assert not any(is_isomorphic(piece, i) for i in injectives)


@pytest.mark.parametrize("name", ["n3", "a3"])
def test_additive(name):
    inv = fixture_inventory(name)
    for i in inv:
        for j in inv:
            x, y = inv.items[i], inv.items[j]
            both = tau_minus(direct_sum([x, y], inv.alg))
            sep = direct_sum([tau_minus(x), tau_minus(y)], inv.alg)
            assert is_isomorphic(both, sep)
