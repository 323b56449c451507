import pytest

from taucospond import (
    AlgebraError,
    Field,
    InfiniteDimensionalError,
    SpecSyntaxError,
    injective_rep,
    parse_algebra,
    path_basis,
    projective_rep,
    restrict_algebra,
)
from taucospond.config import Budget, use_budget


def test_a2_basis(a2):
    assert a2.dim == 3
    basis = path_basis(a2)
    assert len(basis[(0, 1)]) == 1 and len(basis[(1, 0)]) == 0


def test_n3_kills_long_path(n3):
    assert n3.dim == 5
    assert path_basis(n3)[(0, 2)] == ()
    assert [projective_rep(n3, v).dims for v in range(3)] == [(1, 1, 0), (0, 1, 1), (0, 0, 1)]
    assert [injective_rep(n3, v).dims for v in range(3)] == [(1, 0, 0), (1, 1, 0), (0, 1, 1)]


def test_commutative_square():
    alg = parse_algebra("vertices 1 2 3 4; arrows a:1->2 b:1->3 c:2->4 d:3->4; relations c*a-d*b")
    assert alg.dim == 9
    assert projective_rep(alg, 0).dims == (1, 1, 1, 1)


def test_loop_with_relations():
    alg = parse_algebra("vertices 1 2; arrows x:1->1 a:1->2; relations x*x a*x")
    assert alg.dim == 4


def test_free_loop_is_infinite():
    with pytest.raises(InfiniteDimensionalError):
        parse_algebra("vertices 1; arrows x:1->1")


def test_path_length_budget():
    with use_budget(Budget(path_length_bound=3)):
        with pytest.raises(InfiniteDimensionalError):
            parse_algebra("vertices 1 2 3 4 5; arrows a:1->2 b:2->3 c:3->4 d:4->5")


def test_non_admissible_relation():
    with pytest.raises(AlgebraError):
        parse_algebra("vertices 1; arrows x:1->1; relations x*x-x*x*x")
    with pytest.raises(AlgebraError):
        parse_algebra("vertices 1 2; arrows a:1->2; relations a")


def test_syntax_error_location():
    with pytest.raises(SpecSyntaxError) as exc:
        parse_algebra("vertices 1 2\narows a:1->2")
    assert exc.value.line == 2 and exc.value.column == 1
    assert str(exc.value).startswith("line 2, column 1")


def test_unknown_vertex():
    with pytest.raises((AlgebraError, SpecSyntaxError)):
        parse_algebra("vertices 1 2; arrows a:1->3")


def test_duplicate_key():
    with pytest.raises(SpecSyntaxError):
        parse_algebra("vertices 1; vertices 2")


def test_field_override(a2):
    alg = parse_algebra(a2.canonical_text(), field=Field(5))
    assert alg.field == Field(5)
    assert alg.digest != a2.digest


def test_canonical_text_round_trip(n3):
    again = parse_algebra(n3.canonical_text())
    assert again.canonical_text() == n3.canonical_text()
    assert again.digest == n3.digest


def test_coefficients():
    alg = parse_algebra("field 5; vertices 1 2 3 4; arrows a:1->2 b:1->3 c:2->4 d:3->4; relations c*a-2*d*b")
    assert alg.dim == 9
    # -2 is stored as 3 in F_5
    assert "+3*d*b" in alg.canonical_text()


def test_opposite(n3):
    op = n3.opposite()
    assert op.opposite() is n3
    assert [a.source for a in op.quiver.arrows] == [1, 2]
    assert op.dim == n3.dim
    assert [projective_rep(op, v).dims for v in range(3)] == [(1, 0, 0), (1, 1, 0), (0, 1, 1)]


def test_restrict(a2, n3):
    sub = restrict_algebra(a2, {0})
    assert sub.n == 1 and sub.dim == 1
    assert restrict_algebra(a2, {0, 1}).dim == 3
    n12 = restrict_algebra(n3, {0, 1})
    assert n12.dim == 3 and n12.is_hereditary
    with pytest.raises(AlgebraError):
        restrict_algebra(a2, set())
    assert restrict_algebra(n3, {0, 2}).quiver.arrows == ()
