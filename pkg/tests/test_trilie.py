import numpy as np
import pytest

from _oracles import filippov_first_failure, identity_sides, monomials, nambu_bracket, witness_matches
from poisson3lie import (
    AlgebraStructure,
    PoissonTriLieAlgebra,
    SparseTensor,
    StructureError,
    TriBracket,
    VectorSpace,
    adjoint_module,
    check_filippov,
    check_poisson_module,
    check_poisson_trilie,
    check_skew_symmetry,
    group_algebra,
    nambu_truncated,
    trilie_center,
    with_zero_bracket,
)
from poisson3lie.fields import GF, QQ


@pytest.fixture(scope="module")
def nambu3():
    return nambu_truncated(3)


def test_nambu_labels_follow_monomial_order(nambu3):
    labels = nambu3.space.labels
    assert len(labels) == 27
    assert labels[:4] == ("1", "z", "z^2", "y")
    assert labels[13] == "xyz" and labels[26] == "x^2y^2z^2"
    assert len(monomials(3)) == 27


def test_nambu_bracket_matches_jacobian_oracle(nambu3):
    got = nambu3.bracket.bracket.to_dense().astype(np.int64)
    assert np.array_equal(got, nambu_bracket(3))


def test_nambu_basic_brackets(nambu3):
    sp, F = nambu3.space, nambu3.field
    x, y, z = (sp.vector({v: 1}) for v in "xyz")
    assert nambu3.bracket(x, y, z).tolist() == sp.vector({"1": 1}).tolist()
    # {x^2, y, z} = 2x
    x2 = sp.vector({"x^2": 1})
    assert sp.coefficients(nambu3.bracket(x2, y, z)) == {"x": "2"}
    top = sp.vector({"x^2y^2z^2": 1})
    assert sp.coefficients(nambu3.bracket(top, y, z)) == {"xy^2z^2": "2"}
    # x^2 * x^2 = x^4 is cut, but brackets lower degree so {x^2, x^2, .} still vanishes by skew-symmetry
    assert not np.any(nambu3.bracket(x2, x2, z) != 0)
    assert F.p == 3


def test_nambu_is_poisson_trilie(nambu3):
    rep = check_poisson_trilie(nambu3)
    assert rep.passed, rep.render()


def test_nambu_rejects_small_or_composite():
    for p in (2, 4, 9):
        with pytest.raises(StructureError):
            nambu_truncated(p)


def _mutated(a, coord, p=3):
    T = a.bracket.bracket.to_dense().copy()
    T[coord] = (T[coord] + 1) % p
    F = a.field
    return PoissonTriLieAlgebra(a.algebra, TriBracket(a.space, SparseTensor.from_dense(F, F.array(T))))


@pytest.mark.parametrize("coord", [(0, 1, 2, 0), (3, 1, 9, 0), (9, 3, 1, 0), (5, 5, 5, 5)])
def test_skew_failure_witness_reevaluates(nambu3, coord):
    bad = _mutated(nambu3, coord)
    rep = check_skew_symmetry(bad.bracket)
    assert not rep.passed
    r = rep.failures()[0]
    T = bad.bracket.bracket.to_dense()
    lv, rv = identity_sides(r.name, T, None, np.zeros(1), np.zeros(1), r.witness.index, 3)
    assert witness_matches(r.witness, lv, rv, bad.space.labels, 3)


def test_filippov_failure_agrees_with_oracle():
    """A skew-symmetric bracket that breaks only the fundamental identity.

    On a 4-dim space put {e0,e1,e2} = e3 and {e1,e2,e3} = e1 (plus signs from
    skew-symmetry); the oracle and the checker must find the same first tuple.
    """
    F = GF(5)
    V = VectorSpace(F, ("e0", "e1", "e2", "e3"))
    T = np.zeros((4, 4, 4, 4), dtype=np.int64)
    perms = [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1), ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1)]
    for trip, out in (((0, 1, 2), 3), ((1, 2, 3), 1)):
        for perm, s in perms:
            T[tuple(trip[q] for q in perm) + (out,)] = s % 5
    b = TriBracket(V, SparseTensor.from_dense(F, F.array(T)))
    assert check_skew_symmetry(b).passed
    rep = check_filippov(b)
    w = rep["fundamental_identity"].witness
    assert w is not None
    assert tuple(w.index) == filippov_first_failure(T, 5)
    lv, rv = identity_sides("fundamental_identity", T, None, None, None, w.index, 5)
    assert witness_matches(w, lv, rv, V.labels, 5)


def test_leibniz_failure_detected(nambu3):
    """Scaling the bracket on a single unordered triple keeps skew-symmetry and breaks Leibniz."""
    T = nambu3.bracket.bracket.to_dense().astype(np.int64)
    sp = nambu3.space
    i, j, k = (sp.labels.index(s) for s in ("x", "y", "z"))
    for perm in [(i, j, k), (j, k, i), (k, i, j), (j, i, k), (i, k, j), (k, j, i)]:
        T[perm] = (2 * T[perm]) % 3
    F = nambu3.field
    bad = PoissonTriLieAlgebra(nambu3.algebra, TriBracket(sp, SparseTensor.from_dense(F, F.array(T))))
    rep = check_poisson_trilie(bad)
    assert rep["skew_symmetry[x<->y]"].passed
    assert not rep["leibniz"].passed
    w = rep["leibniz"].witness
    mul = nambu3.algebra.mul.to_dense().astype(np.int64)
    lv, rv = identity_sides("leibniz", T, mul, np.zeros(1), np.zeros(1), w.index, 3)
    assert witness_matches(w, lv, rv, sp.labels, 3)


def test_nambu_center_is_scalars(nambu3):
    c = trilie_center(nambu3)
    assert c.dim == 1
    assert c.render() == "span{1}"


def test_zero_bracket_and_adjoint_module():
    h = group_algebra(3, QQ)
    p = with_zero_bracket(h.algebra)
    assert check_poisson_trilie(p).passed
    assert trilie_center(p).dim == 3
    assert check_poisson_module(adjoint_module(p)).passed


def test_nambu_adjoint_module(nambu3):
    rep = check_poisson_module(adjoint_module(nambu3))
    assert rep.passed, rep.render()


def test_noncommutative_product_detected():
    F = QQ
    V = VectorSpace(F, ("1", "a", "b"))
    entries = [((0, i, i), 1) for i in range(3)] + [((i, 0, i), 1) for i in (1, 2)] + [((1, 2, 1), 1)]
    alg = AlgebraStructure(V, SparseTensor.from_entries(F, (3, 3, 3), entries), V.basis_vector(0))
    rep = check_poisson_trilie(with_zero_bracket(alg))
    assert rep["commutativity"].witness.inputs == ("a", "b")
