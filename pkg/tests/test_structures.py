import numpy as np
import pytest

from poisson3lie import (
    AlgebraStructure,
    Coaction,
    HopfStructure,
    LinearMap,
    SparseTensor,
    StructureError,
    VectorSpace,
    check_algebra,
    check_comodule,
    check_hopf_algebra,
    grading_coaction,
    group_algebra,
    regular_coaction,
    trivial_coaction,
)
from poisson3lie.fields import GF, QQ


@pytest.mark.parametrize("field", [QQ, GF(2), GF(3), GF(5)], ids=str)
@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_group_algebras_are_hopf(order, field):
    h = group_algebra(order, field)
    rep = check_hopf_algebra(h)
    assert rep.passed, rep.render()
    assert h.is_commutative


def test_group_algebra_rejects_bad_order():
    with pytest.raises(StructureError):
        group_algebra(0, QQ)


def _with_antipode(h, S):
    return HopfStructure(h.algebra, h.comul, h.counit, LinearMap(h.space, h.space, h.field.array(S)))


def test_zero_antipode_fails_with_witnesses():
    h = group_algebra(2, QQ)
    bad = _with_antipode(h, np.zeros((2, 2), dtype=np.int64))
    rep = check_hopf_algebra(bad, all_witnesses=True)
    assert not rep.passed
    res = rep["antipode_left"]
    assert [w.inputs for w in res.witnesses] == [("1",), ("g",)]
    w = res.witnesses[1]
    assert w.lhs == {} and w.rhs == {"1": "1"}
    assert rep["antipode_bijective"].status == "fail"


def test_identity_antipode_fails_only_on_g():
    # S = id is an anti-homomorphism on a commutative algebra but S(g)g = g^2 = 1 only for C_2
    h = group_algebra(3, QQ)
    bad = _with_antipode(h, np.eye(3, dtype=np.int64))
    rep = check_hopf_algebra(bad, all_witnesses=True)
    assert [w.inputs for w in rep["antipode_left"].witnesses] == [("g",), ("g^2",)]
    assert rep["antipode_bijective"].passed


def test_noncoassociative_comultiplication_detected():
    h = group_algebra(2, QQ)
    # Δ(g) = g⊗1 is counital on one side only and breaks coassociativity
    comul = SparseTensor.from_entries(QQ, (2, 2, 2), [((0, 0, 0), 1), ((1, 1, 0), 1)])
    bad = HopfStructure(h.algebra, comul, h.counit, h.antipode)
    rep = check_hopf_algebra(bad)
    assert not rep["counit_left"].passed
    assert rep["coassociativity"].passed


def test_nonassociative_algebra_detected():
    V = VectorSpace(QQ, ("1", "a", "b"))
    entries = [((0, i, i), 1) for i in range(3)] + [((i, 0, i), 1) for i in (1, 2)]
    entries += [((1, 1, 2), 1)]  # a*a = b, a*b = 0, so (aa)a = 0 but ... b*a = 0 too; make a(ab) differ
    entries += [((2, 1, 1), 1)]  # b*a = a
    alg = AlgebraStructure(V, SparseTensor.from_entries(QQ, (3, 3, 3), entries), V.basis_vector(0))
    rep = check_algebra(alg)
    assert rep["unit_left"].passed and rep["unit_right"].passed
    w = rep["associativity"].witness
    assert w is not None and w.inputs == ("a", "a", "a")


def test_comodules():
    h = group_algebra(3, GF(3))
    assert check_comodule(regular_coaction(h)).passed
    V = VectorSpace(GF(3), ("u", "v"))
    assert check_comodule(trivial_coaction(V, h)).passed
    assert check_comodule(grading_coaction(V, h, [1, 2])).passed


def test_non_grouplike_coaction_fails():
    h = group_algebra(2, QQ)
    V = VectorSpace(QQ, ("u",))
    t = QQ.zeros((1, 1, 2))
    t[0, 0, 0] = QQ.scalar(1)
    t[0, 0, 1] = QQ.scalar(1)  # u -> u⊗(1 + g)
    rep = check_comodule(Coaction.from_tensor(V, h, t))
    assert not rep["coassociativity"].passed
    assert not rep["counit"].passed


def test_shape_errors():
    h = group_algebra(2, QQ)
    V = VectorSpace(QQ, ("u",))
    with pytest.raises(StructureError):
        Coaction(V, h, LinearMap(V, V, QQ.eye(1)))
    with pytest.raises(StructureError):
        AlgebraStructure(V, SparseTensor.zeros(QQ, (2, 2, 2)), QQ.array([1]))
