import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from poisson3lie.fields import GF, QQ
from poisson3lie.tensor import SparseTensor, einsum


def loop_einsum(spec, *arrays):
    """Reference contraction by explicit summation over every index value."""
    lhs, out = spec.split("->")
    terms = lhs.split(",")
    dims = {}
    for t, a in zip(terms, arrays):
        for c, n in zip(t, a.shape):
            dims[c] = n
    letters = sorted(dims)
    res = {}
    for vals in itertools.product(*(range(dims[c]) for c in letters)):
        env = dict(zip(letters, vals))
        prod = 1
        for t, a in zip(terms, arrays):
            prod = prod * a[tuple(env[c] for c in t)]
        key = tuple(env[c] for c in out)
        res[key] = res.get(key, 0) + prod
    arr = np.zeros([dims[c] for c in out], dtype=object)
    for k, v in res.items():
        arr[k] = v
    return arr


def arrays(shape, sparse=True):
    elems = st.sampled_from([0, 0, 0, 1, -1, 2]) if sparse else st.integers(-3, 3)
    n = int(np.prod(shape))
    return st.lists(elems, min_size=n, max_size=n).map(lambda v: np.array(v, dtype=object).reshape(shape))


SPECS = [
    ("ij,jk->ik", [(2, 3), (3, 2)]),
    ("ijk,k->ij", [(2, 2, 3), (3,)]),
    ("xyw,wzo->xyzo", [(2, 2, 2), (2, 2, 2)]),
    ("ii->i", [(3, 3)]),
    ("ij,ij->", [(2, 3), (2, 3)]),
    ("ab,cd->acbd", [(2, 2), (2, 2)]),
    ("ijk,kl,lm->ijm", [(2, 2, 2), (2, 3), (3, 2)]),
]


@pytest.mark.parametrize("field", [QQ, GF(3), GF(7)], ids=str)
@pytest.mark.parametrize("spec,shapes", SPECS, ids=[s for s, _ in SPECS])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_einsum_matches_loops(field, spec, shapes, data):
    ops = [data.draw(arrays(s)) for s in shapes]
    got = einsum(spec, *[SparseTensor.from_dense(field, field.array(o)) for o in ops], field=field)
    want = field.array(loop_einsum(spec, *ops))
    assert np.array_equal(got.to_dense(), want)


def test_einsum_rational_values():
    a = QQ.array([[Fraction(1, 2), Fraction(1, 3)]])
    b = QQ.array([[Fraction(2)], [Fraction(3)]])
    assert einsum("ij,jk->ik", a, b, field=QQ).to_dense()[0, 0] == 2


def test_einsum_scalar_output():
    a = SparseTensor.from_dense(GF(5), GF(5).array([1, 2, 3]))
    s = einsum("i,i->", a, a)
    assert s.shape == () and s.to_dense()[()] == (1 + 4 + 9) % 5


def test_build_sums_duplicates_and_drops_zeros():
    F = GF(3)
    t = SparseTensor.build(F, (2, 2), [[0, 1], [0, 1], [1, 0]], [1, 2, 1])
    assert t.nnz == 1 and t.entries() == [((1, 0), 1)]


@settings(max_examples=30, deadline=None)
@given(arrays((2, 3, 2)))
def test_merge_matches_reshape(a):
    F = GF(5)
    t = SparseTensor.from_dense(F, F.array(a))
    assert np.array_equal(t.merge([[0], [1, 2]]).to_dense(), F.array(a).reshape(2, 6))
    assert np.array_equal(t.merge([[0, 1, 2]]).to_dense(), F.array(a).reshape(12))


@settings(max_examples=30, deadline=None)
@given(arrays((2, 3, 2)), st.permutations([0, 1, 2]))
def test_permute_matches_transpose(a, perm):
    F = QQ
    t = SparseTensor.from_dense(F, F.array(a))
    assert np.array_equal(t.permute(perm).to_dense(), F.array(a).transpose(perm))


@settings(max_examples=30, deadline=None)
@given(arrays((3, 3)), arrays((3, 3)))
def test_add_sub_fix(a, b):
    F = GF(7)
    ta, tb = (SparseTensor.from_dense(F, F.array(x)) for x in (a, b))
    assert np.array_equal((ta + tb).to_dense(), F.array(a + b))
    assert (ta - ta).is_zero()
    assert np.array_equal(ta.fix(1, 2).to_dense(), F.array(a)[:, 2])


def test_merge_rejects_non_partition():
    t = SparseTensor.zeros(QQ, (2, 2))
    with pytest.raises(ValueError):
        t.merge([[0]])
