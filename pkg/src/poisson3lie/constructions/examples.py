"""Small worked structures used by the demos, the CLI generators and the tests."""

from __future__ import annotations

from ..fields import QQ, GF, Field
from ..hopf_compat import ComodulePoissonTriLieAlgebra, PoissonTriLieHopfModule, as_hopf_module
from ..linalg import LinearMap
from ..structures import (
    AlgebraStructure,
    Coaction,
    grading_coaction,
    group_algebra,
    regular_coaction,
    trivial_coaction,
)
from ..tensor import SparseTensor, einsum
from ..trilie import (
    PoissonTriLieAlgebra,
    TriBracket,
    adjoint_module,
    nambu_degrees,
    nambu_exponents,
    nambu_truncated,
    with_zero_bracket,
)
from .common import PhiMap
from .tensor_h import tensor_with_H


def group_algebra_example(order: int = 2, field: Field = QQ, coaction: str = "regular"):
    """``k[C_n]`` with zero bracket, coacting on itself regularly or trivially; φ = id."""
    h = group_algebra(order, field)
    base = with_zero_bracket(h.algebra)
    rho = regular_coaction(h) if coaction == "regular" else trivial_coaction(h.space, h)
    a = ComodulePoissonTriLieAlgebra(base, h, rho)
    return a, PhiMap.identity(a)


def regular_hopf_module(a: ComodulePoissonTriLieAlgebra) -> PoissonTriLieHopfModule:
    """``A ⊗ H`` with ``x·(n⊗h) = x0 n ⊗ x1 h`` and ``ρ(n⊗h) = n⊗h1⊗h2``."""
    return tensor_with_H(adjoint_module(a.base), a)


def graded_nambu(p: int = 3, shift=None) -> ComodulePoissonTriLieAlgebra:
    """Truncated Nambu algebra graded over ``F_p[C_3]`` by total degree mod 3.

    ``shift`` replaces the degree of each monomial ``x^a y^b z^c`` by
    ``shift[0]*a + shift[1]*b + shift[2]*c`` (mod 3).
    """
    base = nambu_truncated(p)
    h = group_algebra(3, GF(p))
    if shift is None:
        deg = nambu_degrees(p)
    else:
        deg = [int(e @ list(shift)) % 3 for e in nambu_exponents(p)]
    return ComodulePoissonTriLieAlgebra(base, h, grading_coaction(base.space, h, deg))


def product_example(p: int = 3):
    """``A' = A ⊗ F_p[C_3]`` for the truncated Nambu algebra ``A``, coacting on the group leg.

    Product and bracket are taken legwise (``{a⊗u, b⊗v, c⊗w} = {a,b,c}⊗uvw``);
    ``φ(g) = 1⊗g``.  Returns ``(A', φ)``.
    """
    nam = nambu_truncated(p)
    h = group_algebra(3, GF(p))
    F = h.field
    sp = nam.space.tensor(h.space)
    mul = einsum("abc,uvw->aubvcw", nam.algebra.mul, h.mul).merge([[0, 1], [2, 3], [4, 5]], arity=2)
    br = einsum("abcd,uvwz->aubvcwdz", nam.bracket.bracket, h.triple_mul)
    br = br.merge([[0, 1], [2, 3], [4, 5], [6, 7]], arity=3)
    unit = einsum("a,u->au", nam.algebra.unit, h.unit, field=F).merge([[0, 1]]).to_dense()
    base = PoissonTriLieAlgebra(AlgebraStructure(sp, mul, unit), TriBracket(sp, br))
    eyeA = SparseTensor.from_dense(F, F.eye(nam.dim))
    rho = einsum("ac,uvk->aucvk", eyeA, h.comul).merge([[0, 1], [2, 3], [4]], arity=1)
    a = ComodulePoissonTriLieAlgebra(base, h, Coaction.from_tensor(sp, h, rho))
    phi = einsum("a,hu->hau", nam.algebra.unit, F.eye(h.dim), field=F).merge([[0], [1, 2]])
    return a, PhiMap(h, a, LinearMap(h.space, sp, phi.to_dense().T.copy()))


__all__ = [
    "as_hopf_module",
    "graded_nambu",
    "group_algebra_example",
    "product_example",
    "regular_hopf_module",
]
