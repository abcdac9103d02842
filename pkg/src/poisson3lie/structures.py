"""Algebras, Hopf algebras and comodules given by structure constants.

Sweedler expressions are evaluated as explicit tensor contractions: an
iterated coproduct such as ``m(0) (x) m(1)1 (x) m(1)2`` is the contraction of
the coaction tensor with the comultiplication tensor, never index bookkeeping
by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .fields import Field
from .linalg import LinAlgError, LinearMap, VectorSpace, inverse, kernel
from .report import FAIL, PASS, CheckReport, CheckResult, Witness, check_identity
from .tensor import SparseTensor, einsum


class StructureError(ValueError):
    """Inconsistent shapes or fields in a structure."""


def _identity(field: Field, n: int) -> SparseTensor:
    return SparseTensor.from_dense(field, field.eye(n))


def _require_shape(t: SparseTensor, shape, what: str):
    if tuple(t.shape) != tuple(shape):
        raise StructureError(f"{what}: expected shape {tuple(shape)}, got {t.shape}")


@dataclass(frozen=True, eq=False)
class AlgebraStructure:
    space: VectorSpace
    mul: SparseTensor
    unit: np.ndarray

    def __post_init__(self):
        n = self.space.dim
        _require_shape(self.mul, (n, n, n), "multiplication")
        if self.mul.field != self.field:
            raise StructureError("multiplication tensor over the wrong field")
        u = np.asarray(self.unit)
        if u.dtype != self.field.dtype:
            u = self.field.array(u)
        if u.shape != (n,):
            raise StructureError(f"unit must be a vector of length {n}")
        object.__setattr__(self, "unit", u)
        object.__setattr__(self, "mul", self.mul.with_arity(2))

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def mul_dense(self) -> np.ndarray:
        return self.mul.to_dense()

    def multiply(self, x, y) -> np.ndarray:
        return self.field.reduce(np.einsum("i,j,ijk->k", x, y, self.mul_dense))

    def left_mult(self, x) -> np.ndarray:
        """Matrix (column convention) of ``v -> x v``."""
        return self.field.reduce(np.einsum("i,ijk->kj", x, self.mul_dense))

    @cached_property
    def is_commutative(self) -> bool:
        return self.mul == self.mul.permute([1, 0, 2], arity=2)


def check_algebra(alg: AlgebraStructure, all_witnesses=False) -> CheckReport:
    sp, F = alg.space, alg.field
    rep = CheckReport("associative unital algebra")
    mul, u = alg.mul, alg.unit
    rep.add(check_identity(
        "associativity", "(xy)z = x(yz)",
        einsum("xyw,wzo->xyzo", mul, mul), einsum("yzw,xwo->xyzo", mul, mul),
        [sp] * 3, [sp], all_witnesses))
    ident = _identity(F, alg.dim)
    rep.add(check_identity(
        "unit_left", "1x = x", einsum("w,wxo->xo", u, mul, field=F), ident, [sp], [sp], all_witnesses))
    rep.add(check_identity(
        "unit_right", "x1 = x", einsum("w,xwo->xo", u, mul, field=F), ident, [sp], [sp], all_witnesses))
    rep.info["commutative"] = alg.is_commutative
    return rep


@dataclass(frozen=True, eq=False)
class HopfStructure:
    algebra: AlgebraStructure
    comul: SparseTensor
    counit: LinearMap
    antipode: LinearMap
    antipode_inv: LinearMap | None = None

    def __post_init__(self):
        d = self.algebra.dim
        _require_shape(self.comul, (d, d, d), "comultiplication")
        object.__setattr__(self, "comul", self.comul.with_arity(1))
        if self.counit.matrix.shape != (1, d):
            raise StructureError("counit must be a 1 x dim(H) map")
        if self.antipode.matrix.shape != (d, d):
            raise StructureError("antipode must be square")
        if self.antipode_inv is None:
            try:
                object.__setattr__(self, "antipode_inv", inverse(self.antipode))
            except LinAlgError:
                pass
        elif self.antipode_inv.matrix.shape != (d, d):
            raise StructureError("antipode inverse must be square")

    @property
    def space(self) -> VectorSpace:
        return self.algebra.space

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def mul(self) -> SparseTensor:
        return self.algebra.mul

    @property
    def unit(self) -> np.ndarray:
        return self.algebra.unit

    @cached_property
    def eps(self) -> np.ndarray:
        return self.counit.matrix[0].copy()

    @cached_property
    def S(self) -> np.ndarray:
        """Antipode as an ``[input, output]`` array."""
        return self.antipode.matrix.T.copy()

    @cached_property
    def Sinv(self) -> np.ndarray:
        if self.antipode_inv is None:
            raise StructureError("the antipode is not bijective")
        return self.antipode_inv.matrix.T.copy()

    @property
    def is_commutative(self) -> bool:
        return self.algebra.is_commutative

    @cached_property
    def triple_mul(self) -> SparseTensor:
        """``(p, q, r) -> pqr``."""
        return einsum("pqs,srk->pqrk", self.mul, self.mul)


def check_hopf_algebra(h: HopfStructure, all_witnesses=False) -> CheckReport:
    sp, F = h.space, h.field
    rep = CheckReport("Hopf algebra")
    rep.extend(check_algebra(h.algebra, all_witnesses))
    mul, D, u, e = h.mul, h.comul, h.unit, h.eps
    ident = _identity(F, h.dim)
    aw = all_witnesses
    rep.add(check_identity(
        "coassociativity", "(Δ⊗id)Δ = (id⊗Δ)Δ",
        einsum("xwc,wab->xabc", D, D), einsum("xaw,wbc->xabc", D, D), [sp], [sp] * 3, aw))
    rep.add(check_identity(
        "counit_left", "(ε⊗id)Δ = id", einsum("a,xab->xb", e, D, field=F), ident, [sp], [sp], aw))
    rep.add(check_identity(
        "counit_right", "(id⊗ε)Δ = id", einsum("b,xab->xa", e, D, field=F), ident, [sp], [sp], aw))
    rep.add(check_identity(
        "bialgebra_comul", "Δ(xy) = Δ(x)Δ(y)",
        einsum("xyw,wab->xyab", mul, D),
        einsum("xpq,yrs,pra,qsb->xyab", D, D, mul, mul), [sp, sp], [sp, sp], aw))
    k = VectorSpace.scalars(F)
    one = np.array([F.scalar(1)], dtype=F.dtype)
    rep.add(check_identity(
        "bialgebra_counit", "ε(xy) = ε(x)ε(y)",
        einsum("xyw,w,k->xyk", mul, e, one, field=F), einsum("x,y,k->xyk", e, e, one, field=F),
        [sp, sp], [k], aw))
    rep.add(check_identity(
        "bialgebra_unit", "Δ(1) = 1⊗1",
        einsum("w,wab->ab", u, D, field=F), einsum("a,b->ab", u, u, field=F), [], [sp, sp], aw))
    rep.add(check_identity(
        "bialgebra_counit_unit", "ε(1) = 1",
        einsum("w,w,k->k", u, e, one, field=F), SparseTensor.from_dense(F, one), [], [k], aw))
    rep.add(check_identity(
        "antipode_left", "S(h1)h2 = ε(h)1",
        einsum("xab,ac,cbo->xo", D, h.S, mul, field=F), einsum("x,o->xo", e, u, field=F),
        [sp], [sp], aw))
    rep.add(check_identity(
        "antipode_right", "h1S(h2) = ε(h)1",
        einsum("xab,bc,aco->xo", D, h.S, mul, field=F), einsum("x,o->xo", e, u, field=F),
        [sp], [sp], aw))
    rep.add(_check_antipode_bijective(h))
    rep.info["dim"] = h.dim
    rep.info["commutative"] = h.is_commutative
    return rep


def _check_antipode_bijective(h: HopfStructure) -> CheckResult:
    name, anchor = "antipode_bijective", "S∘S⁻¹ = S⁻¹∘S = id"
    S = h.antipode
    if h.antipode_inv is None:
        ker = kernel(S)
        ws = [Witness((), (h.space.render(v),), note="nonzero vector killed by S") for v in ker.basis[:1]]
        return CheckResult(name, FAIL, anchor, ws, "antipode is singular")
    Si = h.antipode_inv
    for comp, what in ((S @ Si, "S∘S⁻¹"), (Si @ S, "S⁻¹∘S")):
        if not comp.is_identity():
            bad = int(np.flatnonzero(np.any(comp.matrix != h.field.eye(h.dim), axis=0))[0])
            return CheckResult(name, FAIL, anchor, [Witness(
                (bad,), (h.space.labels[bad],),
                lhs=h.space.coefficients(comp.matrix[:, bad]),
                rhs={h.space.labels[bad]: "1"}, note=what)])
    return CheckResult(name, PASS, anchor)


@dataclass(frozen=True, eq=False)
class Coaction:
    module_space: VectorSpace
    hopf: HopfStructure
    rho: LinearMap

    def __post_init__(self):
        m, d = self.module_space.dim, self.hopf.dim
        if self.rho.matrix.shape != (m * d, m):
            raise StructureError(f"coaction matrix must be {m * d} x {m}")

    @classmethod
    def from_tensor(cls, space: VectorSpace, hopf: HopfStructure, t) -> "Coaction":
        arr = t.to_dense() if isinstance(t, SparseTensor) else np.asarray(t)
        m, d = space.dim, hopf.dim
        if arr.shape != (m, m, d):
            raise StructureError(f"coaction tensor must have shape {(m, m, d)}")
        return cls(space, hopf, LinearMap(space, space.tensor(hopf.space), arr.reshape(m, m * d).T.copy()))

    @property
    def field(self) -> Field:
        return self.module_space.field

    @cached_property
    def tensor(self) -> SparseTensor:
        m, d = self.module_space.dim, self.hopf.dim
        return SparseTensor.from_dense(self.field, self.rho.matrix.T.reshape(m, m, d), arity=1)

    @cached_property
    def operators(self) -> list:
        """Matrices ``C_k`` with ``rho(v) = sum_k C_k(v) (x) h_k``."""
        t = self.tensor.to_dense()
        return [t[:, :, k].T.copy() for k in range(self.hopf.dim)]


def check_comodule(c: Coaction, all_witnesses=False) -> CheckReport:
    sp, hs, F = c.module_space, c.hopf.space, c.field
    rep = CheckReport("right H-comodule")
    rho, D = c.tensor, c.hopf.comul
    rep.add(check_identity(
        "coassociativity", "(ρ⊗id)ρ = (id⊗Δ)ρ",
        einsum("iwb,wja->ijab", rho, rho), einsum("ijw,wab->ijab", rho, D),
        [sp], [sp, hs, hs], all_witnesses))
    rep.add(check_identity(
        "counit", "(id⊗ε)ρ = id",
        einsum("ijk,k->ij", rho, c.hopf.eps, field=F), _identity(F, sp.dim),
        [sp], [sp], all_witnesses))
    return rep


def _power_label(i: int, gen: str = "g") -> str:
    if i == 0:
        return "1"
    return gen if i == 1 else f"{gen}^{i}"


def group_algebra(order: int, field: Field) -> HopfStructure:
    """The group algebra k[C_n] with group-like basis ``1, g, g^2, ...``."""
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise StructureError(f"group order must be a positive integer, got {order!r}")
    n = int(order)
    sp = VectorSpace(field, tuple(_power_label(i) for i in range(n)))
    one = field.scalar(1)
    mul = SparseTensor.from_entries(field, (n, n, n), [((i, j, (i + j) % n), one)
                                                       for i in range(n) for j in range(n)])
    comul = SparseTensor.from_entries(field, (n, n, n), [((i, i, i), one) for i in range(n)])
    alg = AlgebraStructure(sp, mul, sp.basis_vector(0))
    counit = LinearMap(sp, VectorSpace.scalars(field), field.array(np.ones((1, n), dtype=np.int64)))
    s = field.zeros((n, n))
    for i in range(n):
        s[(-i) % n, i] = one
    anti = LinearMap(sp, sp, s)
    return HopfStructure(alg, comul, counit, anti, anti)


def regular_coaction(h: HopfStructure) -> Coaction:
    """H as a right comodule over itself via Δ."""
    return Coaction.from_tensor(h.space, h, h.comul)


def trivial_coaction(space: VectorSpace, h: HopfStructure) -> Coaction:
    """``m -> m (x) 1_H``."""
    F = space.field
    t = F.zeros((space.dim, space.dim, h.dim))
    for i in range(space.dim):
        t[i, i, :] = h.unit
    return Coaction.from_tensor(space, h, t)


def grading_coaction(space: VectorSpace, h: HopfStructure, degrees) -> Coaction:
    """``e_i -> e_i (x) h_{degrees[i]}`` for a group algebra with group-like basis."""
    F = space.field
    t = F.zeros((space.dim, space.dim, h.dim))
    for i, g in enumerate(degrees):
        t[i, i, int(g) % h.dim] = F.scalar(1)
    return Coaction.from_tensor(space, h, t)
