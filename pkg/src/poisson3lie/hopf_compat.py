"""Comodule structures compatible with a Poisson 3-Lie structure.

Right coactions are stored as ``rho[i, j, k]`` (coefficient of ``e_j (x) h_k``
in ``rho(e_i)``), so a Sweedler product like ``x(1) y(1) z(1)`` becomes a
contraction with ``HopfStructure.triple_mul``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Subspace, VectorSpace, intersect, kernel_basis
from .report import FAIL, PASS, WARN, CheckReport, CheckResult, Witness, check_identity
from .structures import Coaction, HopfStructure, StructureError, check_comodule
from .tensor import SparseTensor, einsum
from .trilie import (
    PoissonTriLieAlgebra,
    PoissonTriLieModule,
    adjoint_module,
    check_poisson_module,
    check_poisson_trilie,
    module_invariants,
    trilie_center,
)


@dataclass(frozen=True, eq=False)
class ComodulePoissonTriLieAlgebra:
    base: PoissonTriLieAlgebra
    hopf: HopfStructure
    coaction: Coaction

    def __post_init__(self):
        if self.coaction.module_space != self.base.space:
            raise StructureError("coaction is on a different space than the algebra")
        if self.coaction.hopf is not self.hopf:
            raise StructureError("coaction is over a different Hopf algebra")

    @property
    def space(self) -> VectorSpace:
        return self.base.space

    @property
    def field(self):
        return self.base.field

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def mul(self) -> SparseTensor:
        return self.base.algebra.mul

    @property
    def unit(self) -> np.ndarray:
        return self.base.algebra.unit

    @property
    def bracket(self) -> SparseTensor:
        return self.base.bracket.bracket

    @property
    def rho(self) -> SparseTensor:
        return self.coaction.tensor


@dataclass(frozen=True, eq=False)
class PoissonTriLieHopfModule:
    algebra: ComodulePoissonTriLieAlgebra
    base: PoissonTriLieModule
    coaction: Coaction

    def __post_init__(self):
        if self.base.algebra is not self.algebra.base:
            raise StructureError("module is over a different Poisson 3-Lie algebra")
        if self.coaction.module_space != self.base.module_space:
            raise StructureError("coaction is on a different space than the module")
        if self.coaction.hopf is not self.algebra.hopf:
            raise StructureError("module and algebra coact with different Hopf algebras")

    @property
    def space(self) -> VectorSpace:
        return self.base.module_space

    @property
    def field(self):
        return self.base.field

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def hopf(self) -> HopfStructure:
        return self.algebra.hopf

    @property
    def act(self) -> SparseTensor:
        return self.base.a_action

    @property
    def tri(self) -> SparseTensor:
        return self.base.tri_action.action

    @property
    def rho(self) -> SparseTensor:
        return self.coaction.tensor


def as_hopf_module(a: ComodulePoissonTriLieAlgebra) -> PoissonTriLieHopfModule:
    """``A`` as a Poisson 3-Lie (A, H)-Hopf module over itself."""
    return PoissonTriLieHopfModule(a, adjoint_module(a.base), a.coaction)


def check_comodule_poisson_algebra(a: ComodulePoissonTriLieAlgebra, all_witnesses=False,
                                   constituents=True) -> CheckReport:
    sp, hs, F = a.space, a.hopf.space, a.field
    h = a.hopf
    rho, mul, T = a.rho, a.mul, a.bracket
    aw = all_witnesses
    rep = CheckReport("H-comodule Poisson 3-Lie algebra")
    if constituents:
        rep.extend(check_poisson_trilie(a.base, aw))
        rep.extend(check_comodule(a.coaction, aw), prefix="coaction.")
    rep.add(check_identity(
        "coaction_multiplicative", "ρ(xy) = x0y0 ⊗ x1y1",
        einsum("xyw,wjk->xyjk", mul, rho),
        einsum("xab,ycd,acj,bdk->xyjk", rho, rho, mul, h.mul), [sp, sp], [sp, hs], aw))
    rep.add(check_identity(
        "coaction_unital", "ρ(1) = 1 ⊗ 1",
        einsum("w,wjk->jk", a.unit, rho, field=F), einsum("j,k->jk", a.unit, h.unit, field=F),
        [], [sp, hs], aw))
    trip = h.triple_mul
    lhs = einsum("xyzw,wjk->xyzjk", T, rho)
    legs = einsum("xab,ycd,acej,zef->xyzjbdf", rho, rho, T, rho)
    rhs = einsum("xyzjbdf,bdfk->xyzjk", legs, trip)
    rep.add(check_identity(
        "bracket_colinear", "ρ{x,y,z} = {x0,y0,z0} ⊗ x1y1z1", lhs, rhs, [sp] * 3, [sp, hs], aw))
    rep.add(check_identity(
        "bracket_legs_xzy", "{x0,y0,z0} ⊗ x1y1z1 = {x0,y0,z0} ⊗ x1z1y1",
        rhs, einsum("xyzjbdf,bfdk->xyzjk", legs, trip), [sp] * 3, [sp, hs], aw))
    rep.add(check_identity(
        "bracket_legs_yxz", "{x0,y0,z0} ⊗ x1y1z1 = {x0,y0,z0} ⊗ y1x1z1",
        rhs, einsum("xyzjbdf,dbfk->xyzjk", legs, trip), [sp] * 3, [sp, hs], aw))
    return rep


def check_hopf_module(m: PoissonTriLieHopfModule, all_witnesses=False, constituents=True) -> CheckReport:
    A, M, hs = m.algebra.space, m.space, m.hopf.space
    h = m.hopf
    rhoA, rhoM, act, D = m.algebra.rho, m.rho, m.act, m.tri
    aw = all_witnesses
    rep = CheckReport("Poisson 3-Lie (A,H)-Hopf module")
    if constituents:
        rep.extend(check_poisson_module(m.base, aw))
        rep.extend(check_comodule(m.coaction, aw), prefix="coaction.")
    rep.add(check_identity(
        "hopf_module", "ρ(a·m) = a0·m0 ⊗ a1m1",
        einsum("aiw,wjk->aijk", act, rhoM),
        einsum("apq,irs,prj,qsk->aijk", rhoA, rhoM, act, h.mul), [A, M], [M, hs], aw))
    legs = einsum("xab,ycd,acej,ief->xyijbdf", rhoA, rhoA, D, rhoM)
    rep.add(check_identity(
        "tri_action_colinear", "ρ((x,y)<>m) = (x0,y0)<>m0 ⊗ x1y1m1",
        einsum("xyiw,wjk->xyijk", D, rhoM),
        einsum("xyijbdf,bdfk->xyijk", legs, h.triple_mul), [A, A, M], [M, hs], aw))
    return rep


def coinvariants(obj) -> Subspace:
    """``M^coH = {m : rho(m) = m (x) 1_H}`` for a coaction or anything carrying one."""
    c = obj if isinstance(obj, Coaction) else obj.coaction
    F, m, d = c.field, c.module_space.dim, c.hopf.dim
    diff = c.rho.matrix - np.kron(F.eye(m), c.hopf.unit.reshape(d, 1))
    return Subspace(c.module_space, kernel_basis(F.reduce(diff), F))


def acoH_invariants(obj) -> Subspace:
    """``M^{AcoH} = M^A ∩ M^coH``; an algebra is read as a module over itself."""
    m = as_hopf_module(obj) if isinstance(obj, ComodulePoissonTriLieAlgebra) else obj
    return intersect([module_invariants(m.base), coinvariants(m.coaction)])


def _image_witness(sub: Subspace, vecs, inputs, index, what) -> Witness | None:
    for v, lab, idx in zip(vecs, inputs, index):
        if not sub.contains(v):
            return Witness(idx, lab, lhs=sub.ambient.coefficients(v), note=f"not in {what}")
    return None


def _closure_result(name, anchor, sub, vecs, inputs, index, what, downgrade) -> CheckResult:
    w = _image_witness(sub, vecs, inputs, index, what)
    if w is None:
        return CheckResult(name, PASS, anchor)
    return CheckResult(name, WARN if downgrade else FAIL, anchor, [w],
                       "hypotheses failed, closure not expected" if downgrade else "")


def _products(sub: Subspace, other: Subspace, tensor: SparseTensor):
    """Values ``t(u, v)`` for basis vectors ``u`` of ``sub`` and ``v`` of ``other``."""
    t = tensor.to_dense()
    F = sub.field
    vecs, labels, index = [], [], []
    for i, u in enumerate(sub.basis):
        for j, v in enumerate(other.basis):
            vecs.append(F.reduce(np.einsum("a,b,abo->o", u, v, t)))
            labels.append((sub.space.labels[i], other.space.labels[j]))
            index.append((i, j))
    return vecs, labels, index


def _brackets(sub: Subspace, tensor: SparseTensor):
    t = SparseTensor.from_dense(sub.field, sub.basis)
    vals = einsum("ax,by,cz,xyzo->abco", t, t, t, tensor).to_dense()
    vecs, labels, index = [], [], []
    n = sub.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                vecs.append(vals[i, j, k])
                labels.append(tuple(sub.space.labels[q] for q in (i, j, k)))
                index.append((i, j, k))
    return vecs, labels, index


def _comodule_images(sub: Subspace, c: Coaction):
    F = sub.field
    vecs, labels, index = [], [], []
    for k, C in enumerate(c.operators):
        for i, v in enumerate(sub.basis):
            vecs.append(F.matmul(C, v))
            labels.append((sub.space.labels[i], c.hopf.space.labels[k]))
            index.append((i, k))
    return vecs, labels, index


def check_invariant_subspaces(m, all_witnesses=False) -> CheckReport:
    """Compute the invariant subspaces and test the closure properties they should have.

    Failures are downgraded to warnings when the input itself breaks the
    colinearity of the bracket or of the 3-Lie action.
    """
    if isinstance(m, ComodulePoissonTriLieAlgebra):
        m = as_hopf_module(m)
    a = m.algebra
    rep = CheckReport("invariant subspaces")
    alg_ok = check_comodule_poisson_algebra(a, constituents=False)["bracket_colinear"].passed
    mod_ok = check_hopf_module(m, constituents=False)["tri_action_colinear"].passed
    down = not (alg_ok and mod_ok)

    AA, AcoH = trilie_center(a.base), coinvariants(a.coaction)
    B = intersect([AA, AcoH])
    MA, McoH = module_invariants(m.base), coinvariants(m.coaction)
    MB = intersect([MA, McoH])
    mul, T, act = a.mul, a.bracket, m.act

    rep.add(_closure_result("coinvariants_closed_under_product", "A^coH · A^coH ⊆ A^coH",
                            AcoH, *_products(AcoH, AcoH, mul), "A^coH", not alg_ok))
    rep.add(_closure_result("coinvariants_closed_under_bracket", "{A^coH, A^coH, A^coH} ⊆ A^coH",
                            AcoH, *_brackets(AcoH, T), "A^coH", not alg_ok))
    rep.add(_closure_result("lie_invariants_subcomodule", "ρ(M^A) ⊆ M^A ⊗ H",
                            MA, *_comodule_images(MA, m.coaction), "M^A", down))
    rep.add(_closure_result("center_subcomodule", "ρ(A^A) ⊆ A^A ⊗ H",
                            AA, *_comodule_images(AA, a.coaction), "A^A", not alg_ok))
    rep.add(_closure_result("B_closed_under_product", "B · B ⊆ B",
                            B, *_products(B, B, mul), "B", not alg_ok))
    rep.add(_closure_result("B_closed_under_bracket", "{B, B, B} ⊆ B",
                            B, *_brackets(B, T), "B", not alg_ok))
    rep.add(_closure_result("B_acts_on_invariants", "B · M^{AcoH} ⊆ M^{AcoH}",
                            MB, *_products(B, MB, act), "M^{AcoH}", down))
    rep.info.update({"dim A^A": AA.dim, "dim A^coH": AcoH.dim, "dim B": B.dim,
                     "dim M^A": MA.dim, "dim M^coH": McoH.dim, "dim M^{AcoH}": MB.dim})
    if not all_witnesses:
        for r in rep.results:
            del r.witnesses[1:]
    return rep
