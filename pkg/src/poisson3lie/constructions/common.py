"""Uniform access to module-like objects, morphism checks and the map phi."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..hopf_compat import ComodulePoissonTriLieAlgebra, PoissonTriLieHopfModule
from ..linalg import LinearMap, VectorSpace, maps_of, solve_linear_maps
from ..report import FAIL, PASS, CheckReport, CheckResult, Witness, check_identity
from ..structures import Coaction, HopfStructure, StructureError, check_comodule
from ..tensor import SparseTensor, einsum
from ..trilie import PoissonTriLieModule, TriLieModuleAction, check_trilie_module

A_LINEAR = "A-linear"
TRI_LINEAR = "3-Lie A-linear"
H_COLINEAR = "H-colinear"
ALL_PROPERTIES = (A_LINEAR, TRI_LINEAR, H_COLINEAR)


class HypothesisError(StructureError):
    """A construction was asked for outside the hypotheses that make it valid."""

    def __init__(self, message, witness: Witness | None = None, report: CheckReport | None = None):
        super().__init__(message)
        self.witness = witness
        self.report = report


@dataclass(frozen=True, eq=False)
class TriLieComodule:
    """A 3-Lie A-module with a compatible H-coaction (no associative action)."""

    algebra: ComodulePoissonTriLieAlgebra
    tri_action: TriLieModuleAction
    coaction: Coaction

    @property
    def space(self) -> VectorSpace:
        return self.tri_action.module_space


def check_trilie_comodule(m: TriLieComodule, all_witnesses=False) -> CheckReport:
    A, M, hs = m.algebra.space, m.space, m.algebra.hopf.space
    rhoA, rhoM, D = m.algebra.rho, m.coaction.tensor, m.tri_action.action
    rep = CheckReport("(A,H)-comodule")
    rep.extend(check_trilie_module(m.tri_action, m.algebra.base.bracket, all_witnesses))
    rep.extend(check_comodule(m.coaction, all_witnesses), prefix="coaction.")
    legs = einsum("xab,ycd,acej,ief->xyijbdf", rhoA, rhoA, D, rhoM)
    rep.add(check_identity(
        "tri_action_colinear", "ρ((x,y)<>m) = (x0,y0)<>m0 ⊗ x1y1m1",
        einsum("xyiw,wjk->xyijk", D, rhoM),
        einsum("xyijbdf,bdfk->xyijk", legs, m.algebra.hopf.triple_mul), [A, A, M], [M, hs],
        all_witnesses))
    return rep


@dataclass(frozen=True, eq=False)
class ModuleView:
    """Structure maps of a module as dense operator matrices (column convention)."""

    space: VectorSpace
    algebra_space: VectorSpace | None = None
    act: SparseTensor | None = None
    tri: SparseTensor | None = None
    coaction: Coaction | None = None

    @property
    def field(self):
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def act_ops(self) -> list:
        t = self.act.to_dense()
        return [t[a].T.copy() for a in range(t.shape[0])]

    @cached_property
    def tri_ops(self) -> dict:
        t = self.tri.to_dense()
        n = t.shape[0]
        return {(x, y): t[x, y].T.copy() for x in range(n) for y in range(x + 1, n)}

    @property
    def rho(self) -> np.ndarray | None:
        return None if self.coaction is None else self.coaction.rho.matrix

    def properties(self) -> set:
        out = set()
        if self.act is not None:
            out.add(A_LINEAR)
        if self.tri is not None:
            out.add(TRI_LINEAR)
        if self.coaction is not None:
            out.add(H_COLINEAR)
        return out


def view(obj) -> ModuleView:
    if isinstance(obj, ModuleView):
        return obj
    if hasattr(obj, "module") and isinstance(obj.module, PoissonTriLieHopfModule):
        obj = obj.module
    if isinstance(obj, PoissonTriLieHopfModule):
        return ModuleView(obj.space, obj.algebra.space, obj.act, obj.tri, obj.coaction)
    if isinstance(obj, TriLieComodule):
        return ModuleView(obj.space, obj.algebra.space, None, obj.tri_action.action, obj.coaction)
    if isinstance(obj, PoissonTriLieModule):
        return ModuleView(obj.module_space, obj.algebra.space, obj.a_action, obj.tri_action.action)
    if isinstance(obj, TriLieModuleAction):
        return ModuleView(obj.module_space, obj.algebra_space, None, obj.action)
    if isinstance(obj, VectorSpace):
        return ModuleView(obj)
    raise TypeError(f"cannot read module structure from {type(obj).__name__}")


def _first_bad(diff: np.ndarray):
    nz = np.argwhere(diff != 0)
    return None if len(nz) == 0 else tuple(int(i) for i in nz[0])


def _morphism_residuals(X, src: ModuleView, dst: ModuleView, prop):
    """Residual arrays (one per generator) that vanish iff ``X`` has ``prop``."""
    F = src.field
    if prop == A_LINEAR:
        return [(f"a={src.algebra_space.labels[a]}", F.matmul(X, La) - F.matmul(Lb, X))
                for a, (La, Lb) in enumerate(zip(src.act_ops, dst.act_ops))]
    if prop == TRI_LINEAR:
        sl = src.algebra_space.labels
        return [(f"(x,y)=({sl[x]},{sl[y]})", F.matmul(X, Ds) - F.matmul(dst.tri_ops[(x, y)], X))
                for (x, y), Ds in src.tri_ops.items()]
    if prop == H_COLINEAR:
        d = src.coaction.hopf.dim
        return [("ρ", F.matmul(dst.rho, X) - F.matmul(np.kron(X, F.eye(d)), src.rho))]
    raise ValueError(f"unknown property {prop!r}")


def morphism_report(f: LinearMap, src, dst, properties=None) -> CheckReport:
    """Check each requested property of ``f: src -> dst`` on every generator."""
    s, t = view(src), view(dst)
    props = sorted(properties if properties is not None else s.properties() & t.properties())
    rep = CheckReport("morphism")
    X = f.matrix
    for prop in props:
        res = CheckResult(prop, PASS, _ANCHORS[prop])
        for tag, r in _morphism_residuals(X, s, t, prop):
            bad = _first_bad(r)
            if bad is not None:
                col = bad[1]
                res = CheckResult(prop, FAIL, _ANCHORS[prop], [Witness(
                    (col,), (tag, s.space.labels[col]), note="residual nonzero")])
                break
        rep.add(res)
    return rep


_ANCHORS = {
    A_LINEAR: "f(a·m) = a·f(m)",
    TRI_LINEAR: "f((x,y)<>m) = (x,y)<>f(m)",
    H_COLINEAR: "ρ(f(m)) = (f⊗id)ρ(m)",
}


@dataclass(frozen=True, eq=False)
class HomWitness:
    map: LinearMap
    verified_properties: frozenset = field(default_factory=frozenset)

    @classmethod
    def verify(cls, f: LinearMap, src, dst, properties) -> "HomWitness":
        rep = morphism_report(f, src, dst, properties)
        if not rep.passed:
            bad = rep.failures()[0]
            raise HypothesisError(f"map is not {bad.name}", bad.witness, rep)
        return cls(f, frozenset(properties))


def morphism_space(src, dst, properties=None) -> list:
    """A basis (as LinearMaps) of all linear maps ``src -> dst`` with the given properties."""
    s, t = view(src), view(dst)
    props = sorted(properties if properties is not None else s.properties() & t.properties())
    cons = []
    for prop in props:
        cons.append(lambda X, prop=prop: np.concatenate(
            [r.reshape(-1) for _, r in _morphism_residuals(X, s, t, prop)]
            or [np.empty(0, dtype=s.field.dtype)]))
    sub = solve_linear_maps(s.space, t.space, cons)
    return maps_of(sub, s.space, t.space)


@dataclass(frozen=True, eq=False)
class PhiMap:
    """A unital H-colinear map ``H -> A^A``."""

    hopf: HopfStructure
    target: ComodulePoissonTriLieAlgebra
    map: LinearMap

    def __post_init__(self):
        if self.map.domain != self.hopf.space or self.map.codomain != self.target.space:
            raise StructureError("phi must map H to A")

    @classmethod
    def identity(cls, a: ComodulePoissonTriLieAlgebra) -> "PhiMap":
        return cls(a.hopf, a, LinearMap.identity(a.space).with_spaces(a.hopf.space, a.space))

    @cached_property
    def tensor(self) -> SparseTensor:
        """``phi[h, a]``: coefficient of ``e_a`` in ``phi(h_h)``."""
        return SparseTensor.from_dense(self.map.field, self.map.matrix.T.copy(), arity=1)

    @cached_property
    def is_algebra_map(self) -> bool:
        return self._multiplicative().passed

    def _multiplicative(self, all_witnesses=False) -> CheckResult:
        h, a = self.hopf, self.target
        return check_identity(
            "algebra_map", "φ(hk) = φ(h)φ(k)",
            einsum("hkw,wa->hka", h.mul, self.tensor),
            einsum("hb,kc,bca->hka", self.tensor, self.tensor, a.mul), [h.space] * 2, [a.space],
            all_witnesses)

    def check(self, all_witnesses=False) -> CheckReport:
        h, a = self.hopf, self.target
        F, phi = a.field, self.tensor
        rep = CheckReport("phi: H -> A^A")
        n = a.dim
        rep.add(check_identity(
            "image_in_center", "{φ(h), y, z} = 0",
            einsum("ha,ayzo->hyzo", phi, a.bracket), SparseTensor.zeros(F, (h.dim, n, n, n)),
            [h.space, a.space, a.space], [a.space], all_witnesses))
        rep.add(check_identity(
            "unital", "φ(1_H) = 1_A",
            einsum("h,ha->a", h.unit, phi, field=F), SparseTensor.from_dense(F, a.unit),
            [], [a.space], all_witnesses))
        rep.add(check_identity(
            "colinear", "ρ_A∘φ = (φ⊗id)∘Δ",
            einsum("ha,ajk->hjk", phi, a.rho), einsum("hbk,bj->hjk", h.comul, phi),
            [h.space], [a.space, h.space], all_witnesses))
        mult = self._multiplicative(all_witnesses)
        rep.info["algebra_map"] = mult.passed
        return rep
