"""The projection ``p_M``, the section ``lambda`` and the deformed action ``<>'``."""

from __future__ import annotations

from ..hopf_compat import (
    ComodulePoissonTriLieAlgebra,
    PoissonTriLieHopfModule,
    as_hopf_module,
    coinvariants,
)
from ..linalg import LinearMap, image
from ..report import CheckReport, CheckResult, FAIL, PASS, check_identity
from ..tensor import SparseTensor, einsum
from ..trilie import TriLieModuleAction, check_trilie_module
from .common import H_COLINEAR, TRI_LINEAR, HypothesisError, PhiMap, morphism_report
from .tensor_h import tensor_with_H


def _module(m) -> PoissonTriLieHopfModule:
    return as_hopf_module(m) if isinstance(m, ComodulePoissonTriLieAlgebra) else m


def _require_phi(phi: PhiMap, algebra_map=False):
    rep = phi.check()
    if not rep.passed:
        bad = rep.failures()[0]
        raise HypothesisError(f"phi fails {bad.name} ({bad.anchor})", bad.witness, rep)
    if algebra_map and not phi.is_algebra_map:
        raise HypothesisError("phi must be an algebra map here", report=rep)


def p_tensor(m, phi: PhiMap) -> SparseTensor:
    """``P[i, o]``: coefficient of ``e_o`` in ``p_M(e_i) = φ(S⁻¹(m1))·m0``."""
    m = _module(m)
    return einsum("ijk,kl,la,ajo->io", m.rho, m.hopf.Sinv, phi.tensor, m.act, field=m.field)


def p_projection(m, phi: PhiMap) -> LinearMap:
    m = _module(m)
    return LinearMap(m.space, m.space, p_tensor(m, phi).to_dense().T.copy())


def projection_report(m, phi: PhiMap) -> CheckReport:
    """``p_M`` is idempotent with image ``M^coH``."""
    m = _module(m)
    p = p_projection(m, phi)
    rep = CheckReport("projection p_M")
    rep.add(check_identity(
        "idempotent", "p_M∘p_M = p_M",
        SparseTensor.from_dense(m.field, (p @ p).matrix), SparseTensor.from_dense(m.field, p.matrix),
        [m.space], [m.space]))
    coh = coinvariants(m.coaction)
    im = image(p)
    rep.add(CheckResult("image_is_coinvariants", PASS if im == coh else FAIL, "Im p_M = M^coH",
                        detail="" if im == coh else f"image {im.render()} vs {coh.render()}"))
    rep.info.update({"rank p_M": p.rank(), "dim M^coH": coh.dim})
    return rep


def lambda_section(m, phi: PhiMap) -> tuple:
    """``λ(m⊗h) = φ(h S⁻¹(m1))·m0`` together with its verification report."""
    m = _module(m)
    a, h = m.algebra, m.hopf
    _require_phi(phi)
    if not (h.is_commutative or phi.is_algebra_map):
        raise HypothesisError("λ needs H commutative or φ an algebra map; neither holds")
    F = m.field
    lam = einsum("ijk,kl,hlq,qa,ajo->iho", m.rho, h.Sinv, h.mul, phi.tensor, m.act, field=F)
    MH = m.space.tensor(h.space)
    lam_map = LinearMap(MH, m.space, lam.merge([[0, 1], [2]]).to_dense().T.copy())
    rep = CheckReport("section λ")
    comp = lam_map @ m.coaction.rho
    rep.add(check_identity(
        "left_inverse_of_coaction", "λ∘ρ_M = id_M",
        SparseTensor.from_dense(F, comp.matrix), SparseTensor.from_dense(F, F.eye(m.dim)),
        [m.space], [m.space]))
    src = tensor_with_H(m.base.tri_action, a)
    rep.extend(morphism_report(lam_map, src, m, {TRI_LINEAR, H_COLINEAR}))
    return lam_map, rep


def prime_action(m, phi: PhiMap) -> TriLieModuleAction:
    """``(x,y)<>'m = p_M((x,y)<>m)``; needs φ to be a colinear algebra map."""
    m = _module(m)
    _require_phi(phi, algebra_map=True)
    D = einsum("xyiw,wo->xyio", m.tri, p_tensor(m, phi))
    return TriLieModuleAction(m.algebra.space, m.space, D)


def deformed_action_report(m, phi: PhiMap, all_witnesses=False) -> CheckReport:
    m = _module(m)
    a = m.algebra
    A, M, F = a.space, m.space, m.field
    aw = all_witnesses
    P = p_tensor(m, phi)
    PA = p_tensor(a, phi)
    Dp = prime_action(m, phi).action
    act, D, rho = m.act, m.tri, m.rho
    rep = CheckReport("deformed action <>'")
    rep.add(check_identity(
        "p_multiplicative", "p_M(a·m) = p_A(a)·p_M(m)",
        einsum("aiw,wo->aio", act, P), einsum("ab,in,bno->aio", PA, P, act), [A, M], [M], aw))
    rep.add(check_identity(
        "prime_absorbs_p", "(x,y)<>'p_M(m) = (x,y)<>'m",
        einsum("iw,xywo->xyio", P, Dp), Dp, [A, A, M], [M], aw))
    rep.extend(check_trilie_module(TriLieModuleAction(A, M, Dp), a.base.bracket, aw), prefix="prime.")
    rep.add(check_identity(
        "action_through_p", "(x,y)<>p_M(m) = φ(x1y1)·((x0,y0)<>'p_M(m))",
        einsum("iw,xywo->xyio", P, D),
        einsum("xab,ycd,bdq,qe,iw,acwv,evo->xyio", a.rho, a.rho, a.hopf.mul, phi.tensor, P, Dp, act),
        [A, A, M], [M], aw))
    rep.add(check_identity(
        "reconstruction", "φ(m1)·p_M(m0) = m",
        einsum("ijk,ka,jw,awo->io", rho, phi.tensor, P, act),
        SparseTensor.from_dense(F, F.eye(M.dim)), [M], [M], aw))
    return rep
