"""The comodule ``N ⊗ H`` built from a module ``N``, and the maps gamma, gamma'."""

from __future__ import annotations

import numpy as np

from ..hopf_compat import ComodulePoissonTriLieAlgebra, PoissonTriLieHopfModule
from ..linalg import LinearMap
from ..report import FAIL, PASS, CheckReport, CheckResult
from ..structures import Coaction
from ..tensor import SparseTensor, einsum
from ..trilie import PoissonTriLieModule, TriLieModuleAction
from .common import (
    A_LINEAR,
    H_COLINEAR,
    TRI_LINEAR,
    HomWitness,
    HypothesisError,
    TriLieComodule,
    morphism_space,
    view,
)


def tensor_with_H(n, a: ComodulePoissonTriLieAlgebra):
    """``N ⊗ H`` with ``(x,y)<>(n⊗h) = (x0,y0)<>n ⊗ x1y1h`` and ``ρ(n⊗h) = n⊗h1⊗h2``.

    A :class:`PoissonTriLieModule` also gets ``x·(n⊗h) = x0·n ⊗ x1h``, which
    needs ``H`` commutative; a bare :class:`TriLieModuleAction` gives a
    :class:`TriLieComodule`.
    """
    h = a.hopf
    F = a.field
    poisson = isinstance(n, PoissonTriLieModule)
    tri = n.tri_action if poisson else n
    if not isinstance(tri, TriLieModuleAction):
        raise TypeError("expected a PoissonTriLieModule or a TriLieModuleAction")
    if poisson and not h.is_commutative:
        raise HypothesisError(
            "the Poisson 3-Lie (A,H)-Hopf module N⊗H needs a commutative H; "
            "use the bare 3-Lie action for the comodule-only construction")
    N = tri.module_space
    space = N.tensor(h.space)
    rhoA = a.rho
    eyeN = SparseTensor.from_dense(F, F.eye(N.dim))
    D = einsum("xab,ycd,acnp,bdhq->xynhpq", rhoA, rhoA, tri.action, h.triple_mul)
    D = D.merge([[0], [1], [2, 3], [4, 5]], arity=3)
    rho = einsum("np,hqk->nhpqk", eyeN, h.comul).merge([[0, 1], [2, 3], [4]], arity=1)
    coaction = Coaction.from_tensor(space, h, rho)
    tri_out = TriLieModuleAction(a.space, space, D)
    if not poisson:
        return TriLieComodule(a, tri_out, coaction)
    act = einsum("xab,anp,bhq->xnhpq", rhoA, n.a_action, h.mul).merge([[0], [1, 2], [3, 4]], arity=2)
    return PoissonTriLieHopfModule(a, PoissonTriLieModule(a.base, space, act, tri_out), coaction)


def _hom_properties(poisson: bool) -> set:
    props = {TRI_LINEAR}
    if poisson:
        props.add(A_LINEAR)
    return props


def gamma(f, m, n_h, n) -> HomWitness:
    """``γ(f) = (id⊗ε)∘f`` for ``f: M -> N⊗H``; returns a verified map ``M -> N``."""
    fm = f.map if isinstance(f, HomWitness) else f
    poisson = A_LINEAR in view(n_h).properties() and A_LINEAR in view(m).properties()
    HomWitness.verify(fm, m, n_h, _hom_properties(poisson) | {H_COLINEAR})
    h = view(n_h).coaction.hopf
    N = view(n).space
    proj = LinearMap(view(n_h).space, N, np.kron(N.field.eye(N.dim), h.counit.matrix))
    out = proj @ fm
    return HomWitness.verify(out.with_spaces(view(m).space, N), m, n, _hom_properties(poisson))


def gamma_prime(g, m, n, n_h) -> HomWitness:
    """``γ'(g) = (g⊗id)∘ρ_M`` for ``g: M -> N``; returns a verified map ``M -> N⊗H``."""
    gm = g.map if isinstance(g, HomWitness) else g
    vm = view(m)
    poisson = A_LINEAR in view(n_h).properties() and A_LINEAR in vm.properties()
    props = _hom_properties(poisson)
    HomWitness.verify(gm, m, n, props)
    d = vm.coaction.hopf.dim
    F = vm.field
    mat = F.matmul(np.kron(gm.matrix, F.eye(d)), vm.rho)
    out = LinearMap(vm.space, view(n_h).space, mat)
    return HomWitness.verify(out, m, n_h, props | {H_COLINEAR})



def gamma_report(m, n) -> CheckReport:
    """γ and γ' are mutually inverse on complete bases of ``Hom(M, N)`` and ``Hom(M, N⊗H)``.

    ``m`` is a Hopf module; ``n`` a module over the same algebra (a
    :class:`PoissonTriLieModule` or a bare :class:`TriLieModuleAction`).
    """
    vm = view(m)
    a = m.algebra
    n_h = tensor_with_H(n, a)
    poisson = A_LINEAR in view(n).properties()
    props = _hom_properties(poisson)
    homs_n = morphism_space(m, n, props & vm.properties())
    homs_nh = morphism_space(m, n_h, props | {H_COLINEAR})
    rep = CheckReport("γ and γ'")
    rep.info.update({"dim Hom(M, N)": len(homs_n), "dim Hom(M, N⊗H)": len(homs_nh)})
    rep.add(CheckResult("hom_dimensions_agree", PASS if len(homs_n) == len(homs_nh) else FAIL,
                        "dim Hom(M, N) = dim Hom(M, N⊗H)"))

    def roundtrip(name, anchor, homs, there, back):
        for k, f in enumerate(homs):
            g = back(there(f).map).map
            if np.any(g.matrix != f.matrix):
                return CheckResult(name, FAIL, anchor, detail=f"basis map {k} is not recovered")
        return CheckResult(name, PASS, anchor)

    rep.add(roundtrip("gamma_after_gamma_prime", "γ∘γ' = id on Hom(M, N)", homs_n,
                      lambda g: gamma_prime(g, m, n, n_h), lambda f: gamma(f, m, n_h, n)))
    rep.add(roundtrip("gamma_prime_after_gamma", "γ'∘γ = id on Hom(M, N⊗H)", homs_nh,
                      lambda f: gamma(f, m, n_h, n), lambda g: gamma_prime(g, m, n, n_h)))
    return rep
