"""The adjoint pair ``F = A ⊗_B -`` and ``G = (-)^{AcoH}`` between B-modules and Hopf modules."""

from __future__ import annotations

import numpy as np

from ..hopf_compat import ComodulePoissonTriLieAlgebra
from ..linalg import LinAlgError, LinearMap, Subspace
from ..report import FAIL, PASS, CheckReport, CheckResult, check_identity
from ..structures import StructureError
from ..tensor import SparseTensor
from .common import ALL_PROPERTIES, HomWitness, morphism_space
from .fundamental import (
    BalancedTensorModule,
    BModule,
    alpha_map,
    bmodule_maps,
    is_b_linear,
    tensor_over_B,
)
from .projection import _module


def F_obj(a: ComodulePoissonTriLieAlgebra, n: BModule) -> BalancedTensorModule:
    return tensor_over_B(a, n)


def G_obj(m, B=None) -> BModule:
    return BModule.from_invariants(_module(m), B)


def unit_map(a: ComodulePoissonTriLieAlgebra, n: BModule, fn: BalancedTensorModule | None = None):
    """``η_N: N -> G(F(N))``, ``n -> 1 ⊗ n``; returns ``(map, F(N), G(F(N)))``."""
    fn = fn or F_obj(a, n)
    gfn = G_obj(fn.module, n.B)
    F = a.field
    one = a.unit
    cols = []
    for i in range(n.dim):
        amb = np.kron(one, n.space.basis_vector(i))
        v = fn.quotient.projection(amb)
        cols.append(_coords(gfn, v, "η_N(n) lies outside G(F(N))"))
    mat = np.array(cols, dtype=F.dtype).T if cols else F.zeros((gfn.dim, 0))
    return LinearMap(n.space, gfn.space, mat.reshape(gfn.dim, n.dim)), fn, gfn


def counit_map(m, fgm: BalancedTensorModule | None = None) -> tuple:
    """``ε_M: F(G(M)) -> M``, ``a ⊗ m -> a·m`` (this is α)."""
    alpha, bt = alpha_map(_module(m), fgm)
    return alpha.map, bt


def _coords(n: BModule, v, msg) -> np.ndarray:
    """Coordinates of ``v`` (a vector of the ambient module) in the basis of ``n``."""
    sub = Subspace(n.inclusion.codomain, n.inclusion.matrix.T.copy())
    try:
        return sub.coordinates(v)
    except LinAlgError as exc:
        raise StructureError(msg) from exc


def F_map(f: LinearMap, fn1: BalancedTensorModule, fn2: BalancedTensorModule) -> LinearMap:
    """``F(f) = id_A ⊗ f`` on balanced tensor products."""
    F = f.field
    A = fn1.module.algebra.space
    amb = np.kron(F.eye(A.dim), f.matrix)
    mat = F.matmul(fn2.quotient.projection.matrix, F.matmul(amb, fn1.quotient.section.matrix))
    return LinearMap(fn1.space, fn2.space, mat)


def G_map(f: LinearMap, gm1: BModule, gm2: BModule) -> LinearMap:
    """Restriction of ``f`` to the ``AcoH``-invariants, in their coordinates."""
    F = f.field
    vals = F.matmul(f.matrix, gm1.inclusion.matrix)
    cols = [_coords(gm2, vals[:, i], "f does not preserve the invariants") for i in range(gm1.dim)]
    mat = np.array(cols, dtype=F.dtype).T if cols else F.zeros((gm2.dim, 0))
    return LinearMap(gm1.space, gm2.space, mat.reshape(gm2.dim, gm1.dim))


def psi(f: LinearMap, a, n: BModule, fn: BalancedTensorModule, gm: BModule) -> LinearMap:
    """``ψ(f)(n) = f(1 ⊗ n)``, as a map ``N -> G(M)``."""
    F = f.field
    cols = []
    for i in range(n.dim):
        v = f(fn.quotient.projection(np.kron(a.unit, n.space.basis_vector(i))))
        cols.append(_coords(gm, v, "ψ(f) does not land in M^{AcoH}"))
    mat = np.array(cols, dtype=F.dtype).T if cols else F.zeros((gm.dim, 0))
    return LinearMap(n.space, gm.space, mat.reshape(gm.dim, n.dim))


def psi_prime(g: LinearMap, a, n: BModule, fn: BalancedTensorModule, m) -> LinearMap:
    """``ψ'(g)(a ⊗ n) = a·g(n)``, as a map ``F(N) -> M``."""
    m = _module(m)
    F = g.field
    gm = G_obj(m, n.B)
    act = m.act.to_dense()
    gv = F.matmul(gm.inclusion.matrix, g.matrix)  # (M, N): column i is g(n_i) in M
    amb = F.zeros((m.dim, a.dim * n.dim))
    for x in range(a.dim):
        amb[:, x * n.dim:(x + 1) * n.dim] = F.matmul(act[x].T, gv)
    if np.any(F.matmul(amb, fn.quotient.relations.basis.T) != 0):
        raise StructureError("ψ'(g) does not vanish on the balancing relations; g is not B-linear")
    return LinearMap(fn.space, m.space, F.matmul(amb, fn.quotient.section.matrix))


def adjunction_report(a: ComodulePoissonTriLieAlgebra, n: BModule, m) -> CheckReport:
    """ψ, ψ' are mutually inverse on complete hom-space bases; unit and counit obey the triangle laws."""
    m = _module(m)
    F = a.field
    rep = CheckReport("adjunction F ⊣ G")
    fn = F_obj(a, n)
    gm = G_obj(m, n.B)
    homs_f = morphism_space(fn.module, m, ALL_PROPERTIES)
    homs_g = bmodule_maps(n, gm)
    rep.info.update({"dim Hom(F(N), M)": len(homs_f), "dim Hom_B(N, G(M))": len(homs_g)})
    rep.add(CheckResult("hom_dimensions_agree", PASS if len(homs_f) == len(homs_g) else FAIL,
                        "dim Hom(F(N), M) = dim Hom_B(N, G(M))"))

    def same(name, anchor, lhs: LinearMap, rhs: LinearMap, space_in, space_out):
        return check_identity(name, anchor, SparseTensor.from_dense(F, lhs.matrix),
                              SparseTensor.from_dense(F, rhs.matrix), [space_out, space_in], [])

    ok_back, ok_lin = True, True
    for k, f in enumerate(homs_f):
        g = psi(f, a, n, fn, gm)
        ok_lin = ok_lin and is_b_linear(g, n, gm)
        r = same(f"psi_prime_psi[{k}]", "ψ'(ψ(f)) = f", psi_prime(g, a, n, fn, m), f, fn.space, m.space)
        ok_back = ok_back and r.passed
        if not r.passed:
            rep.add(r)
    rep.add(CheckResult("psi_lands_in_B_linear_maps", PASS if ok_lin else FAIL, "ψ(f) is B-linear"))
    rep.add(CheckResult("psi_prime_after_psi", PASS if ok_back else FAIL, "ψ'∘ψ = id"))
    ok_fwd, ok_mor = True, True
    for k, g in enumerate(homs_g):
        f = psi_prime(g, a, n, fn, m)
        try:
            HomWitness.verify(f, fn, m, ALL_PROPERTIES)
        except StructureError:
            ok_mor = False
        r = same(f"psi_psi_prime[{k}]", "ψ(ψ'(g)) = g", psi(f, a, n, fn, gm), g, n.space, gm.space)
        ok_fwd = ok_fwd and r.passed
        if not r.passed:
            rep.add(r)
    rep.add(CheckResult("psi_prime_is_morphism", PASS if ok_mor else FAIL,
                        "ψ'(g) is A-linear, 3-Lie A-linear and H-colinear"))
    rep.add(CheckResult("psi_after_psi_prime", PASS if ok_fwd else FAIL, "ψ∘ψ' = id"))

    eps_m, fgm = counit_map(m)
    rep.add(same("psi_of_counit", "ψ(ε_M) = id_{G(M)}", psi(eps_m, a, gm, fgm, gm),
                 LinearMap.identity(gm.space), gm.space, gm.space))

    eta_n, _, gfn = unit_map(a, n, fn)
    fgfn = F_obj(a, gfn)
    eps_fn, _ = counit_map(fn.module, fgfn)
    first = eps_fn @ F_map(eta_n, fn, fgfn)
    rep.add(same("triangle_F", "ε_{F(N)} ∘ F(η_N) = id_{F(N)}", first,
                 LinearMap.identity(fn.space), fn.space, fn.space))

    eta_gm, _, ggm = unit_map(a, gm, fgm)
    second = G_map(eps_m, ggm, gm) @ eta_gm
    rep.add(same("triangle_G", "G(ε_M) ∘ η_{G(M)} = id_{G(M)}", second,
                 LinearMap.identity(gm.space), gm.space, gm.space))
    return rep
