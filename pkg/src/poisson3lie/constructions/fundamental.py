"""Balanced tensor products over ``B = A^{AcoH}`` and the isomorphism ``A ⊗_B M^{AcoH} ≅ M``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..hopf_compat import (
    ComodulePoissonTriLieAlgebra,
    PoissonTriLieHopfModule,
    acoH_invariants,
    as_hopf_module,
    check_hopf_module,
    coinvariants,
)
from ..linalg import LinearMap, QuotientSpace, Subspace, VectorSpace, quotient, rref
from ..report import FAIL, PASS, WARN, CheckReport, CheckResult, Witness, check_identity
from ..structures import Coaction, StructureError
from ..tensor import SparseTensor, einsum
from ..trilie import PoissonTriLieModule, TriLieModuleAction
from .common import ALL_PROPERTIES, HomWitness, HypothesisError, PhiMap
from .projection import _module, p_tensor, prime_action


def _wrap(label: str) -> str:
    return f"({label})" if any(c in label for c in " ⊗+-") else label


@dataclass(frozen=True, eq=False)
class BModule:
    """A module over a subalgebra ``B`` of ``A`` (``B`` given as a subspace of ``A``).

    ``action[b, i, o]`` is the coefficient of ``n_o`` in ``b_b · n_i``.  When the
    module is ``M^{AcoH}`` the embedding into ``M`` is kept in ``inclusion``.
    """

    algebra: ComodulePoissonTriLieAlgebra
    B: Subspace
    space: VectorSpace
    action: np.ndarray
    inclusion: LinearMap | None = None

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def operators(self) -> list:
        return [self.action[b].T.copy() for b in range(self.B.dim)]

    @classmethod
    def from_invariants(cls, m, B: Subspace | None = None) -> "BModule":
        """``M^{AcoH}`` with the restricted action of ``B``."""
        m = _module(m)
        a = m.algebra
        B = default_B(a) if B is None else B
        N = acoH_invariants(m)
        F = m.field
        prods = einsum("bw,nj,wjo->bno", B.basis, N.basis, m.act, field=F).to_dense()
        action = F.zeros((B.dim, N.dim, N.dim))
        for b in range(B.dim):
            for i in range(N.dim):
                if not N.contains(prods[b, i]):
                    raise StructureError(
                        f"B·M^(AcoH) leaves M^(AcoH): {B.space.labels[b]} · {N.space.labels[i]}")
                action[b, i] = N.coordinates(prods[b, i])
        return cls(a, B, N.space, action, N.inclusion)

    @classmethod
    def regular(cls, a: ComodulePoissonTriLieAlgebra, B: Subspace | None = None) -> "BModule":
        """``B`` as a module over itself."""
        B = default_B(a) if B is None else B
        F = a.field
        prods = einsum("bw,nj,wjo->bno", B.basis, B.basis, a.mul, field=F).to_dense()
        action = F.zeros((B.dim, B.dim, B.dim))
        for b in range(B.dim):
            for i in range(B.dim):
                action[b, i] = B.coordinates(prods[b, i])
        return cls(a, B, B.space, action, B.inclusion)


def default_B(a: ComodulePoissonTriLieAlgebra) -> Subspace:
    return acoH_invariants(a)


def bmodule_maps(n1: BModule, n2: BModule) -> list:
    """Basis of the B-linear maps ``n1 -> n2``."""
    from ..linalg import maps_of, solve_linear_maps

    F = n1.space.field
    cons = [lambda X, b=b: F.matmul(X, n1.operators[b]) - F.matmul(n2.operators[b], X)
            for b in range(n1.B.dim)]
    return maps_of(solve_linear_maps(n1.space, n2.space, cons), n1.space, n2.space)


def is_b_linear(f: LinearMap, n1: BModule, n2: BModule) -> bool:
    F = f.field
    return all(not np.any(F.matmul(f.matrix, n1.operators[b]) != F.matmul(n2.operators[b], f.matrix))
               for b in range(n1.B.dim))


@dataclass(frozen=True, eq=False)
class BalancedTensorModule:
    quotient: QuotientSpace
    module: PoissonTriLieHopfModule
    factor: BModule

    @property
    def space(self) -> VectorSpace:
        return self.module.space

    @property
    def dim(self) -> int:
        return self.module.dim

    def lift(self, a_index: int, n_vec) -> np.ndarray:
        """Class of ``e_a ⊗ n`` in the quotient."""
        A = self.module.algebra.space
        amb = np.kron(A.basis_vector(a_index), np.asarray(n_vec))
        return self.quotient.projection(amb)


def _descend(name, t: SparseTensor, q: QuotientSpace, check_spec, induce_spec):
    F = q.ambient.field
    proj, sec = q.projection.matrix, q.section.matrix
    rel = q.relations.basis
    bad = einsum(check_spec, rel, t, proj, field=F)
    if bad.nnz:
        r = int(bad.coords[0, check_spec.split("->")[1].index("r")])
        raise StructureError(
            f"{name} does not descend to the balanced tensor product: "
            f"relation {q.ambient.render(rel[r])} is not preserved")
    return einsum(induce_spec, sec, t, proj, field=F)


def tensor_over_B(a: ComodulePoissonTriLieAlgebra, n: BModule) -> BalancedTensorModule:
    """``A ⊗_B N`` with ``x·(a⊗n) = xa⊗n``, ``(x,y)<>(a⊗n) = {x,y,a}⊗n``, ``ρ(a⊗n) = a0⊗n⊗a1``."""
    F = a.field
    A, N, B = a.space, n.space, n.B
    AN = VectorSpace(F, tuple(f"{_wrap(x)}⊗{_wrap(y)}" for x in A.labels for y in N.labels))
    labels = dict(zip(AN.labels, (f"{_wrap(x)}⊗_B{_wrap(y)}" for x in A.labels for y in N.labels)))
    eyeA = SparseTensor.from_dense(F, F.eye(A.dim))
    eyeN = SparseTensor.from_dense(F, F.eye(N.dim))
    if B.dim and N.dim and A.dim:
        rel = (einsum("awc,bw,ip->abicp", a.mul, B.basis, eyeN, field=F)
               - einsum("ac,bip->abicp", eyeA, n.action, field=F))
        rel = rel.merge([[0, 1, 2], [3, 4]]).to_dense()
    else:
        rel = np.empty((0, AN.dim), dtype=F.dtype)
    q = quotient(AN, Subspace.span(AN, rel), label=labels.get)
    act = einsum("xac,np->xancp", a.mul, eyeN).merge([[0], [1, 2], [3, 4]])
    tri = einsum("xyac,np->xyancp", a.bracket, eyeN).merge([[0], [1], [2, 3], [4, 5]])
    rho = einsum("ack,np->ancpk", a.rho, eyeN).merge([[0, 1], [2, 3], [4]])
    act_q = _descend("the A-action", act, q, "ri,xio,qo->xrq", "iu,xio,qo->xuq").with_arity(2)
    tri_q = _descend("the 3-Lie action", tri, q, "ri,xyio,qo->xyrq", "iu,xyio,qo->xyuq").with_arity(3)
    rho_q = _descend("the coaction", rho, q, "ri,iok,qo->rqk", "iu,iok,qo->uqk").with_arity(1)
    Q = q.space
    module = PoissonTriLieHopfModule(
        a, PoissonTriLieModule(a.base, Q, act_q, TriLieModuleAction(A, Q, tri_q)),
        Coaction.from_tensor(Q, a.hopf, rho_q))
    return BalancedTensorModule(q, module, n)


def alpha_map(m, bt: BalancedTensorModule | None = None) -> tuple:
    """``α(a ⊗ n) = a·n`` on ``A ⊗_B M^{AcoH}``; returns ``(HomWitness, BalancedTensorModule)``."""
    m = _module(m)
    if bt is None:
        bt = tensor_over_B(m.algebra, BModule.from_invariants(m))
    F = m.field
    inc = bt.factor.inclusion.matrix.T  # [n, j]
    amb = einsum("nj,ajo->ano", inc, m.act, field=F).merge([[0, 1], [2]])
    alpha_amb = amb.to_dense().T  # (M, A⊗N)
    q = bt.quotient
    if np.any(F.matmul(alpha_amb, q.relations.basis.T) != 0):
        raise StructureError("α does not vanish on the balancing relations")
    alpha = LinearMap(bt.space, m.space, F.matmul(alpha_amb, q.section.matrix))
    return HomWitness.verify(alpha, bt, m, ALL_PROPERTIES), bt


def check_theorem_hypotheses(m, phi: PhiMap, all_witnesses=False) -> CheckReport:
    """φ is a colinear algebra map into ``A^A`` and ``<>'`` kills ``M^coH`` and ``A^coH``."""
    m = _module(m)
    a = m.algebra
    rep = CheckReport("isomorphism hypotheses")
    rep.extend(phi.check(all_witnesses), prefix="phi.")
    alg = phi.is_algebra_map
    rep.add(CheckResult("phi.algebra_map", PASS if alg else FAIL, "φ(hk) = φ(h)φ(k)"))
    if not rep.passed:
        return rep
    ok = True
    for name, obj in (("module", m), ("algebra", as_hopf_module(a))):
        coh = coinvariants(obj.coaction)
        Dp = prime_action(obj, phi).action
        res = check_identity(
            f"prime_trivial_on_{name}_coinvariants", "(x,y)<>'v = 0 for v coinvariant",
            einsum("vi,xyio->xyvo", coh.basis, Dp, field=obj.field),
            SparseTensor.zeros(obj.field, (a.dim, a.dim, coh.dim, obj.dim)),
            [a.space, a.space, coh.space], [obj.space], all_witnesses)
        rep.add(res)
        ok = ok and res.passed
    if not ok:
        rep.add(CheckResult("p_lands_in_invariants", WARN, "p_M(M) ⊆ M^{AcoH}",
                            detail="skipped: hypotheses already failed"))
        return rep
    inv = acoH_invariants(m)
    P = p_tensor(m, phi).to_dense()
    bad = [i for i in range(m.dim) if not inv.contains(P[i])]
    ws = [Witness((i,), (m.space.labels[i],), lhs=m.space.coefficients(P[i]), note="p_M(m) ∉ M^{AcoH}")
          for i in bad[: None if all_witnesses else 1]]
    rep.add(CheckResult("p_lands_in_invariants", FAIL if bad else PASS, "p_M(M) ⊆ M^{AcoH}", ws))
    return rep


def beta_map(m, phi: PhiMap, bt: BalancedTensorModule | None = None) -> tuple:
    """``β(m) = φ(m1) ⊗_B p_M(m0)``; refuses with a witness when the hypotheses fail."""
    m = _module(m)
    hyp = check_theorem_hypotheses(m, phi)
    if not hyp.passed:
        bad = hyp.failures()[0]
        raise HypothesisError(f"hypothesis {bad.name} fails: {bad.anchor}", bad.witness, hyp)
    if bt is None:
        bt = tensor_over_B(m.algebra, BModule.from_invariants(m))
    F = m.field
    inv = acoH_invariants(m)
    P = p_tensor(m, phi).to_dense()
    Pc = inv.coordinates(P) if m.dim else F.zeros((0, inv.dim))
    amb = einsum("ijk,ka,jn->ian", m.rho, phi.tensor, Pc, field=F).merge([[0], [1, 2]])
    beta = LinearMap(m.space, bt.space, F.matmul(bt.quotient.projection.matrix, amb.to_dense().T))
    return HomWitness.verify(beta, m, bt, ALL_PROPERTIES), bt


def verify_fundamental_theorem(m, phi: PhiMap, all_witnesses=False) -> CheckReport:
    m = _module(m)
    F = m.field
    rep = CheckReport("A ⊗_B M^{AcoH} ≅ M")
    hyp = check_theorem_hypotheses(m, phi, all_witnesses)
    rep.extend(hyp, prefix="hypothesis.")
    if not hyp.passed:
        bad = hyp.failures()[0]
        rep.add(CheckResult("refused", FAIL, "hypotheses must hold before building β",
                            [bad.witness] if bad.witness else [],
                            f"{bad.name} failed, isomorphism not attempted"))
        return rep
    alpha, bt = alpha_map(m)
    beta, _ = beta_map(m, phi, bt)
    rep.add(check_identity(
        "alpha_beta", "α∘β = id_M",
        SparseTensor.from_dense(F, (alpha.map @ beta.map).matrix),
        SparseTensor.from_dense(F, F.eye(m.dim)), [m.space], [m.space], all_witnesses))
    rep.add(check_identity(
        "beta_alpha", "β∘α = id",
        SparseTensor.from_dense(F, (beta.map @ alpha.map).matrix),
        SparseTensor.from_dense(F, F.eye(bt.dim)), [bt.space], [bt.space], all_witnesses))
    hm = check_hopf_module(bt.module, constituents=False)
    rep.extend(hm, prefix="balanced.")
    dA, dN, dB = m.algebra.dim, bt.factor.dim, bt.factor.B.dim
    formula = dB > 0 and m.dim * dB == dA * dN
    rep.add(CheckResult("dimension_formula", PASS if formula else FAIL,
                        "dim M = dim A · dim M^{AcoH} / dim B",
                        detail=f"{m.dim} vs {dA}·{dN}/{dB}"))
    rep.info.update({"dim M": m.dim, "dim M^{AcoH}": dN, "dim B": dB,
                     "rank": dN // dB if dB else None, "iso": rep.passed})
    return rep


def b_basis(n: BModule) -> list:
    """Indices of basis vectors of ``n`` forming a basis over ``B`` (greedy, in order)."""
    F = n.space.field
    chosen, span = [], np.empty((0, n.dim), dtype=F.dtype)
    for i in range(n.dim):
        e = n.space.basis_vector(i)
        if span.shape[0] and rref(np.vstack([span, e]), F)[0].shape[0] == span.shape[0]:
            continue
        orbit = np.array([F.matmul(op, e) for op in n.operators]).reshape(-1, n.dim)
        span = rref(np.vstack([span, orbit]), F)[0]
        chosen.append(i)
    return chosen


def freeness_report(m, phi: PhiMap, field_report: CheckReport | None = None) -> CheckReport:
    """``M`` is free over ``A`` of rank ``dim M^{AcoH} / dim B`` with basis ``α(1 ⊗ n_i)``."""
    from .simplicity import verify_B_field

    m = _module(m)
    F = m.field
    rep = CheckReport("freeness over A")
    fund = verify_fundamental_theorem(m, phi)
    rep.add(CheckResult("fundamental_theorem", PASS if fund.passed else FAIL, "A ⊗_B M^{AcoH} ≅ M"))
    fld = field_report if field_report is not None else verify_B_field(m.algebra)
    rep.add(CheckResult("B_is_field", PASS if fld.passed else FAIL, "B = A^{AcoH} is a field"))
    if not rep.passed:
        return rep
    n = BModule.from_invariants(m)
    idx = b_basis(n)
    vecs = [n.inclusion(n.space.basis_vector(i)) for i in idx]
    a = m.algebra
    cols = [F.matmul(op, v) for v in vecs for op in view_ops(m)]
    mat = np.array(cols, dtype=F.dtype).T if cols else F.zeros((m.dim, 0))
    rank = len(rref(mat, F)[1]) if mat.size else 0
    square = mat.shape[1] == m.dim
    rep.add(CheckResult("basis_spans_and_is_free", PASS if (square and rank == m.dim) else FAIL,
                        "A^r -> M, (a_i) -> Σ a_i·v_i is bijective",
                        detail=f"{len(vecs)} generators, {mat.shape[1]} products, rank {rank} of {m.dim}"))
    rep.info.update({"rank": len(idx), "basis": [m.space.render(v) for v in vecs],
                     "dim M": m.dim, "dim A": a.dim})
    return rep


def view_ops(m: PoissonTriLieHopfModule) -> list:
    t = m.act.to_dense()
    return [t[i].T for i in range(t.shape[0])]
