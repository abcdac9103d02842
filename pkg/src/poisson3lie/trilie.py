"""3-Lie brackets, Poisson 3-Lie algebras and their modules.

Every identity is checked on basis tuples only, which is complete by
multilinearity.  The five-variable scans (fundamental identity and the two
module identities on pairs of pairs) are done one value of the first slot at
a time so memory stays proportional to a single slice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import sympy

from .fields import Field, PrimeField
from .linalg import Subspace, VectorSpace, kernel_basis
from .report import CheckReport, check_identity, check_identity_chunked
from .structures import AlgebraStructure, StructureError, check_algebra
from .tensor import SparseTensor, einsum


@dataclass(frozen=True, eq=False)
class TriBracket:
    space: VectorSpace
    bracket: SparseTensor

    def __post_init__(self):
        n = self.space.dim
        if tuple(self.bracket.shape) != (n, n, n, n):
            raise StructureError(f"bracket tensor must have shape {(n,) * 4}")
        object.__setattr__(self, "bracket", self.bracket.with_arity(3))

    @property
    def field(self) -> Field:
        return self.space.field

    @cached_property
    def dense(self) -> np.ndarray:
        return self.bracket.to_dense()

    def __call__(self, x, y, z) -> np.ndarray:
        return self.field.reduce(np.einsum("i,j,k,ijko->o", x, y, z, self.dense))


@dataclass(frozen=True, eq=False)
class TriLieModuleAction:
    algebra_space: VectorSpace
    module_space: VectorSpace
    action: SparseTensor

    def __post_init__(self):
        n, m = self.algebra_space.dim, self.module_space.dim
        if tuple(self.action.shape) != (n, n, m, m):
            raise StructureError(f"3-Lie action tensor must have shape {(n, n, m, m)}")
        object.__setattr__(self, "action", self.action.with_arity(3))

    @property
    def field(self) -> Field:
        return self.module_space.field

    @cached_property
    def dense(self) -> np.ndarray:
        return self.action.to_dense()

    def __call__(self, x, y, v) -> np.ndarray:
        return self.field.reduce(np.einsum("i,j,k,ijko->o", x, y, v, self.dense))

    def operator(self, x, y) -> np.ndarray:
        """Matrix of ``v -> (x, y)<>v``."""
        return self.field.reduce(np.einsum("i,j,ijko->ok", x, y, self.dense))


@dataclass(frozen=True, eq=False)
class PoissonTriLieAlgebra:
    algebra: AlgebraStructure
    bracket: TriBracket

    def __post_init__(self):
        if self.algebra.space != self.bracket.space:
            raise StructureError("product and bracket live on different spaces")

    @property
    def space(self) -> VectorSpace:
        return self.algebra.space

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim


@dataclass(frozen=True, eq=False)
class PoissonTriLieModule:
    algebra: PoissonTriLieAlgebra
    module_space: VectorSpace
    a_action: SparseTensor
    tri_action: TriLieModuleAction

    def __post_init__(self):
        n, m = self.algebra.dim, self.module_space.dim
        if tuple(self.a_action.shape) != (n, m, m):
            raise StructureError(f"A-action tensor must have shape {(n, m, m)}")
        if self.tri_action.module_space != self.module_space:
            raise StructureError("3-Lie action acts on a different space")
        object.__setattr__(self, "a_action", self.a_action.with_arity(2))

    @property
    def field(self) -> Field:
        return self.module_space.field

    @property
    def dim(self) -> int:
        return self.module_space.dim

    @cached_property
    def a_dense(self) -> np.ndarray:
        return self.a_action.to_dense()

    def act(self, a, v) -> np.ndarray:
        return self.field.reduce(np.einsum("i,k,iko->o", a, v, self.a_dense))

    def act_operator(self, a) -> np.ndarray:
        return self.field.reduce(np.einsum("i,iko->ok", a, self.a_dense))


def check_skew_symmetry(b: TriBracket, all_witnesses=False) -> CheckReport:
    sp, T = b.space, b.bracket
    rep = CheckReport("skew-symmetry")
    for (i, j), name in (((0, 1), "x<->y"), ((1, 2), "y<->z"), ((0, 2), "x<->z")):
        perm = [0, 1, 2, 3]
        perm[i], perm[j] = perm[j], perm[i]
        rep.add(check_identity(
            f"skew_symmetry[{name}]", "{x,y,z} changes sign under a transposition",
            T, -T.permute(perm), [sp] * 3, [sp], all_witnesses))
    return rep


def _filippov_chunks(T: SparseTensor, n: int):
    for x in range(n):
        Tx0, Tx1, Tx2 = T.fix(0, x), T.fix(1, x), T.fix(2, x)
        lhs = einsum("yzw,wuvo->yzuvo", Tx0, T)
        rhs = (einsum("uvw,wyzo->yzuvo", Tx0, T)
               + einsum("yuvw,wzo->yzuvo", T, Tx2)
               + einsum("zuvw,wyo->yzuvo", T, Tx1))
        yield x, lhs, rhs


def check_filippov(b: TriBracket, all_witnesses=False) -> CheckReport:
    """Fundamental identity on all basis 5-tuples ``(x, y, z, u, v)``."""
    sp = b.space
    rep = CheckReport("fundamental identity")
    rep.add(check_identity_chunked(
        "fundamental_identity",
        "{{x,y,z},u,v} = {{x,u,v},y,z} + {{y,u,v},z,x} + {{z,u,v},x,y}",
        _filippov_chunks(b.bracket, sp.dim), sp, [sp] * 4, [sp], all_witnesses))
    return rep


def check_trilie_module(m: TriLieModuleAction, b: TriBracket, all_witnesses=False) -> CheckReport:
    A, M = m.algebra_space, m.module_space
    D, T = m.action, b.bracket
    rep = CheckReport("3-Lie module")
    rep.add(check_identity(
        "action_antisymmetry", "(x,y)<>m = -(y,x)<>m",
        D, -D.permute([1, 0, 2, 3]), [A, A, M], [M], all_witnesses))

    def commutator_chunks():
        for x in range(A.dim):
            Dx, Tx = D.fix(0, x), T.fix(0, x)
            lhs = einsum("uviw,ywo->yuvio", D, Dx) - einsum("yiw,uvwo->yuvio", Dx, D)
            rhs = einsum("yuw,wvio->yuvio", Tx, D) + einsum("yvw,uwio->yuvio", Tx, D)
            yield x, lhs, rhs

    def bracket_chunks():
        for x in range(A.dim):
            Dx, Tx = D.fix(0, x), T.fix(0, x)
            lhs = einsum("yuw,wvio->yuvio", Tx, D)
            rhs = (einsum("viw,yuwo->yuvio", Dx, D)
                   - einsum("yviw,uwo->yuvio", D, Dx)
                   + einsum("uviw,ywo->yuvio", D, Dx))
            yield x, lhs, rhs

    rep.add(check_identity_chunked(
        "action_commutator",
        "(x,y)<>((u,v)<>m) - (u,v)<>((x,y)<>m) = ({x,y,u},v)<>m + (u,{x,y,v})<>m",
        commutator_chunks(), A, [A, A, A, M], [M], all_witnesses))
    rep.add(check_identity_chunked(
        "action_bracket",
        "({x,y,u},v)<>m = (y,u)<>((x,v)<>m) - (x,u)<>((y,v)<>m) + (x,y)<>((u,v)<>m)",
        bracket_chunks(), A, [A, A, A, M], [M], all_witnesses))
    return rep


def check_poisson_trilie(p: PoissonTriLieAlgebra, all_witnesses=False, bracket_axioms=True) -> CheckReport:
    sp, F = p.space, p.field
    mul, T, u = p.algebra.mul, p.bracket.bracket, p.algebra.unit
    rep = CheckReport("Poisson 3-Lie algebra")
    rep.extend(check_algebra(p.algebra, all_witnesses))
    rep.add(check_identity(
        "commutativity", "xy = yx", mul, mul.permute([1, 0, 2], arity=2), [sp, sp], [sp], all_witnesses))
    if bracket_axioms:
        rep.extend(check_skew_symmetry(p.bracket, all_witnesses))
        rep.extend(check_filippov(p.bracket, all_witnesses))
    rep.add(check_identity(
        "leibniz", "{x,y,uv} = u{x,y,v} + {x,y,u}v",
        einsum("uvw,xywo->xyuvo", mul, T),
        einsum("xyvw,uwo->xyuvo", T, mul) + einsum("xyuw,wvo->xyuvo", T, mul),
        [sp] * 4, [sp], all_witnesses))
    rep.add(check_identity(
        "bracket_with_unit", "{x,y,1} = 0",
        einsum("w,xywo->xyo", u, T, field=F), SparseTensor.zeros(F, (sp.dim,) * 3),
        [sp, sp], [sp], all_witnesses))
    return rep


def check_poisson_module(pm: PoissonTriLieModule, all_witnesses=False, trilie_axioms=True) -> CheckReport:
    A, M, F = pm.algebra.space, pm.module_space, pm.field
    mul, T, u = pm.algebra.algebra.mul, pm.algebra.bracket.bracket, pm.algebra.algebra.unit
    act, D = pm.a_action, pm.tri_action.action
    aw = all_witnesses
    rep = CheckReport("Poisson 3-Lie module")
    rep.add(check_identity(
        "module_associativity", "(xy).m = x.(y.m)",
        einsum("xyw,wio->xyio", mul, act), einsum("yiw,xwo->xyio", act, act), [A, A, M], [M], aw))
    rep.add(check_identity(
        "module_unit", "1.m = m",
        einsum("w,wio->io", u, act, field=F), SparseTensor.from_dense(F, F.eye(M.dim)), [M], [M], aw))
    if trilie_axioms:
        rep.extend(check_trilie_module(pm.tri_action, pm.algebra.bracket, aw))
    rep.add(check_identity(
        "product_slot_derivation", "(xy,z)<>m = x.((y,z)<>m) + y.((x,z)<>m)",
        einsum("xyw,wzio->xyzio", mul, D),
        einsum("yziw,xwo->xyzio", D, act) + einsum("xziw,ywo->xyzio", D, act),
        [A, A, A, M], [M], aw))
    rep.add(check_identity(
        "action_on_products", "(x,y)<>(z.m) = {x,y,z}.m + z.((x,y)<>m)",
        einsum("ziw,xywo->xyzio", act, D),
        einsum("xyzw,wio->xyzio", T, act) + einsum("xyiw,zwo->xyzio", D, act),
        [A, A, A, M], [M], aw))
    rep.add(check_identity(
        "unit_pair_acts_trivially", "(1,z)<>m = 0",
        einsum("w,wzio->zio", u, D, field=F), SparseTensor.zeros(F, (A.dim, M.dim, M.dim)),
        [A, M], [M], aw))
    return rep


def kernel_of_slot(t: SparseTensor, axis: int, space: VectorSpace) -> Subspace:
    """Vectors ``v`` with ``t`` contracted against ``v`` in slot ``axis`` equal to zero."""
    F = space.field
    if t.nnz == 0:
        return Subspace.whole(space)
    others = [a for a in range(t.rank) if a != axis]
    rowkey = np.ravel_multi_index(tuple(t.coords[:, others].T), [t.shape[a] for a in others])
    uniq, rows = np.unique(rowkey, return_inverse=True)
    mat = F.zeros((len(uniq), space.dim))
    mat[rows, t.coords[:, axis]] = t.values
    return Subspace(space, kernel_basis(mat, F))


def trilie_center(p) -> Subspace:
    """``A^A``: elements ``b`` with ``{b, A, A} = 0``."""
    b = p.bracket if isinstance(p, PoissonTriLieAlgebra) else p
    return kernel_of_slot(b.bracket, 0, b.space)


def module_invariants(pm) -> Subspace:
    """``M^A``: elements killed by every ``(x, y)<>-``."""
    tri = pm.tri_action if isinstance(pm, PoissonTriLieModule) else pm
    return kernel_of_slot(tri.action, 2, tri.module_space)


def with_zero_bracket(alg: AlgebraStructure) -> PoissonTriLieAlgebra:
    """A commutative algebra as a Poisson 3-Lie algebra with trivial bracket."""
    n = alg.dim
    return PoissonTriLieAlgebra(alg, TriBracket(alg.space, SparseTensor.zeros(alg.field, (n,) * 4)))


def adjoint_module(p: PoissonTriLieAlgebra) -> PoissonTriLieModule:
    """``A`` over itself: multiplication and ``(x, y)<>a = {x, y, a}``."""
    return PoissonTriLieModule(
        p, p.space, p.algebra.mul,
        TriLieModuleAction(p.space, p.space, p.bracket.bracket),
    )


def _monomial_label(e) -> str:
    parts = []
    for var, k in zip("xyz", e):
        if k == 1:
            parts.append(var)
        elif k > 1:
            parts.append(f"{var}^{k}")
    return "".join(parts) or "1"


def nambu_exponents(p: int) -> np.ndarray:
    """Exponent vectors of the monomial basis, in basis order."""
    r = np.arange(p)
    return np.stack(np.meshgrid(r, r, r, indexing="ij"), axis=-1).reshape(-1, 3)


def nambu_truncated(p: int) -> PoissonTriLieAlgebra:
    """``F_p[x,y,z]/(x^p, y^p, z^p)`` with the Jacobian-determinant bracket.

    For monomials the Jacobian matrix is the exponent matrix scaled row-wise by
    ``f_i`` and column-wise by ``1/x_k``, so ``{f, g, h}`` is ``det(exponents)``
    times the monomial whose exponents are the column sums minus one.
    """
    if not isinstance(p, (int, np.integer)) or p < 3 or not sympy.isprime(int(p)):
        raise StructureError(f"need a prime p >= 3, got {p!r}")
    p = int(p)
    F = PrimeField(p)
    E = nambu_exponents(p)
    n = len(E)
    sp = VectorSpace(F, tuple(_monomial_label(e) for e in E))

    def index(exps):
        return (exps[..., 0] * p + exps[..., 1]) * p + exps[..., 2]

    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    i, j = i.ravel(), j.ravel()
    s = E[i] + E[j]
    ok = np.all(s < p, axis=1)
    mul = SparseTensor.build(F, (n, n, n), np.stack([i[ok], j[ok], index(s[ok])], axis=1),
                             np.ones(int(ok.sum()), dtype=np.int64), arity=2)

    a, b, c = (g.ravel() for g in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij"))
    M = np.stack([E[a], E[b], E[c]], axis=1)  # (n^3, 3 rows, 3 cols)
    det = (M[:, 0, 0] * (M[:, 1, 1] * M[:, 2, 2] - M[:, 1, 2] * M[:, 2, 1])
           - M[:, 0, 1] * (M[:, 1, 0] * M[:, 2, 2] - M[:, 1, 2] * M[:, 2, 0])
           + M[:, 0, 2] * (M[:, 1, 0] * M[:, 2, 1] - M[:, 1, 1] * M[:, 2, 0]))
    out = M.sum(axis=1) - 1
    ok = np.all((out >= 0) & (out < p), axis=1) & (det % p != 0)
    coords = np.stack([a[ok], b[ok], c[ok], index(out[ok])], axis=1)
    bracket = SparseTensor.build(F, (n,) * 4, coords, det[ok] % p, arity=3)
    alg = AlgebraStructure(sp, mul, sp.basis_vector(0))
    return PoissonTriLieAlgebra(alg, TriBracket(sp, bracket))


def nambu_degrees(p: int, modulus: int = 3) -> list:
    """Total degree of each monomial basis element, reduced mod ``modulus``."""
    return [int(d) % modulus for d in nambu_exponents(p).sum(axis=1)]
