"""Deciding whether ``A`` has a proper nonzero Poisson 3-Lie H-ideal, and whether ``B`` is a field.

A subspace is such an ideal exactly when it is stable under the multiplication
operators ``L_a``, the bracket operators ``v -> {v, e_i, e_j}`` and the coaction
components ``C_k`` (where ``rho(v) = sum_k C_k(v) (x) h_k``).  So simplicity is
irreducibility of ``A`` under a finite set of matrices, decided by, in order:

1. exhaustive spinning of every normalised vector when ``|F|^n`` is small;
2. the common kernel of a commuting family of nilpotent generators: it meets
   every nonzero invariant subspace, so when it is a line spanning to the
   whole space the space is irreducible;
3. spinning a fixed list of probe vectors (basis vectors, then ``e_i ± e_j``);
4. a Holt-Rees style test with a random element of the generated algebra,
   using an exact factorisation of its characteristic polynomial;
5. random spinning, which can only ever report "no ideal found".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import sympy
from sympy.polys.domains import GF as SymGF
from sympy.polys.domains import QQ as SymQQ
from sympy.polys.matrices import DomainMatrix

from ..fields import Field, PrimeField
from ..hopf_compat import ComodulePoissonTriLieAlgebra, acoH_invariants
from ..linalg import EchelonBasis, LinAlgError, Subspace, VectorSpace, kernel_basis
from ..report import FAIL, PASS, CheckReport, CheckResult, Witness

CERTIFIED = "certified"
PROBABILISTIC = "probabilistic"


@dataclass
class SimplicityConfig:
    exhaustive_limit: int = 65536
    seed: int = 0
    attempts: int = 32
    samples: int = 64


@dataclass
class Decision:
    simple: bool
    certainty: str
    method: str
    witness: Subspace | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"simple": self.simple, "certainty": self.certainty, "method": self.method}
        if self.witness is not None:
            d["witness"] = self.witness.render()
            d["witness_dim"] = self.witness.dim
        d.update(self.details)
        return d

    def render(self) -> str:
        verdict = "simple" if self.simple else "not simple"
        s = f"{verdict} ({self.certainty}, {self.method})"
        if self.witness is not None:
            s += f"; ideal {self.witness.render()}"
        return s


def ideal_generators(a: ComodulePoissonTriLieAlgebra) -> list:
    """Matrices whose common invariant subspaces are the Poisson 3-Lie H-ideals."""
    F = a.field
    mul = a.base.algebra.mul_dense
    T = a.base.bracket.dense
    n = a.dim
    ops = [mul[i].T.copy() for i in range(n)]  # v -> e_i v
    ops += [T[:, i, j, :].T.copy() for i in range(n) for j in range(i + 1, n)]
    ops += list(a.coaction.operators)
    seen, out = set(), []
    for op in ops:
        op = F.reduce(op)
        if not np.any(op != 0):
            continue
        key = op.tobytes() if op.dtype != object else repr(op.tolist())
        if key not in seen:
            seen.add(key)
            out.append(op)
    return out


def spin(vectors, ops, field_: Field, n: int) -> EchelonBasis:
    """Smallest subspace containing ``vectors`` and stable under ``ops``."""
    basis = EchelonBasis(field_, n)
    queue = []
    for v in vectors:
        if basis.add(v):
            queue.append(np.asarray(v))
    while queue and len(basis) < n:
        v = queue.pop()
        for op in ops:
            w = field_.matmul(op, v)
            if basis.add(w):
                queue.append(w)
                if len(basis) == n:
                    break
    return basis


def _proper(space: VectorSpace, basis: EchelonBasis) -> Subspace | None:
    if 0 < len(basis) < space.dim:
        return Subspace(space, basis.rows)
    return None


def _normalised_vectors(F: PrimeField, n: int):
    """Vectors with first nonzero coordinate 1, in lexicographic order."""
    p = F.p
    for lead in range(n):
        for tail in itertools.product(range(p), repeat=n - lead - 1):
            v = F.zeros(n)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def _probe_vectors(F: Field, n: int):
    for i in range(n):
        v = F.zeros(n)
        v[i] = F.scalar(1)
        yield v
    for i in range(n):
        for j in range(i + 1, n):
            for s in (1, -1):
                v = F.zeros(n)
                v[i] = F.scalar(1)
                v[j] = F.scalar(s)
                yield F.reduce(v)


def _sym_domain(F: Field):
    return SymGF(F.p) if isinstance(F, PrimeField) else SymQQ


def _to_sym(F: Field, mat: np.ndarray) -> DomainMatrix:
    dom = _sym_domain(F)
    rows = [[dom.convert(int(x)) if isinstance(F, PrimeField) else dom.convert(sympy.Rational(x.numerator, x.denominator))
             for x in row] for row in mat]
    return DomainMatrix(rows, mat.shape, dom)


def _poly_at(F: Field, coeffs, mat: np.ndarray) -> np.ndarray:
    """Horner evaluation of a polynomial (highest coefficient first) at ``mat``."""
    n = mat.shape[0]
    out = F.zeros((n, n))
    eye = F.eye(n)
    for c in coeffs:
        out = F.reduce(F.matmul(out, mat) + eye * c)
    return out


def _field_coeffs(F: Field, poly) -> list:
    out = []
    for c in poly.all_coeffs():
        if isinstance(F, PrimeField):
            out.append(F.scalar(int(c)))
        else:
            r = sympy.Rational(c)
            out.append(F.scalar(f"{r.p}/{r.q}"))
    return out


def _random_element(F: Field, ops, rng) -> np.ndarray:
    n = ops[0].shape[0]
    theta = F.zeros((n, n))
    picks = rng.integers(0, len(ops), size=(3, 2))
    words = [ops[i] for i, _ in picks] + [F.matmul(ops[i], ops[j]) for i, j in picks]
    for w in words:
        c = F.scalar(int(rng.integers(1, 5)))
        theta = F.reduce(theta + w * c)
    return theta


def _holt_rees(space: VectorSpace, ops, rng, attempts: int):
    """Returns ``(simple, witness, details)`` or ``None`` if no attempt was conclusive."""
    F = space.field
    n = space.dim
    x = sympy.Symbol("x")
    opsT = [op.T.copy() for op in ops]
    for attempt in range(attempts):
        theta = _random_element(F, ops, rng)
        cp = _to_sym(F, theta).charpoly()
        dom = _sym_domain(F)
        poly = sympy.Poly([dom.to_sympy(c) for c in cp], x,
                          **({"modulus": F.p} if isinstance(F, PrimeField) else {"domain": "QQ"}))
        _, factors = poly.factor_list()
        for f, _mult in sorted(factors, key=lambda fm: fm[0].degree()):
            coeffs = _field_coeffs(F, f)
            ft = _poly_at(F, coeffs, theta)
            ker = kernel_basis(ft, F)
            if ker.shape[0] == 0:
                continue
            sub = spin([ker[0]], ops, F, n)
            w = _proper(space, sub)
            if w is not None:
                return False, w, {"attempt": attempt, "factor_degree": f.degree()}
            if ker.shape[0] != f.degree():
                continue
            kerT = kernel_basis(ft.T.copy(), F)
            subT = spin([kerT[0]], opsT, F, n)
            if len(subT) == n:
                return True, None, {"attempt": attempt, "factor_degree": f.degree()}
            # the annihilator of a proper dual submodule is a proper submodule
            ann = kernel_basis(subT.rows, F)
            return False, Subspace(space, ann), {"attempt": attempt, "factor_degree": f.degree(),
                                                 "via": "dual spin"}
    return None


def _is_nilpotent(F: Field, op: np.ndarray) -> bool:
    n = op.shape[0]
    p, k = op, 1
    while k < n:
        p = F.matmul(p, p)
        k *= 2
    return not np.any(p != 0)


def _nilpotent_kernel(space: VectorSpace, ops):
    """Certify via a commuting nilpotent family whose common kernel is a line."""
    F, n = space.field, space.dim
    chosen = []
    for op in ops:
        if not np.any(op != 0) or not _is_nilpotent(F, op):
            continue
        if all(not np.any(F.matmul(op, c) != F.matmul(c, op)) for c in chosen):
            chosen.append(op)
    if not chosen:
        return None
    ker = kernel_basis(np.vstack(chosen), F)
    if ker.shape[0] != 1:
        return None
    w = _proper(space, spin([ker[0]], ops, F, n))
    return (w is None), w, {"nilpotent_generators": len(chosen)}


def decide_irreducible(space: VectorSpace, ops, config: SimplicityConfig | None = None) -> Decision:
    """Is ``space`` irreducible under ``ops`` (nonzero proper invariant subspaces absent)?"""
    config = config or SimplicityConfig()
    F, n = space.field, space.dim
    if n == 0:
        return Decision(False, CERTIFIED, "trivial", details={"reason": "zero space"})
    if n == 1:
        return Decision(True, CERTIFIED, "trivial", details={"reason": "one-dimensional"})
    if F.is_finite() and F.order ** n <= config.exhaustive_limit:
        count = 0
        for v in _normalised_vectors(F, n):
            count += 1
            w = _proper(space, spin([v], ops, F, n))
            if w is not None:
                return Decision(False, CERTIFIED, "exhaustive", w, {"vectors_spun": count})
        return Decision(True, CERTIFIED, "exhaustive", details={"vectors_spun": count})
    nk = _nilpotent_kernel(space, ops)
    if nk is not None:
        simple, w, det = nk
        return Decision(simple, CERTIFIED, "nilpotent-kernel", w, det)
    for v in _probe_vectors(F, n):
        w = _proper(space, spin([v], ops, F, n))
        if w is not None:
            return Decision(False, CERTIFIED, "probe", w)
    rng = np.random.default_rng(config.seed)
    hr = _holt_rees(space, ops, rng, config.attempts)
    if hr is not None:
        simple, w, det = hr
        return Decision(simple, CERTIFIED, "holt-rees", w, det)
    found = random_spin_search(space, ops, config)
    if found is not None:
        return Decision(False, CERTIFIED, "random-spin", found)
    return Decision(True, PROBABILISTIC, "random-spin", details={"samples": config.samples})


def random_spin_search(space: VectorSpace, ops, config: SimplicityConfig) -> Subspace | None:
    """Spin random vectors; returns a proper invariant subspace if one turns up."""
    F, n = space.field, space.dim
    rng = np.random.default_rng(config.seed + 1)
    for _ in range(config.samples):
        v = F.random_array(rng, (n,))
        if not np.any(v != 0):
            continue
        w = _proper(space, spin([v], ops, F, n))
        if w is not None:
            return w
    return None


def is_invariant(sub: Subspace, ops) -> bool:
    F = sub.field
    return all(sub.contains(F.matmul(op, v)) for op in ops for v in sub.basis)


def is_poisson_h_simple(a: ComodulePoissonTriLieAlgebra, config: SimplicityConfig | None = None) -> Decision:
    ops = ideal_generators(a)
    d = decide_irreducible(a.space, ops, config)
    d.details["generators"] = len(ops)
    return d


def _subalgebra_ops(B: Subspace, a: ComodulePoissonTriLieAlgebra) -> list:
    """``L_b`` restricted to ``B``, in the coordinates of ``B``; raises if ``B`` is not closed."""
    F = a.field
    ops = []
    for b in B.basis:
        L = a.base.algebra.left_mult(b)
        cols = [B.coordinates(F.matmul(L, c)) for c in B.basis]
        ops.append(np.array(cols, dtype=F.dtype).T.copy())
    return ops


def verify_B_field(a: ComodulePoissonTriLieAlgebra, decision: Decision | None = None,
                   config: SimplicityConfig | None = None) -> CheckReport:
    """Is ``B = A^{AcoH}`` a field?  ``B`` is commutative, so this is "no proper ideal".

    With a ``decision`` from :func:`is_poisson_h_simple`, a simple ``A`` whose
    ``B`` is not a field is reported as a contradiction.
    """
    B = acoH_invariants(a)
    rep = CheckReport("B = A^{AcoH} is a field")
    has_unit = B.contains(a.unit)
    rep.add(CheckResult("contains_unit", PASS if has_unit else FAIL, "1 ∈ B"))
    try:
        ops = _subalgebra_ops(B, a)
        rep.add(CheckResult("closed_under_product", PASS, "B · B ⊆ B"))
    except LinAlgError as exc:  # a product left B
        rep.add(CheckResult("closed_under_product", FAIL, "B · B ⊆ B", detail=str(exc)))
        rep.info.update({"field": False, "dim B": B.dim})
        return rep
    if not has_unit:
        field_dec = Decision(False, CERTIFIED, "unit")
    elif B.dim == 1:
        field_dec = Decision(True, CERTIFIED, "dimension one")
    else:
        field_dec = decide_irreducible(B.space, ops, config)
    ws, detail = [], field_dec.render()
    if not field_dec.simple and field_dec.witness is not None:
        zd = _zero_divisor(B, ops, field_dec.witness, a)
        if zd is not None:
            b, c = zd
            ws.append(Witness((), (a.space.render(b), a.space.render(c)), lhs={}, rhs={},
                              note="product is zero"))
            detail = f"zero divisors: ({a.space.render(b)})({a.space.render(c)}) = 0"
    rep.add(CheckResult("is_field", PASS if field_dec.simple else FAIL,
                        "every nonzero b ∈ B is invertible in B", ws, detail))
    contradiction = decision is not None and decision.simple and not field_dec.simple
    rep.add(CheckResult("consistent_with_simplicity", FAIL if contradiction else PASS,
                        "A simple ⇒ B a field",
                        detail="A was decided simple but B is not a field" if contradiction else ""))
    rep.info.update({"field": field_dec.simple, "certainty": field_dec.certainty,
                     "method": field_dec.method, "dim B": B.dim})
    return rep


def _zero_divisor(B: Subspace, ops, ideal: Subspace, a: ComodulePoissonTriLieAlgebra):
    """A pair ``b, c`` of nonzero elements of ``B`` with ``bc = 0``, ``b`` taken from ``ideal``."""
    F = a.field
    for bc in ideal.basis:
        L = F.zeros(ops[0].shape)
        for coef, op in zip(bc, ops):
            L = F.reduce(L + op * coef)
        ker = kernel_basis(L, F)
        if ker.shape[0]:
            b = F.matmul(B.basis.T, bc)
            c = F.matmul(B.basis.T, ker[0])
            if not np.any(a.base.algebra.multiply(b, c) != 0):
                return b, c
    return None
