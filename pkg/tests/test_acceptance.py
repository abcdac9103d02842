"""Acceptance criteria 1-10.

Run with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``;
either way the terminal summary ends with one PASS/FAIL line per criterion.
All comparisons are exact.
"""

import json
import subprocess
import sys
import time

import numpy as np
import pytest
from sympy.polys.domains import GF as SymGF
from sympy.polys.matrices import DomainMatrix

from _oracles import (
    count_solutions,
    dim_from_count,
    filippov_first_failure,
    identity_sides,
    monomials,
    nambu_bracket,
    witness_matches,
)
from conftest import DATA
from poisson3lie import (
    ComodulePoissonTriLieAlgebra,
    PoissonTriLieAlgebra,
    SparseTensor,
    TriBracket,
    acoH_invariants,
    check_comodule_poisson_algebra,
    coinvariants,
    trilie_center,
)
from poisson3lie.constructions import (
    BModule,
    adjunction_report,
    freeness_report,
    deformed_action_report,
    gamma_report,
    is_poisson_h_simple,
    lambda_section,
    product_example,
    projection_report,
    verify_B_field,
    verify_fundamental_theorem,
)

acceptance = pytest.mark.acceptance
WATCHED = ("skew_symmetry[x<->y]", "skew_symmetry[y<->z]", "skew_symmetry[x<->z]",
           "fundamental_identity", "leibniz", "bracket_colinear")


def _labels_AH(a):
    return [f"{x}⊗{h}" for x in a.space.labels for h in a.hopf.space.labels]


def _witness_ok(a, result, T):
    lv, rv = identity_sides(result.name, T, a.mul.to_dense(), a.rho.to_dense(),
                            a.hopf.mul.to_dense(), result.witness.index, 3)
    labels = _labels_AH(a) if result.name == "bracket_colinear" else a.space.labels
    return witness_matches(result.witness, lv, rv, labels, 3)


@acceptance(1, "Nambu-27: skew, fundamental identity, Leibniz, colinearity")
def test_criterion_01_nambu_check(nambu):
    start = time.perf_counter()
    rep = check_comodule_poisson_algebra(nambu)
    elapsed = time.perf_counter() - start
    for name in WATCHED:
        assert rep[name].passed, name
    assert rep.passed, rep.render()
    assert elapsed <= 300
    # independent oracles: Jacobian bracket from sympy, dense fundamental-identity scan
    T = nambu.bracket.to_dense().astype(np.int64)
    assert np.array_equal(T, nambu_bracket(3))
    assert filippov_first_failure(T, 3) is None


@acceptance(2, "20 single-constant mutations each fail with a re-evaluable witness")
@pytest.mark.parametrize("seed", range(20))
def test_criterion_02_mutations(nambu, seed):
    rng = np.random.default_rng(seed)
    n = nambu.dim
    coord = tuple(int(c) for c in rng.integers(0, n, size=4))
    T = nambu.bracket.to_dense().astype(np.int64)
    T[coord] = (T[coord] + 1) % 3
    F = nambu.field
    base = PoissonTriLieAlgebra(nambu.base.algebra,
                                TriBracket(nambu.space, SparseTensor.from_dense(F, F.array(T))))
    bad = ComodulePoissonTriLieAlgebra(base, nambu.hopf, nambu.coaction)
    rep = check_comodule_poisson_algebra(bad)
    failed = [rep[name] for name in WATCHED if not rep[name].passed]
    assert failed, f"mutation at {coord} went undetected"
    for r in failed:
        assert _witness_ok(bad, r, T), (r.name, str(r.witness))


@acceptance(3, "Nambu invariants: A^A = span{1}, dim A^coH = 9, dim A^{AcoH} = 1")
def test_criterion_03_nambu_invariants(nambu):
    center, coh, both = trilie_center(nambu.base), coinvariants(nambu), acoH_invariants(nambu)
    assert center.render() == "span{1}"
    assert coh.dim == 9 and both.dim == 1
    # A^A is the kernel of v -> ({v, e_j, e_k})_{j,k}; rank of the sympy Jacobian bracket over F_3
    T = nambu_bracket(3)
    constraint = T.reshape(27, -1)
    K = SymGF(3)
    rows = constraint.T % 3
    assert 27 - DomainMatrix([[K(int(x)) for x in r] for r in rows], rows.shape, K).rank() == 1
    assert not np.any(center.basis[0][1:] != 0)
    # A^coH is spanned by the monomials of degree 0 mod 3; A^{AcoH} by enumerating all 3^9 combinations
    deg0 = [i for i, e in enumerate(monomials(3)) if sum(e) % 3 == 0]
    assert len(deg0) == 9
    for v in coh.basis:
        assert all(v[i] == 0 for i in range(27) if i not in deg0)
    coh_rows = np.eye(27, dtype=np.int64)[deg0]
    assert dim_from_count(count_solutions(coh_rows, constraint, 3), 3) == 1


@acceptance(4, "λ on A = Q[C2], φ = id: λ∘ρ = id, colinear, 3-Lie linear")
def test_criterion_04_lambda(qc2):
    a, phi = qc2
    lam, rep = lambda_section(a, phi)
    for name in ("left_inverse_of_coaction", "3-Lie A-linear", "H-colinear"):
        assert rep[name].passed, name
    assert (lam @ a.coaction.rho).is_identity()


@acceptance(5, "p_M idempotent with image M^coH; the five deformed-action identities")
@pytest.mark.parametrize("which", ["A", "H⊗H"])
def test_criterion_05_projection(qc2, hh, which):
    a, phi = qc2
    m = a if which == "A" else hh
    pr = projection_report(m, phi)
    assert pr["idempotent"].passed and pr["image_is_coinvariants"].passed
    lem = deformed_action_report(m, phi)
    for name in ("p_multiplicative", "prime_absorbs_p", "prime.action_antisymmetry",
                 "prime.action_commutator", "prime.action_bracket", "action_through_p", "reconstruction"):
        assert lem[name].passed, name


@acceptance(6, "isomorphism A⊗_B M^{AcoH} ≅ M on A and H⊗H; refusal on the product")
@pytest.mark.parametrize("which", ["A", "H⊗H", "product"])
def test_criterion_06_fundamental(qc2, hh, which):
    if which == "product":
        a, phi = product_example(3)
        rep = verify_fundamental_theorem(a, phi)
        r = rep["refused"]
        assert not r.passed
        assert r.witness is not None and r.witness.lhs and not r.witness.rhs
        return
    a, phi = qc2
    m = a if which == "A" else hh
    rep = verify_fundamental_theorem(m, phi)
    for r in rep.results:
        if r.name.startswith("hypothesis."):
            assert r.passed, r.name
    for name in ("alpha_beta", "beta_alpha", "dimension_formula"):
        assert rep[name].passed, name
    assert rep.info["dim M"] * rep.info["dim B"] == a.dim * rep.info["dim M^{AcoH}"]


@acceptance(7, "γ, γ' and ψ, ψ' mutually inverse on hom bases; triangle identities")
def test_criterion_07_adjunction(qc2, hh):
    a, _ = qc2
    g = gamma_report(hh, hh.base)
    for name in ("hom_dimensions_agree", "gamma_after_gamma_prime", "gamma_prime_after_gamma"):
        assert g[name].passed, name
    gm = BModule.from_invariants(hh)
    for n in (gm, BModule.regular(a, gm.B)):
        rep = adjunction_report(a, n, hh)
        for name in ("hom_dimensions_agree", "psi_prime_after_psi", "psi_after_psi_prime",
                     "triangle_F", "triangle_G"):
            assert rep[name].passed, name


@acceptance(8, "simplicity: regular Q[C2] simple with B a field; trivial not simple, B not a field")
def test_criterion_08_simplicity(qc2, qc2_trivial):
    a, _ = qc2
    d = is_poisson_h_simple(a)
    assert d.simple and d.certainty == "certified"
    fld = verify_B_field(a, d)
    assert fld["is_field"].passed and fld.info["dim B"] == 1
    t, _ = qc2_trivial
    d = is_poisson_h_simple(t)
    assert not d.simple and d.certainty == "certified"
    assert d.witness.render() == "span{1 + g}"
    fld = verify_B_field(t, d)
    assert not fld["is_field"].passed
    assert fld["is_field"].detail == "zero divisors: (1 + g)(1 - g) = 0"
    one_plus_g = t.space.vector({"1": 1, "g": 1})
    one_minus_g = t.space.vector({"1": 1, "g": -1})
    assert not np.any(t.base.algebra.left_mult(one_plus_g) @ one_minus_g != 0)


@acceptance(9, "H⊗H is free of rank 2 with an independent spanning basis")
def test_criterion_09_freeness(qc2, hh):
    _, phi = qc2
    rep = freeness_report(hh, phi)
    assert rep["basis_spans_and_is_free"].passed
    assert rep.info["rank"] == 2


CORPUS = [
    ("check", "qc2_regular", 0),
    ("check", "qc2_trivial", 0),
    ("check", "qc2_hopf_module", 0),
    ("check", "f3c3_regular", 0),
    ("check", "nambu27", 0),
    ("check", "qc2_bad_antipode", 1),
    ("check", "malformed_zero_denominator", 2),
    ("check", "malformed_unknown_key", 2),
    ("check", "malformed_bad_prime", 2),
    ("fundamental", "qc2_regular", 0),
    ("simple", "qc2_trivial", 0),
]


@acceptance(10, "CLI corpus: exit codes 0/1/2, byte-reproducible reports")
def test_criterion_10_cli():
    start = time.perf_counter()
    seen = set()
    for cmd, name, code in CORPUS:
        argv = [sys.executable, "-m", "poisson3lie", cmd, str(DATA / f"{name}.json"), "--json"]
        runs = [subprocess.run(argv, capture_output=True, check=False) for _ in range(2)]
        assert [r.returncode for r in runs] == [code, code], (cmd, name, runs[0].stderr)
        assert runs[0].stdout == runs[1].stdout and runs[0].stderr == runs[1].stderr
        if code < 2:
            assert json.loads(runs[0].stdout)["passed"] == (code == 0)
        seen.add(code)
    assert seen == {0, 1, 2}
    assert len({name for _, name, _ in CORPUS}) >= 6
    assert time.perf_counter() - start <= 600


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
