"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails (the witness is
printed), 2 for usage errors and unreadable structure files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .constructions import (
    BModule,
    HypothesisError,
    SimplicityConfig,
    adjunction_report,
    freeness_report,
    gamma_report,
    graded_nambu,
    group_algebra_example,
    is_poisson_h_simple,
    product_example,
    regular_hopf_module,
    tensor_over_B,
    tensor_with_H,
    verify_B_field,
    verify_fundamental_theorem,
)
from .fields import QQ, GF, FieldError
from .hopf_compat import (
    acoH_invariants,
    as_hopf_module,
    check_comodule_poisson_algebra,
    check_hopf_module,
    check_invariant_subspaces,
    coinvariants,
)
from .io import StructureBundle, StructureFileError, dumps, load
from .report import FAIL, PASS, WARN, CheckReport, CheckResult
from .structures import StructureError, check_hopf_algebra
from .trilie import module_invariants, trilie_center


class UsageError(Exception):
    pass


def _emit(args, rep: CheckReport, summary: str = "") -> int:
    if summary:
        rep.info["summary"] = summary
    if args.json:
        print(rep.to_json())
    else:
        print(rep.render())
    return 0 if rep.passed else 1


def _title(args, bundle: StructureBundle, what: str) -> str:
    return f"{what}: {bundle.name or Path(args.file).name}"


def _need_algebra(bundle: StructureBundle, path):
    if bundle.algebra is None:
        raise UsageError(f"{path}: this command needs an 'algebra' section")
    return bundle.algebra


# -- commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    b = load(args.file)
    aw = args.all_witnesses
    rep = CheckReport(_title(args, b, "check"))
    rep.extend(check_hopf_algebra(b.hopf, aw), "hopf.")
    if b.algebra is not None:
        rep.extend(check_comodule_poisson_algebra(b.algebra, aw), "algebra.")
    if b.module is not None:
        rep.extend(check_hopf_module(b.module, aw), "module.")
    if b.phi is not None:
        rep.extend(b.phi.check(aw), "phi.")
    return _emit(args, rep)


def cmd_invariants(args) -> int:
    b = load(args.file)
    a = _need_algebra(b, args.file)
    m = as_hopf_module(a) if args.object == "A" else b.hopf_module
    if args.which == "coH":
        sub = coinvariants(m.coaction)
    elif args.which == "A":
        sub = trilie_center(a.base) if args.object == "A" else module_invariants(m.base)
    else:
        sub = acoH_invariants(m)
    sym = f"{args.object}^{{{args.which}}}" if args.which != "A" else f"{args.object}^A"
    rep = CheckReport(_title(args, b, f"invariants {sym}"))
    rep.extend(check_invariant_subspaces(m, args.all_witnesses), "closure.")
    rep.info = {"subspace": sym, "dim": sub.dim,
                "basis": [m.space.render(v) for v in sub.basis], **rep.info}
    return _emit(args, rep, f"dim {sym} = {sub.dim}")


def cmd_construct(args) -> int:
    b = load(args.file)
    a = _need_algebra(b, args.file)
    m = b.hopf_module
    rep = CheckReport(_title(args, b, f"construct {args.kind}"))
    try:
        if args.kind == "tensor-h":
            out = tensor_with_H(m.base, a)
        else:
            out = tensor_over_B(a, BModule.from_invariants(m)).module
    except (HypothesisError, StructureError) as exc:
        rep.add(CheckResult("construction", FAIL, args.kind, detail=str(exc)))
        return _emit(args, rep)
    rep.add(CheckResult("construction", PASS, args.kind))
    rep.extend(check_hopf_module(out, args.all_witnesses), "result.")
    rep.info.update({"dim input": m.dim, "dim result": out.dim, "out": args.out})
    if rep.passed:
        name = f"{b.name or Path(args.file).stem} {args.kind}"
        Path(args.out).write_text(dumps(StructureBundle(b.hopf, a, out, b.phi, name)), "utf-8")
    return _emit(args, rep)


def cmd_fundamental(args) -> int:
    b = load(args.file)
    a = _need_algebra(b, args.file)
    if b.phi is None:
        raise UsageError(f"{args.file}: 'fundamental' needs a 'phi' section")
    m = b.hopf_module
    rep = verify_fundamental_theorem(m, b.phi, args.all_witnesses)
    rep.title = _title(args, b, "fundamental")
    if not rep.passed:
        refused = "refused" in rep
        bad = rep["refused"] if refused else rep.failures()[0]
        w = f"; witness {bad.witness}" if bad.witness else ""
        return _emit(args, rep, f"refused: {bad.detail}{w}" if refused else f"failed: {bad.name}{w}")
    fld = verify_B_field(a)
    if fld["is_field"].status == PASS:
        rep.extend(freeness_report(m, b.phi, fld), "freeness.")
    else:
        rep.add(CheckResult("freeness", WARN, "B a field", detail="skipped: B is not a field"))
    return _emit(args, rep, f"iso verified, dim M = {m.dim}, rank = {rep.info['rank']}")


def cmd_adjunction(args) -> int:
    b = load(args.file)
    a = _need_algebra(b, args.file)
    m = b.hopf_module
    rep = CheckReport(_title(args, b, "adjunction"))
    gm = BModule.from_invariants(m)
    rep.extend(adjunction_report(a, gm, m), "N=G(M).")
    rep.extend(adjunction_report(a, BModule.regular(a, gm.B), m), "N=B.")
    rep.extend(gamma_report(m, m.base), "gamma.")
    return _emit(args, rep)


def cmd_simple(args) -> int:
    b = load(args.file)
    a = _need_algebra(b, args.file)
    cfg = SimplicityConfig(exhaustive_limit=args.exhaustive_limit, seed=args.seed)
    dec = is_poisson_h_simple(a, cfg)
    rep = CheckReport(_title(args, b, "simple"))
    rep.add(CheckResult("decision", PASS, "A has no proper nonzero Poisson 3-Lie H-ideal",
                        detail=dec.render()))
    fld = verify_B_field(a, dec, cfg)
    for r in fld.results:
        if r.name == "is_field" and r.status == FAIL and not dec.simple:
            r.status = WARN
            r.detail += " (allowed: A is not simple)"
        rep.add(CheckResult("B." + r.name, r.status, r.anchor, r.witnesses, r.detail))
    rep.info.update({"verdict": "simple" if dec.simple else "not simple", **dec.to_dict(),
                     "B is a field": fld.info.get("field"), "dim B": fld.info.get("dim B")})
    return _emit(args, rep, f"verdict: {dec.render()}")


def _write(args, bundle: StructureBundle) -> int:
    text = dumps(bundle)
    if args.out:
        Path(args.out).write_text(text, "utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_gen(args) -> int:
    try:
        if args.example == "nambu":
            a = graded_nambu(args.p)
            bundle = StructureBundle(a.hopf, a, name=f"nambu-{a.dim} over F{args.p}[C3]")
        elif args.example == "product":
            a, phi = product_example(args.p)
            bundle = StructureBundle(a.hopf, a, phi=phi, name=f"nambu-{args.p ** 3} x F{args.p}[C3]")
        else:
            field = QQ if args.p is None else GF(args.p)
            a, phi = group_algebra_example(args.n, field, args.coaction)
            mod = regular_hopf_module(a) if args.module == "tensor-h" else None
            keep = phi if args.coaction == "regular" else None
            name = f"{field}[C{args.n}] {args.coaction}" + (" H⊗H" if mod is not None else "")
            bundle = StructureBundle(a.hopf, a, mod, keep, name)
    except (FieldError, StructureError) as exc:
        raise UsageError(str(exc)) from None
    return _write(args, bundle)


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--all-witnesses", action="store_true",
                        help="collect every failing basis tuple instead of the first")
    p = argparse.ArgumentParser(prog="poisson3lie", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run every applicable axiom suite")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("invariants", parents=[common], help="compute an invariant subspace")
    c.add_argument("file")
    c.add_argument("--object", choices=["A", "M"], default="A")
    c.add_argument("--which", choices=["coH", "A", "AcoH"], default="AcoH")
    c.set_defaults(func=cmd_invariants)

    c = sub.add_parser("construct", parents=[common], help="build N⊗H or A⊗_B M^{AcoH}")
    c.add_argument("kind", choices=["tensor-h", "tensor-over-b"])
    c.add_argument("file")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("fundamental", parents=[common],
                       help="hypotheses, α and β, dimensions and freeness for A⊗_B M^{AcoH} -> M")
    c.add_argument("file")
    c.set_defaults(func=cmd_fundamental)

    c = sub.add_parser("adjunction", parents=[common], help="the adjunction A⊗_B- ⊣ (-)^{AcoH} and γ, γ'")
    c.add_argument("file")
    c.set_defaults(func=cmd_adjunction)

    c = sub.add_parser("simple", parents=[common], help="decide Poisson H-simplicity and whether B is a field")
    c.add_argument("file")
    c.add_argument("--exhaustive-limit", type=int, default=SimplicityConfig.exhaustive_limit)
    c.add_argument("--seed", type=int, default=SimplicityConfig.seed)
    c.set_defaults(func=cmd_simple)

    c = sub.add_parser("gen", help="write an example structure file")
    gen = c.add_subparsers(dest="example", required=True)
    g = gen.add_parser("nambu", help="truncated Nambu algebra graded over F_p[C3]")
    g.add_argument("--p", type=int, default=3)
    g.add_argument("--out")
    g = gen.add_parser("product", help="Nambu algebra tensored with F_p[C3], with phi(g) = 1⊗g")
    g.add_argument("--p", type=int, default=3)
    g.add_argument("--out")
    g = gen.add_parser("group-algebra", help="k[C_n] coacting on itself")
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--p", type=int, default=None, help="work over F_p instead of Q")
    g.add_argument("--coaction", choices=["regular", "trivial"], default="regular")
    g.add_argument("--module", choices=["self", "tensor-h"], default="self",
                   help="'tensor-h' adds the Hopf module H⊗H")
    g.add_argument("--out")
    c.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StructureFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
