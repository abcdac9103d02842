"""Q[C2] end to end: projection, section, isomorphism, freeness and simplicity.

    python3 demos/group_algebra_walkthrough.py
"""

from poisson3lie.constructions import (
    freeness_report,
    group_algebra_example,
    is_poisson_h_simple,
    lambda_section,
    p_projection,
    regular_hopf_module,
    verify_B_field,
    verify_fundamental_theorem,
)


def show(title, rep):
    print(f"\n--- {title}")
    print(rep.render())


def main():
    a, phi = group_algebra_example(2)
    m = regular_hopf_module(a)
    print(f"A = H = Q[C2], basis {a.space.labels}; M = H⊗H, basis {m.space.labels}")

    p = p_projection(m, phi)
    for i, lab in enumerate(m.space.labels):
        print(f"  p_M({lab}) = {m.space.render(p(m.space.basis_vector(i)))}")

    _, lam_report = lambda_section(a, phi)
    show("section λ on A", lam_report)
    show("isomorphism on H⊗H", verify_fundamental_theorem(m, phi))
    show("freeness of H⊗H", freeness_report(m, phi))

    # the same algebra with a trivial coaction has the ideal spanned by 1 + g
    for kind in ("regular", "trivial"):
        b, _ = group_algebra_example(2, coaction=kind)
        d = is_poisson_h_simple(b)
        print(f"\n{kind} coaction: {d.render()}")
        print(f"  B a field: {verify_B_field(b, d)['is_field'].detail or 'yes'}")


if __name__ == "__main__":
    main()
