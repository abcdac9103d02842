"""Constructions on Poisson 3-Lie Hopf modules and the isomorphism theorem."""

from .adjunction import F_map, F_obj, G_map, G_obj, adjunction_report, counit_map, psi, psi_prime, unit_map
from .common import (
    A_LINEAR,
    ALL_PROPERTIES,
    H_COLINEAR,
    TRI_LINEAR,
    HomWitness,
    HypothesisError,
    PhiMap,
    TriLieComodule,
    check_trilie_comodule,
    morphism_report,
    morphism_space,
)
from .examples import graded_nambu, group_algebra_example, product_example, regular_hopf_module
from .fundamental import (
    BalancedTensorModule,
    BModule,
    alpha_map,
    beta_map,
    bmodule_maps,
    check_theorem_hypotheses,
    freeness_report,
    tensor_over_B,
    verify_fundamental_theorem,
)
from .projection import deformed_action_report, lambda_section, p_projection, prime_action, projection_report
from .simplicity import Decision, SimplicityConfig, decide_irreducible, is_poisson_h_simple, verify_B_field
from .tensor_h import gamma, gamma_prime, gamma_report, tensor_with_H

__all__ = [
    "ALL_PROPERTIES",
    "A_LINEAR",
    "BModule",
    "BalancedTensorModule",
    "Decision",
    "F_map",
    "F_obj",
    "G_map",
    "G_obj",
    "H_COLINEAR",
    "HomWitness",
    "HypothesisError",
    "PhiMap",
    "SimplicityConfig",
    "TRI_LINEAR",
    "TriLieComodule",
    "adjunction_report",
    "alpha_map",
    "beta_map",
    "bmodule_maps",
    "check_theorem_hypotheses",
    "check_trilie_comodule",
    "counit_map",
    "decide_irreducible",
    "deformed_action_report",
    "freeness_report",
    "gamma",
    "gamma_prime",
    "gamma_report",
    "graded_nambu",
    "group_algebra_example",
    "is_poisson_h_simple",
    "lambda_section",
    "morphism_report",
    "morphism_space",
    "p_projection",
    "prime_action",
    "product_example",
    "projection_report",
    "psi",
    "psi_prime",
    "regular_hopf_module",
    "tensor_over_B",
    "tensor_with_H",
    "unit_map",
    "verify_B_field",
    "verify_fundamental_theorem",
]
