"""Factorizations of finite groups into conjugate subgroups and double cosets.

Permutation groups with stabilizer chains, right coset spaces and their
suborbits, orbit criteria for ``G = A A^x A`` and ``(AxA)^2 = G``,
intersection numbers, finite Coxeter groups acting on their roots, and the
dioid of Bruhat double cosets.
"""
from .cosets import CosetSpace, build_coset_space, coset_space_of_action
from .coxeter import CoxeterSystem, CoxeterType, build_coxeter, parabolic_factorization_check
from .dioid import Dioid, DioidElement, bn_oracle_compare, mult, star, verify_theorem4
from .errors import ConsistencyError, DataError, DcFactorError, InputError, ResourceError
from .factor import (FactorizationReport, check_aba, claim_condition_b, k_fold_equiv_check,
                     square_dc_check, square_dc_probabilistic, square_dc_search,
                     theorem1_equivalences, triple_check)
from .hecke import CollapsedAdjacency, intersection_numbers, squares_to_group
from .perm import PermGroup, Permutation, load_perm_file
from .shipped import load_shipped

__version__ = "0.1.0"

__all__ = [
    "CosetSpace", "build_coset_space", "coset_space_of_action",
    "CoxeterSystem", "CoxeterType", "build_coxeter", "parabolic_factorization_check",
    "Dioid", "DioidElement", "bn_oracle_compare", "mult", "star", "verify_theorem4",
    "ConsistencyError", "DataError", "DcFactorError", "InputError", "ResourceError",
    "FactorizationReport", "check_aba", "claim_condition_b", "k_fold_equiv_check",
    "square_dc_check", "square_dc_probabilistic", "square_dc_search",
    "theorem1_equivalences", "triple_check",
    "CollapsedAdjacency", "intersection_numbers", "squares_to_group",
    "PermGroup", "Permutation", "load_perm_file", "load_shipped",
]
