"""Exact computational algebra for finite skew left braces."""

from .braces import (
    SkewBrace,
    StructureFlags,
    annihilator,
    brace_isomorphisms,
    canonical_brace,
    canonical_pair,
    commutators,
    cyclic_brace,
    direct_product,
    gamma_circ,
    gamma_plus,
    ideal_closure,
    ideals,
    is_brace_isomorphic,
    ker_lambda,
    nilpotency_class,
    opposite_brace,
    quotient_brace,
    series,
    socle_and_annihilator,
    star,
    structure_flags,
    sub_brace_closure,
    sub_braces,
    trivial_brace,
    validate_skew_brace,
)
from .enumeration import (
    BraceCatalog,
    CatalogEntry,
    brute_force_oracle,
    catalog_from_jsonl,
    catalog_manifest,
    catalog_to_jsonl,
    groups_of_order,
    resolve_cap,
    skew_braces_of_order,
    skew_braces_on,
)
from .errors import (
    BadCyclicParameter,
    BraceKitError,
    DistributivityFails,
    GapViolation,
    NotAssociative,
    NotLatinSquare,
    OrderCapExceeded,
    ParseError,
)
from .groups import (
    GroupTable,
    automorphism_group,
    canonical_form,
    center,
    centralizer,
    cyclic_group,
    dihedral_group,
    direct_product_group,
    group_commuting_probability,
    holomorph,
    is_isomorphic,
    isomorphisms,
    klein_four_group,
    quaternion_group,
    quotient_group,
    regular_subgroups,
    validate_group,
)
from .isoclinism import (
    IsoclinismData,
    IsoclinismWitness,
    are_isoclinic,
    is_stem,
    isoclinism_classes,
    isoclinism_data,
)
from .probability import (
    BoundReport,
    CentralizerSuite,
    GapClass,
    bound_report,
    centralizer_suite,
    commuting_probability,
    cyclic_pb_formula,
    gap_classify,
)
from .report import BraceReport, brace_report
from .verify import TheoremVerdict, run_theorems

__all__ = [name for name in dir() if not name.startswith("_")]
