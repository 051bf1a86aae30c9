"""Relation checkers, the suite runner and the mutation audit."""

from askey_shift.relations.base import (
    RECORD_IDS,
    RELATION_IDS,
    REMARK_IDS,
    NotApplicableError,
    Verification,
    is_known_relation,
    relation_selected,
    replay_witness,
)
from askey_shift.relations.classic import (
    check_eigen,
    check_energy_identities,
    check_factorization_classic,
    check_rodrigues,
    check_shape_invariance,
    check_shift_classic,
)
from askey_shift.relations.explain import explain_shift
from askey_shift.relations.mutations import (
    Mutation,
    MutationError,
    apply_mutation,
    audit_mutations,
    load_battery,
)
from askey_shift.relations.new import (
    check_cross_identity,
    check_factorization_new,
    check_shift_new,
    check_split,
    check_star_invariance,
)
from askey_shift.relations.remarks import (
    RemarkInstance,
    UnknownRemarkError,
    check_remark_equivalences,
    load_remarks,
    remark_instances,
)
from askey_shift.relations.suite import (
    SuiteConfig,
    SuiteConfigError,
    applicable_relations,
    run_suite,
    run_unit,
    summarize,
)

__all__ = [
    "RECORD_IDS",
    "RELATION_IDS",
    "REMARK_IDS",
    "Mutation",
    "MutationError",
    "NotApplicableError",
    "RemarkInstance",
    "SuiteConfig",
    "SuiteConfigError",
    "UnknownRemarkError",
    "Verification",
    "applicable_relations",
    "apply_mutation",
    "audit_mutations",
    "check_cross_identity",
    "check_eigen",
    "check_energy_identities",
    "check_factorization_classic",
    "check_factorization_new",
    "check_remark_equivalences",
    "check_rodrigues",
    "check_shape_invariance",
    "check_shift_classic",
    "check_shift_new",
    "check_split",
    "check_star_invariance",
    "explain_shift",
    "is_known_relation",
    "load_battery",
    "load_remarks",
    "relation_selected",
    "remark_instances",
    "replay_witness",
    "run_suite",
    "run_unit",
    "summarize",
]
