"""Relation registry, randomized suites and counterexample search."""

from .instances import (
    Instance,
    perfect_presence_state,
    present_and_absent_state,
    random_mixed_state,
    random_pure_state,
)
from .relations import REGISTRY, Check, RelationResult, evaluate, relation_ids, sample
from .suite import (
    DEFAULT_DIMS,
    Counterexample,
    RelationBlock,
    SuiteReport,
    run_suite,
    search_counterexample_eq37,
    trial_seed,
    worked_examples,
)
