"""overseer: supervisor synthesis for safe Petri nets.

Given a plant model and a description of what must never happen, the
toolkit partitions the reachable states, reduces the forbidden border
to a minimal set of token-sum constraints, realizes each constraint as
a control place, and verifies that the closed loop reproduces exactly
the authorized behavior.
"""

from .cover import (
    EXACT_COVER_LIMIT,
    CoverTable,
    build_cover_table,
    check_coverage,
    check_final_coverage,
    minimum_cover_size,
    select_final_cover,
)
from .errors import (
    EmptyConstraintSet,
    ForbiddenInitialMarking,
    InitialMarkingViolation,
    NonBinaryController,
    NotEnabled,
    OverseerError,
    PnetError,
    PnetSyntaxError,
    SafenessViolation,
    StageFailure,
    StateBudgetExceeded,
    SupportCapExceeded,
    UncontrollableBreach,
    UncoverableState,
    UnknownPlaceName,
    VerificationFailure,
)
from .net import (
    DEFAULT_STATE_BUDGET,
    Marking,
    PetriNet,
    ReachabilityGraph,
    build_reachability_graph,
    canonical_order,
    reachability_backend,
)
from .overstates import (
    DEFAULT_SUPPORT_CAP,
    Constraint,
    constraints_from,
    dominated_by_authorized,
    minimal_elements,
    over_states,
    overstate_union,
    prune_authorized,
)
from .partition import (
    BadStateSpec,
    StatePartition,
    border_states,
    deadlocks,
    forbidden_closure,
    partition_states,
    primal_bad,
)
from .pipeline import PipelineOptions, PipelineResult, run_pipeline
from .pnet import NetDocument, parse_net, parse_net_file, serialize_net
from .predicate import compile_predicate, parse_predicate, predicate_places
from .report import SynthesisReport, canonical_digest
from .synthesis import (
    ClosedLoopReport,
    ConstraintMatrix,
    Controller,
    assemble_controlled_net,
    build_constraint_matrix,
    empty_controller,
    synthesize,
    verify_closed_loop,
)

__version__ = "1.0.0"

__all__ = [
    "BadStateSpec",
    "ClosedLoopReport",
    "Constraint",
    "ConstraintMatrix",
    "Controller",
    "CoverTable",
    "DEFAULT_STATE_BUDGET",
    "DEFAULT_SUPPORT_CAP",
    "EXACT_COVER_LIMIT",
    "EmptyConstraintSet",
    "ForbiddenInitialMarking",
    "InitialMarkingViolation",
    "Marking",
    "NetDocument",
    "NonBinaryController",
    "NotEnabled",
    "OverseerError",
    "PetriNet",
    "PipelineOptions",
    "PipelineResult",
    "PnetError",
    "PnetSyntaxError",
    "ReachabilityGraph",
    "SafenessViolation",
    "StageFailure",
    "StateBudgetExceeded",
    "StatePartition",
    "SupportCapExceeded",
    "SynthesisReport",
    "UncontrollableBreach",
    "UncoverableState",
    "UnknownPlaceName",
    "VerificationFailure",
    "assemble_controlled_net",
    "border_states",
    "build_constraint_matrix",
    "build_cover_table",
    "build_reachability_graph",
    "canonical_digest",
    "canonical_order",
    "check_coverage",
    "check_final_coverage",
    "compile_predicate",
    "constraints_from",
    "deadlocks",
    "dominated_by_authorized",
    "empty_controller",
    "forbidden_closure",
    "minimal_elements",
    "minimum_cover_size",
    "over_states",
    "overstate_union",
    "parse_net",
    "parse_net_file",
    "parse_predicate",
    "partition_states",
    "predicate_places",
    "primal_bad",
    "prune_authorized",
    "reachability_backend",
    "run_pipeline",
    "select_final_cover",
    "serialize_net",
    "synthesize",
    "verify_closed_loop",
]
