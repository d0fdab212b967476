"""End-to-end synthesis pipeline.

Stages: reachability graph, state partition, over-state candidates,
cover selection, controller synthesis, closed-loop verification, report
assembly.  Any stage error is re-raised as a StageFailure naming the
stage; the original exception rides along as the cause so callers can
map it to an exit code.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cover import (
    CoverTable,
    build_cover_table,
    check_final_coverage,
    select_final_cover,
)
from .errors import OverseerError, StageFailure, UncoverableState, VerificationFailure
from .net import (
    DEFAULT_STATE_BUDGET,
    Marking,
    ReachabilityGraph,
    build_reachability_graph,
    reachability_backend,
)
from .overstates import (
    DEFAULT_SUPPORT_CAP,
    Constraint,
    minimal_elements,
    overstate_union,
    prune_authorized,
)
from .partition import StatePartition, partition_states
from .pnet import NetDocument
from .report import ClosedLoopSummary, SynthesisReport
from .synthesis import (
    ClosedLoopReport,
    Controller,
    build_constraint_matrix,
    empty_controller,
    synthesize,
    verify_closed_loop,
)


@dataclass
class PipelineOptions:
    support_cap: int = DEFAULT_SUPPORT_CAP
    state_budget: int = DEFAULT_STATE_BUDGET
    fallback: bool = False
    exact_cover: bool = False


@dataclass
class PipelineResult:
    doc: NetDocument
    options: PipelineOptions
    rg: ReachabilityGraph
    partition: StatePartition
    table: CoverTable | None
    constraints: list[Constraint]
    controller: Controller
    closed: ClosedLoopReport
    report: SynthesisReport
    overstates: list[Marking] = field(default_factory=list)


class _Stages:
    """Tiny timing helper; keeps the per-stage wall clock for the report."""

    def __init__(self):
        self.timings: list[tuple[str, float]] = []

    def run(self, name, fn):
        t0 = time.perf_counter()
        try:
            result = fn()
        except StageFailure:
            raise
        except OverseerError as exc:
            raise StageFailure(name, exc) from exc
        self.timings.append((name, time.perf_counter() - t0))
        return result


def run_pipeline(doc: NetDocument,
                 options: PipelineOptions | None = None) -> PipelineResult:
    if options is None:
        options = doc.options if isinstance(doc.options, PipelineOptions) \
            else PipelineOptions()
    net = doc.net
    stages = _Stages()

    rg = stages.run(
        "reach",
        lambda: build_reachability_graph(net, budget=options.state_budget),
    )
    partition = stages.run(
        "partition", lambda: partition_states(rg, doc.spec)
    )

    border_markings = rg.markings_of(sorted(partition.m_b))
    authorized_markings = rg.markings_of(sorted(partition.m_a))

    table: CoverTable | None = None
    candidates: list[Marking] = []
    pruned: list[Marking] = []
    minimal: list[Marking] = []
    chosen: list[Marking] = []
    final_counts: list[int] = []
    uncovered: list[Marking] = []
    fallback_used = False

    if partition.m_f:

        def _overstate_stage():
            cand = overstate_union(border_markings, cap=options.support_cap)
            kept = prune_authorized(cand, authorized_markings)
            return cand, kept, minimal_elements(kept)

        candidates, pruned, minimal = stages.run(
            "over-states", _overstate_stage
        )

        def _cover_stage():
            tbl = build_cover_table(minimal, border_markings)
            try:
                select_final_cover(tbl, exact=options.exact_cover)
            except UncoverableState as exc:
                if not options.fallback:
                    raise
                return _fallback_cover(tbl, exc, options)
            if not check_final_coverage(tbl):
                raise VerificationFailure(
                    "selected over-states leave a border state uncovered"
                )
            return tbl, tbl.selected_rows(), tbl.final_counts(), [], False

        table, chosen, final_counts, uncovered, fallback_used = stages.run(
            "cover", _cover_stage
        )

        def _synth_stage():
            cs = [Constraint.from_overstate(b) for b in chosen]
            cm = build_constraint_matrix(cs, net.n_places)
            return cs, synthesize(net, cm, constraints=cs)

        constraints, controller = stages.run("synthesize", _synth_stage)
    else:
        constraints = []
        controller = stages.run(
            "synthesize", lambda: empty_controller(net)
        )

    closed = stages.run(
        "verify",
        lambda: verify_closed_loop(
            net, controller, partition, rg, budget=options.state_budget
        ),
    )

    report = _assemble_report(
        doc, options, rg, partition, candidates, pruned, minimal,
        border_markings, table, chosen, final_counts, uncovered,
        fallback_used, constraints, controller, closed, stages.timings,
    )
    return PipelineResult(
        doc=doc,
        options=options,
        rg=rg,
        partition=partition,
        table=table,
        constraints=constraints,
        controller=controller,
        closed=closed,
        report=report,
        overstates=chosen,
    )


def _fallback_cover(tbl: CoverTable, exc: UncoverableState,
                    options: PipelineOptions):
    """Cover what can be covered, then forbid each uncoverable border
    state outright with a full-support constraint.  Those constraints
    also exclude the authorized states dominating the border state, so
    the result is flagged over-restrictive."""
    uncovered = list(exc.uncovered)
    for m in uncovered:
        if m.card == 0:
            # an empty border marking admits no token-sum constraint at
            # all; not even the fallback can forbid it
            raise exc
    uncovered_masks = {m.mask for m in uncovered}
    keep = [j for j, c in enumerate(tbl.cols)
            if c.mask not in uncovered_masks]
    sub = CoverTable(
        rows=tbl.rows,
        cols=[tbl.cols[j] for j in keep],
        cells=[[row[j] for j in keep] for row in tbl.cells],
    )
    if sub.cols:
        select_final_cover(sub, exact=options.exact_cover)
    chosen = sub.selected_rows() + uncovered
    final_counts = [
        sum(1 for b in chosen if b.issubset(col)) for col in tbl.cols
    ]
    # rows are shared with the full table; only the full-state
    # constraints live outside it
    tbl.selected = list(sub.selected)
    tbl.pick_order = list(sub.pick_order)
    return tbl, chosen, final_counts, uncovered, True


def _assemble_report(doc, options, rg, partition, candidates, pruned,
                     minimal, border_markings, table, chosen, final_counts,
                     uncovered, fallback_used, constraints, controller,
                     closed, timings) -> SynthesisReport:
    net = doc.net
    fmt = net.format_marking
    uncovered_masks = {m.mask for m in uncovered}
    over_restrictive = [
        Constraint.from_overstate(b).format(net.places)
        for b in chosen if b.mask in uncovered_masks
    ]
    report = SynthesisReport(
        net_name=net.name,
        places=list(net.places),
        transitions=list(net.transitions),
        controllable=[t for t, c in zip(net.transitions, net.controllable)
                      if c],
        initial=fmt(net.m0),
        reachable_count=rg.n_states,
        forbidden_count=len(partition.m_f),
        authorized_count=len(partition.m_a),
        border_count=len(partition.m_b),
        authorized=[fmt(m) for m in rg.markings_of(sorted(partition.m_a))],
        forbidden=[fmt(m) for m in rg.markings_of(sorted(partition.m_f))],
        border=[fmt(m) for m in border_markings],
        candidate_count=len(candidates),
        pruned=[fmt(m) for m in pruned],
        minimal=[fmt(m) for m in minimal],
        cover_columns=[fmt(m) for m in border_markings],
        cover_counts=table.cover_counts() if table is not None else [],
        final_counts=list(final_counts),
        selected=[fmt(m) for m in chosen],
        selection_mode="exact" if options.exact_cover else "greedy",
        constraints=[c.format(net.places) for c in constraints],
        weight_rows=[[1 if p in c.support else 0
                      for p in range(net.n_places)] for c in constraints],
        control_places=list(controller.place_names),
        control_incidence=[[int(v) for v in row]
                           for row in controller.incidence],
        control_initial=[int(v) for v in controller.initial],
        bounds=[int(v) for v in controller.bounds],
        no_constraints=not partition.m_f,
        fallback_used=fallback_used,
        uncovered=[fmt(m) for m in uncovered],
        over_restrictive=over_restrictive,
        closed_loop=ClosedLoopSummary(
            state_count=closed.state_count,
            isomorphic=closed.isomorphic,
            invariant_ok=closed.invariant_ok,
            admissibility_violations=[
                v.format(net, controller)
                for v in closed.admissibility_violations
            ],
            missing_authorized=[fmt(m) for m in closed.missing_authorized],
            extra_states=[fmt(m) for m in closed.extra_states],
            edge_mismatches=list(closed.edge_mismatches),
            max_control_marking=list(closed.max_control_marking),
            notes=list(closed.notes),
        ),
        environment={
            "reachability_kernel": reachability_backend(net.n_places),
        },
        timings=list(timings) + [
            ("total", sum(t for _, t in timings))
        ],
    )
    return report
