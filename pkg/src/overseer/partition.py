"""Splitting the reachable set into authorized, forbidden, and border states.

The forbidden set starts from a user-supplied bad-state specification
(predicate, explicit markings, deadlocks) and is closed backwards under
uncontrollable transitions: a state that can drift into the forbidden
set without the supervisor's consent is itself forbidden.  The border
states are the forbidden states a supervisor can actually refuse to
enter: targets of controllable firings from authorized states.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import ForbiddenInitialMarking, UncontrollableBreach
from .net import Marking, ReachabilityGraph
from .predicate import compile_predicate

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BadStateSpec:
    """Which reachable states are primally bad.

    At least one source must be present; `expr` is a boolean place
    predicate, `explicit` a list of full markings, and
    `include_deadlocks` adds every state without a successor.
    """

    expr: str | None = None
    explicit: tuple[Marking, ...] = ()
    include_deadlocks: bool = False

    def __post_init__(self):
        if self.expr is None and not self.explicit and not self.include_deadlocks:
            raise ValueError(
                "bad-state specification needs a predicate, explicit states, "
                "or the deadlock flag"
            )
        object.__setattr__(self, "explicit", tuple(self.explicit))


@dataclass(frozen=True)
class StatePartition:
    """State-id sets over one reachability graph: reachable, forbidden,
    authorized (the complement), and border forbidden."""

    m_r: frozenset[int]
    m_f: frozenset[int]
    m_a: frozenset[int]
    m_b: frozenset[int] = field(default_factory=frozenset)


def deadlocks(rg: ReachabilityGraph) -> frozenset[int]:
    """States with no outgoing edge."""
    return frozenset(s for s in range(rg.n_states) if not rg.succ[s])


def primal_bad(rg: ReachabilityGraph, spec: BadStateSpec) -> frozenset[int]:
    """States matching the forbidden-state description before any closure."""
    bad: set[int] = set()
    if spec.expr is not None:
        pred = compile_predicate(spec.expr, rg.net.place_index)
        bad.update(s for s, m in enumerate(rg.states) if pred(m.mask))
    for m in spec.explicit:
        if m.width != rg.net.n_places:
            raise ValueError(
                "explicit bad marking has %d bits, net has %d places"
                % (m.width, rg.net.n_places)
            )
        sid = rg.state_id(m)
        if sid is None:
            log.warning(
                "explicit bad state %s is not reachable; ignored",
                rg.net.format_marking(m),
            )
        else:
            bad.add(sid)
    if spec.include_deadlocks:
        bad.update(deadlocks(rg))
    return frozenset(bad)


def forbidden_closure(rg: ReachabilityGraph, bad) -> frozenset[int]:
    """Least superset of `bad` closed under uncontrollable entry: a state
    with an uncontrollable edge into the set joins the set.  Backward BFS
    over uncontrollable edges only."""
    controllable = rg.net.controllable
    closed = set(bad)
    frontier = list(bad)
    while frontier:
        target = frontier.pop()
        for t, source in rg.pred[target]:
            if not controllable[t] and source not in closed:
                closed.add(source)
                frontier.append(source)
    return frozenset(closed)


def border_states(rg: ReachabilityGraph, partition: StatePartition) -> frozenset[int]:
    """Forbidden states with an authorized controllable predecessor."""
    controllable = rg.net.controllable
    border = set()
    for target in partition.m_f:
        for t, source in rg.pred[target]:
            if controllable[t] and source in partition.m_a:
                border.add(target)
                break
    return frozenset(border)


def _check_closure_is_fixpoint(rg: ReachabilityGraph, m_f, m_a) -> None:
    # impossible after a correct closure; fail closed rather than
    # synthesize from a broken partition
    controllable = rg.net.controllable
    for s, t, d in rg.edges:
        if not controllable[t] and s in m_a and d in m_f:
            raise UncontrollableBreach(
                "authorized state %s reaches forbidden %s by uncontrollable %s"
                % (
                    rg.net.format_marking(rg.states[s]),
                    rg.net.format_marking(rg.states[d]),
                    rg.net.transitions[t],
                )
            )


def partition_states(rg: ReachabilityGraph, spec: BadStateSpec | None) -> StatePartition:
    """Full partition pipeline: primal bad states, uncontrollable closure,
    complement, border.  Aborts if m0 ends up forbidden (no supervisor can
    keep the plant out of the forbidden set)."""
    m_r = frozenset(range(rg.n_states))
    bad = primal_bad(rg, spec) if spec is not None else frozenset()
    m_f = forbidden_closure(rg, bad)
    if 0 in m_f:
        raise ForbiddenInitialMarking(
            "initial marking %s is forbidden; synthesis is impossible"
            % rg.net.format_marking(rg.states[0])
        )
    m_a = m_r - m_f
    _check_closure_is_fixpoint(rg, m_f, m_a)
    partial = StatePartition(m_r=m_r, m_f=m_f, m_a=m_a)
    m_b = border_states(rg, partial)
    return StatePartition(m_r=m_r, m_f=m_f, m_a=m_a, m_b=m_b)
