"""Safe Petri-net data model, firing semantics, and reachability graphs.

Markings of a safe net are boolean vectors; they are stored as integer
bitmasks (place i at bit i).  The same representation doubles as a
partial marking ("over-state") elsewhere in the toolkit.

Reachability exploration runs on a compiled kernel when the extension
module built from _fastreach.pyx is importable and the net has at most
64 places; otherwise a pure-Python twin with identical semantics takes
over.  Set OVERSEER_PURE_REACH=1 to force the pure path.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pyreach
from .errors import NotEnabled, SafenessViolation, StateBudgetExceeded

try:
    from . import _fastreach
except ImportError:
    _fastreach = None

DEFAULT_STATE_BUDGET = 1 << 20


def reachability_backend(n_places: int | None = None) -> str:
    """Name of the kernel build_reachability_graph would use."""
    if _fastreach is None or os.environ.get("OVERSEER_PURE_REACH") == "1":
        return "pure"
    if n_places is not None and n_places > _fastreach.MAX_PLACES:
        return "pure"
    return "compiled"


class Marking:
    """Boolean marking of a net with `width` places, bit i = place i.

    Also used for partial markings: `issubset` is the componentwise
    partial order, `sort_key` the lexicographic total order over the
    bit vector (used only to make output deterministic).
    """

    __slots__ = ("width", "mask")

    def __init__(self, width: int, mask: int):
        if mask < 0 or mask >> width:
            raise ValueError("mask %#x out of range for width %d" % (mask, width))
        self.width = width
        self.mask = mask

    @classmethod
    def from_bits(cls, bits) -> "Marking":
        bits = list(bits)
        mask = 0
        for i, b in enumerate(bits):
            if b not in (0, 1, False, True):
                raise ValueError("marking bits must be 0 or 1")
            if b:
                mask |= 1 << i
        return cls(len(bits), mask)

    @classmethod
    def from_support(cls, width: int, support) -> "Marking":
        mask = 0
        for i in support:
            mask |= 1 << i
        return cls(width, mask)

    def bit(self, i: int) -> int:
        return (self.mask >> i) & 1

    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.width))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.width) if (self.mask >> i) & 1)

    @property
    def card(self) -> int:
        return bin(self.mask).count("1")

    def issubset(self, other: "Marking") -> bool:
        """Componentwise order: every marked place here is marked in other."""
        return self.mask & ~other.mask == 0

    def sort_key(self) -> tuple[int, ...]:
        return self.bits()

    def __eq__(self, other):
        return (
            isinstance(other, Marking)
            and self.width == other.width
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((self.width, self.mask))

    def __repr__(self):
        return "Marking(%d, 0b%s)" % (
            self.width,
            format(self.mask, "0%db" % self.width)[::-1] if self.width else "0",
        )


def canonical_order(markings) -> list[Marking]:
    """Sort partial markings by (cardinality, support): the order used in
    every listing the toolkit prints."""
    return sorted(markings, key=lambda m: (m.card, m.support()))


class PetriNet:
    """Safe Petri net: named places and transitions, 0/1 arcs, boolean m0.

    pre/post are kept separately (a single incidence matrix cannot
    express self-loops); the incidence matrix is derived on demand.
    """

    def __init__(self, name, places, transitions, controllable, pre_sets,
                 post_sets, m0: Marking):
        self.name = name
        self.places = tuple(places)
        self.transitions = tuple(transitions)
        self.controllable = tuple(bool(c) for c in controllable)
        if len(set(self.places)) != len(self.places):
            raise ValueError("duplicate place names")
        if len(set(self.transitions)) != len(self.transitions):
            raise ValueError("duplicate transition names")
        if len(self.controllable) != len(self.transitions):
            raise ValueError("one controllability flag per transition required")
        if m0.width != len(self.places):
            raise ValueError("initial marking width does not match place count")
        self.place_index = {p: i for i, p in enumerate(self.places)}
        self.transition_index = {t: i for i, t in enumerate(self.transitions)}
        self.pre_masks = tuple(self._mask(s) for s in pre_sets)
        self.post_masks = tuple(self._mask(s) for s in post_sets)
        if len(self.pre_masks) != len(self.transitions) or len(
            self.post_masks
        ) != len(self.transitions):
            raise ValueError("pre/post sets must match transition count")
        self.m0 = m0

    def _mask(self, places) -> int:
        mask = 0
        for i in places:
            if not 0 <= i < len(self.places):
                raise ValueError("place index %r out of range" % (i,))
            mask |= 1 << i
        return mask

    @classmethod
    def from_matrices(cls, name, places, transitions, controllable, pre, post,
                      m0: Marking) -> "PetriNet":
        """Build from |P| x |T| 0/1 arrays (rejects weighted arcs)."""
        pre = np.asarray(pre)
        post = np.asarray(post)
        if not np.isin(pre, (0, 1)).all() or not np.isin(post, (0, 1)).all():
            raise ValueError("arc weights must be 0 or 1")
        pre_sets = [np.flatnonzero(pre[:, t]).tolist() for t in range(pre.shape[1])]
        post_sets = [np.flatnonzero(post[:, t]).tolist() for t in range(post.shape[1])]
        return cls(name, places, transitions, controllable, pre_sets, post_sets, m0)

    @property
    def n_places(self) -> int:
        return len(self.places)

    @property
    def n_transitions(self) -> int:
        return len(self.transitions)

    def pre_matrix(self) -> np.ndarray:
        out = np.zeros((self.n_places, self.n_transitions), dtype=int)
        for t, mask in enumerate(self.pre_masks):
            for p in range(self.n_places):
                if (mask >> p) & 1:
                    out[p, t] = 1
        return out

    def post_matrix(self) -> np.ndarray:
        out = np.zeros((self.n_places, self.n_transitions), dtype=int)
        for t, mask in enumerate(self.post_masks):
            for p in range(self.n_places):
                if (mask >> p) & 1:
                    out[p, t] = 1
        return out

    def incidence(self) -> np.ndarray:
        return self.post_matrix() - self.pre_matrix()

    def self_loops(self) -> list[tuple[int, int]]:
        """(place, transition) pairs with both an input and an output arc."""
        out = []
        for t in range(self.n_transitions):
            both = self.pre_masks[t] & self.post_masks[t]
            for p in range(self.n_places):
                if (both >> p) & 1:
                    out.append((p, t))
        return out

    def is_enabled(self, m: Marking, t: int) -> bool:
        return self.pre_masks[t] & ~m.mask == 0

    def enabled(self, m: Marking) -> tuple[int, ...]:
        """Transitions enabled at m: every input place marked."""
        if m.width != self.n_places:
            raise ValueError("marking width does not match net")
        return tuple(
            t for t in range(self.n_transitions)
            if self.pre_masks[t] & ~m.mask == 0
        )

    def fire(self, m: Marking, t: int) -> Marking:
        """Fire t at m.  Raises NotEnabled or, if a place would receive a
        second token, SafenessViolation."""
        if self.pre_masks[t] & ~m.mask:
            raise NotEnabled(
                "transition %s not enabled at %s"
                % (self.transitions[t], self.format_marking(m))
            )
        gained = self.post_masks[t] & ~self.pre_masks[t]
        if gained & m.mask:
            raise SafenessViolation(
                "firing %s at %s puts a second token into a place; "
                "the net is not safe"
                % (self.transitions[t], self.format_marking(m))
            )
        return Marking(m.width, (m.mask & ~self.pre_masks[t]) | self.post_masks[t])

    def format_marking(self, m: Marking) -> str:
        """Compact support form, e.g. P1P3P6; '-' for the empty marking."""
        names = [self.places[i] for i in m.support()]
        return "".join(names) if names else "-"

    def format_markings(self, markings) -> list[str]:
        return [self.format_marking(m) for m in markings]

    def __eq__(self, other):
        return (
            isinstance(other, PetriNet)
            and self.name == other.name
            and self.places == other.places
            and self.transitions == other.transitions
            and self.controllable == other.controllable
            and self.pre_masks == other.pre_masks
            and self.post_masks == other.post_masks
            and self.m0 == other.m0
        )

    def __hash__(self):
        return hash((self.places, self.transitions, self.m0.mask))

    def __repr__(self):
        return "PetriNet(%r, %d places, %d transitions)" % (
            self.name, self.n_places, self.n_transitions,
        )


class ReachabilityGraph:
    """Explored marking set plus labeled edges.

    State 0 is m0; numbering is breadth-first with ties broken by
    transition index, so it is identical across runs and kernels.
    """

    def __init__(self, net: PetriNet, states, edges):
        self.net = net
        self.states = list(states)
        self.edges = list(edges)
        self._index = {m.mask: i for i, m in enumerate(self.states)}
        self.succ = [[] for _ in self.states]
        self.pred = [[] for _ in self.states]
        for s, t, d in self.edges:
            self.succ[s].append((t, d))
            self.pred[d].append((t, s))

    @property
    def n_states(self) -> int:
        return len(self.states)

    def state_id(self, m: Marking) -> int | None:
        return self._index.get(m.mask)

    def markings_of(self, ids) -> list[Marking]:
        """Markings for a set of state ids, in state-id order."""
        return [self.states[i] for i in sorted(ids)]

    def __repr__(self):
        return "ReachabilityGraph(%d states, %d edges)" % (
            len(self.states), len(self.edges),
        )


def build_reachability_graph(net: PetriNet,
                             budget: int = DEFAULT_STATE_BUDGET,
                             backend: str | None = None) -> ReachabilityGraph:
    """Exhaustive BFS closure of net from m0.

    backend: None picks automatically; "pure" or "compiled" forces a
    kernel (forcing "compiled" on a >64-place net is an error).
    """
    if backend is None:
        backend = reachability_backend(net.n_places)
    if backend == "compiled":
        if _fastreach is None:
            raise RuntimeError("compiled reachability kernel is not available")
        impl = _fastreach
    elif backend == "pure":
        impl = _pyreach
    else:
        raise ValueError("unknown backend %r" % backend)

    try:
        masks, src, tr, dst = impl.explore(
            net.n_places, net.pre_masks, net.post_masks, net.m0.mask, budget
        )
    except SafenessViolation as exc:
        raise SafenessViolation(
            "net %s is not safe: %s" % (net.name, exc)
        ) from exc
    except StateBudgetExceeded as exc:
        raise StateBudgetExceeded(
            "net %s: %s (raise --state-budget to explore further)"
            % (net.name, exc)
        ) from exc

    states = [Marking(net.n_places, m) for m in masks]
    edges = list(zip(src, tr, dst))
    return ReachabilityGraph(net, states, edges)
