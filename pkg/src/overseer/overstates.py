"""Over-state candidate generation and reduction.

An over-state is a partial marking b; forbidding b (through the token-sum
constraint over its support) forbids every marking that covers it.  The
reduction starts from all sub-supports of the border states, removes
anything covered by an authorized state, and keeps only the minimal
elements: the cheapest partial markings that still separate border
states from authorized ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import SupportCapExceeded
from .net import Marking, canonical_order

# 2^n over-states per border state; beyond ~20 marked places this is no
# longer a sensible method
DEFAULT_SUPPORT_CAP = 20

# An over-state is just a partial marking.
OverState = Marking


def over_states(m: Marking, cap: int = DEFAULT_SUPPORT_CAP) -> list[Marking]:
    """All 2^n - 1 nonempty sub-supports of m, smallest first."""
    support = m.support()
    if len(support) > cap:
        raise SupportCapExceeded(
            "state has %d marked places; the over-state cap is %d "
            "(raise --max-support if the 2^n blow-up is acceptable)"
            % (len(support), cap)
        )
    out = []
    for size in range(1, len(support) + 1):
        for combo in combinations(support, size):
            out.append(Marking.from_support(m.width, combo))
    return out


def overstate_union(markings, cap: int = DEFAULT_SUPPORT_CAP) -> list[Marking]:
    """Deduplicated union of the over-state sets of several markings, in
    canonical (cardinality, support) order."""
    seen: set[int] = set()
    out = []
    for m in markings:
        for b in over_states(m, cap):
            if b.mask not in seen:
                seen.add(b.mask)
                out.append(b)
    return canonical_order(out)


def dominated_by_authorized(b: Marking, authorized) -> bool:
    """True iff some authorized marking covers b, i.e. forbidding b would
    forbid an authorized state.

    Equivalent to membership of b in the union of the authorized states'
    over-state sets, without materializing that union (it is exponential
    in the authorized supports; this test is linear in |authorized|).
    """
    return any(b.issubset(m) for m in authorized)


def prune_authorized(candidates, authorized) -> list[Marking]:
    """Candidates whose constraints forbid no authorized state."""
    return [b for b in candidates if not dominated_by_authorized(b, authorized)]


def minimal_elements(items) -> list[Marking]:
    """Antichain of componentwise-minimal elements (duplicates collapse
    to one).  A smaller over-state forbids everything a larger one does,
    so only the minimal ones matter."""
    unique = {}
    for b in items:
        unique.setdefault(b.mask, b)
    pool = canonical_order(unique.values())
    out = []
    for b in pool:
        if not any(o.mask != b.mask and o.issubset(b) for o in pool):
            out.append(b)
    return out


@dataclass(frozen=True)
class Constraint:
    """Token-sum inequality: sum of markings over `support` <= bound,
    with bound = |support| - 1.  A marking violates it exactly when it
    covers the corresponding over-state (all support places marked)."""

    support: tuple[int, ...]
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(sorted(self.support)))
        if self.bound != len(self.support) - 1 or self.bound < 0:
            raise ValueError("bound must be |support| - 1 and nonnegative")

    @classmethod
    def from_overstate(cls, b: Marking) -> "Constraint":
        support = b.support()
        return cls(support=support, bound=len(support) - 1)

    def token_sum(self, m: Marking) -> int:
        return sum(m.bit(p) for p in self.support)

    def satisfied_by(self, m: Marking) -> bool:
        return self.token_sum(m) <= self.bound

    def violated_by(self, m: Marking) -> bool:
        return self.token_sum(m) > self.bound

    def overstate(self, width: int) -> Marking:
        return Marking.from_support(width, self.support)

    def format(self, places) -> str:
        terms = " + ".join("m(%s)" % places[p] for p in self.support)
        return "%s <= %d" % (terms, self.bound)


def constraints_from(overstates) -> list[Constraint]:
    """One token-sum constraint per over-state, in the given order."""
    return [Constraint.from_overstate(b) for b in overstates]
