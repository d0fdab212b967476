"""Pure-Python reachability exploration kernel.

Same contract as the compiled kernel in _fastreach: breadth-first
closure over bitmask markings, transitions tried in index order, states
numbered in discovery order.  Works for any place count because Python
ints are unbounded.
"""

from collections import deque

from .errors import SafenessViolation, StateBudgetExceeded


def explore(n_places, pre_masks, post_masks, m0, budget):
    """BFS closure from m0. Returns (states, src, tr, dst) where states is
    the list of marking masks and the three parallel lists encode edges."""
    n_t = len(pre_masks)
    # a firing creates a second token iff it produces into a marked place
    # it does not also consume from
    gain_masks = [post_masks[t] & ~pre_masks[t] for t in range(n_t)]

    states = [m0]
    seen = {m0: 0}
    queue = deque((0,))
    src, tr, dst = [], [], []

    while queue:
        sid = queue.popleft()
        m = states[sid]
        for t in range(n_t):
            if pre_masks[t] & ~m:
                continue
            if gain_masks[t] & m:
                raise SafenessViolation(
                    "firing transition %d at state %d yields two tokens in "
                    "one place" % (t, sid)
                )
            m2 = (m & ~pre_masks[t]) | post_masks[t]
            nid = seen.get(m2)
            if nid is None:
                if len(states) >= budget:
                    raise StateBudgetExceeded(
                        "state budget %d exhausted" % budget
                    )
                nid = len(states)
                seen[m2] = nid
                states.append(m2)
                queue.append(nid)
            src.append(sid)
            tr.append(t)
            dst.append(nid)

    return states, src, tr, dst
