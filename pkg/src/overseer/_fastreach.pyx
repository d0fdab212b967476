# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled reachability exploration kernel (nets with at most 64 places).

Mirrors overseer._pyreach.explore exactly: BFS closure over uint64
marking masks, transitions in index order, discovery-order numbering.
"""

from cython.operator cimport dereference
from libc.stdint cimport uint64_t
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map

from .errors import SafenessViolation, StateBudgetExceeded

MAX_PLACES = 64


def explore(int n_places, pre_masks, post_masks, m0, long budget):
    if n_places > MAX_PLACES:
        raise ValueError("compiled kernel handles at most 64 places")

    cdef int n_t = len(pre_masks)
    cdef vector[uint64_t] pre, post, gain
    cdef int t
    for t in range(n_t):
        pre.push_back(<uint64_t> pre_masks[t])
        post.push_back(<uint64_t> post_masks[t])
        gain.push_back(post.back() & ~pre.back())

    cdef vector[uint64_t] states
    cdef unordered_map[uint64_t, long] seen
    cdef vector[long] queue, src, tr, dst

    cdef uint64_t m, m2
    cdef long sid, nid, head = 0

    states.push_back(<uint64_t> m0)
    seen[<uint64_t> m0] = 0
    queue.push_back(0)

    while head < <long> queue.size():
        sid = queue[head]
        head += 1
        m = states[sid]
        for t in range(n_t):
            if pre[t] & ~m:
                continue
            if gain[t] & m:
                raise SafenessViolation(
                    "firing transition %d at state %d yields two tokens in "
                    "one place" % (t, sid)
                )
            m2 = (m & ~pre[t]) | post[t]
            it = seen.find(m2)
            if it == seen.end():
                if <long> states.size() >= budget:
                    raise StateBudgetExceeded(
                        "state budget %d exhausted" % budget
                    )
                nid = <long> states.size()
                seen[m2] = nid
                states.push_back(m2)
                queue.push_back(nid)
            else:
                nid = dereference(it).second
            src.push_back(sid)
            tr.push_back(t)
            dst.push_back(nid)

    out_states = [states[i] for i in range(<long> states.size())]
    out_src = [src[i] for i in range(<long> src.size())]
    out_tr = [tr[i] for i in range(<long> tr.size())]
    out_dst = [dst[i] for i in range(<long> dst.size())]
    return out_states, out_src, out_tr, out_dst
