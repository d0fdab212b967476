"""Reachability kernel benchmark: compiled extension vs pure Python.

The workload is a family of k independent three-place token rings, so
the state count is exactly 3^k and every state has k enabled
transitions.  Both kernels must agree on the full edge set before any
timing is reported.
"""

import argparse
import time

from overseer import Marking, PetriNet, build_reachability_graph
from overseer.net import reachability_backend


def ring_net(k):
    """k disjoint rings of three places, one token circling each."""
    places = []
    transitions = []
    controllable = []
    pre = []
    post = []
    for r in range(k):
        base = 3 * r
        places += ["R%da" % r, "R%db" % r, "R%dc" % r]
        for step in range(3):
            transitions.append("t%d_%d" % (r, step))
            controllable.append(True)
            pre.append([base + step])
            post.append([base + (step + 1) % 3])
    m0 = Marking.from_support(3 * k, [3 * r for r in range(k)])
    return PetriNet("rings%d" % k, places, transitions, controllable,
                    pre, post, m0)


def best_time(net, backend, budget, repeats):
    rg = None
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        rg = build_reachability_graph(net, budget=budget, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, rg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rings", type=int, default=9,
                    help="largest ring count to time (3^k states)")
    ap.add_argument("--repeats", type=int, default=3,
                    help="timing repetitions, best is kept")
    args = ap.parse_args()

    have_compiled = reachability_backend(3 * args.max_rings) == "compiled"
    if not have_compiled:
        print("compiled kernel unavailable, timing the pure kernel only")

    header = "%6s %8s %9s" % ("rings", "states", "pure")
    if have_compiled:
        header += " %9s %8s" % ("compiled", "speedup")
    print(header)

    for k in range(2, args.max_rings + 1):
        net = ring_net(k)
        budget = 3 ** k + 1
        t_pure, rg_pure = best_time(net, "pure", budget, args.repeats)
        assert rg_pure.n_states == 3 ** k
        row = "%6d %8d %8.2fms" % (k, rg_pure.n_states, t_pure * 1e3)
        if have_compiled:
            t_fast, rg_fast = best_time(net, "compiled", budget,
                                        args.repeats)
            assert rg_fast.n_states == rg_pure.n_states
            assert rg_fast.edges == rg_pure.edges, "kernels disagree"
            row += " %8.2fms %7.1fx" % (t_fast * 1e3, t_pure / t_fast)
        print(row)


if __name__ == "__main__":
    main()
