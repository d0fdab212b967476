"""Command line front end: parse a .pnet file, run synthesis, emit the
report and optional artifacts.

Exit codes: 0 success, 2 unreadable or invalid input (including a
non-safe plant and blown state or support budgets), 3 synthesis
impossible for the model, 4 a border state no over-state can express
(rerun with --fallback for an over-restrictive controller), 5 the
closed loop failed verification.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dotexport import closed_loop_to_dot, rg_to_dot
from .errors import (
    ForbiddenInitialMarking,
    InitialMarkingViolation,
    OverseerError,
    PnetError,
    SafenessViolation,
    StageFailure,
    StateBudgetExceeded,
    SupportCapExceeded,
    UncontrollableBreach,
    UncoverableState,
)
from .net import DEFAULT_STATE_BUDGET
from .overstates import DEFAULT_SUPPORT_CAP
from .pipeline import PipelineOptions, run_pipeline
from .pnet import parse_net_file, serialize_net
from .synthesis import assemble_controlled_net

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IMPOSSIBLE = 3
EXIT_UNCOVERABLE = 4
EXIT_VERIFY = 5


def build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="overseer",
        description="Synthesize a maximally permissive control-place "
                    "supervisor for a safe Petri net.",
    )
    p.add_argument("net", metavar="NET.pnet", help="input net description")
    p.add_argument("--out", metavar="FILE",
                   help="write the controlled net as .pnet")
    p.add_argument("--report", metavar="FILE",
                   help="write the report here (a .json twin is written "
                        "alongside)")
    p.add_argument("--dot-rg", metavar="FILE",
                   help="write the plant reachability graph as DOT")
    p.add_argument("--dot-controlled", metavar="FILE",
                   help="write the closed-loop state graph as DOT")
    p.add_argument("--max-support", metavar="K", type=int,
                   default=DEFAULT_SUPPORT_CAP,
                   help="largest border-state support to expand "
                        "(default %(default)s)")
    p.add_argument("--state-budget", metavar="N", type=int,
                   default=DEFAULT_STATE_BUDGET,
                   help="abort exploration beyond N states "
                        "(default %(default)s)")
    p.add_argument("--fallback", action="store_true",
                   help="on uncoverable border states, emit an "
                        "over-restrictive controller instead of failing")
    p.add_argument("--exact-cover", action="store_true",
                   help="exhaustive minimum cover instead of greedy "
                        "(small tables only)")
    return p


def _exit_code_for(exc: OverseerError) -> int:
    cause = exc.cause if isinstance(exc, StageFailure) else exc
    if isinstance(cause, (ForbiddenInitialMarking, UncontrollableBreach,
                          InitialMarkingViolation)):
        return EXIT_IMPOSSIBLE
    if isinstance(cause, UncoverableState):
        return EXIT_UNCOVERABLE
    if isinstance(cause, (PnetError, SafenessViolation, StateBudgetExceeded,
                          SupportCapExceeded)):
        return EXIT_INPUT
    return EXIT_VERIFY


def _report_paths(path_arg: str) -> tuple[Path, Path]:
    path = Path(path_arg)
    if path.suffix == ".json":
        return path.with_suffix(".txt"), path
    return path, path.with_suffix(".json")


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    options = PipelineOptions(
        support_cap=args.max_support,
        state_budget=args.state_budget,
        fallback=args.fallback,
        exact_cover=args.exact_cover,
    )

    try:
        doc = parse_net_file(args.net, options=options)
    except OSError as exc:
        print("overseer: error: cannot read %s: %s" % (args.net, exc),
              file=sys.stderr)
        return EXIT_INPUT
    except PnetError as exc:
        print("overseer: error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT

    try:
        result = run_pipeline(doc, options)
    except OverseerError as exc:
        print("overseer: error: %s" % exc, file=sys.stderr)
        return _exit_code_for(exc)

    report = result.report
    sys.stdout.write(report.render_text())

    if args.report:
        text_path, json_path = _report_paths(args.report)
        text_path.write_text(report.render_text(), encoding="utf-8")
        json_path.write_text(report.render_json(), encoding="utf-8")

    if args.dot_rg:
        Path(args.dot_rg).write_text(
            rg_to_dot(result.rg, result.partition), encoding="utf-8"
        )
    if args.dot_controlled:
        Path(args.dot_controlled).write_text(
            closed_loop_to_dot(doc.net, result.controller, result.closed),
            encoding="utf-8",
        )

    if args.out:
        if result.controller.k == 0 or result.controller.is_binary():
            controlled = assemble_controlled_net(doc.net, result.controller)
            Path(args.out).write_text(
                serialize_net(controlled), encoding="utf-8"
            )
        else:
            print("overseer: warning: controller needs weighted arcs; "
                  "%s not written" % args.out, file=sys.stderr)

    if not report.closed_loop.isomorphic and not args.fallback:
        print("overseer: error: closed loop is not isomorphic to the "
              "authorized behavior", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
