"""Exception hierarchy shared by all overseer modules.

Every failure the toolkit can report deliberately is an OverseerError;
anything else escaping the library is a bug.
"""


class OverseerError(Exception):
    """Base class for all expected toolkit failures."""


class PnetError(OverseerError):
    """Problem with a .pnet document (syntax, references, arc weights)."""


class PnetSyntaxError(PnetError):
    def __init__(self, message, source="<string>", line=None, column=None):
        self.source = source
        self.line = line
        self.column = column
        where = source
        if line is not None:
            where = "%s:%d" % (source, line)
            if column is not None:
                where = "%s:%d" % (where, column)
        super().__init__("%s: %s" % (where, message))


class UnknownPlaceName(PnetError):
    """A place name does not resolve against the net."""


class NotEnabled(OverseerError):
    """fire() called for a transition that is not enabled."""


class SafenessViolation(OverseerError):
    """A firing would put a second token into a place; the net is not safe."""


class StateBudgetExceeded(OverseerError):
    """Reachability exploration hit the configured state cap."""


class SupportCapExceeded(OverseerError):
    """A border state has more marked places than the over-state cap allows.

    The cap exists because a state with n marked places expands into
    2^n - 1 over-states; raise it explicitly (--max-support) if the
    blow-up is acceptable.
    """


class EmptyConstraintSet(OverseerError):
    """Constraint matrix construction needs at least one constraint."""


class InitialMarkingViolation(OverseerError):
    """The initial marking already violates a constraint; no supervisor exists."""


class ForbiddenInitialMarking(OverseerError):
    """The initial marking is itself forbidden; no supervisor exists."""


class UncontrollableBreach(OverseerError):
    """An authorized state can enter the forbidden set by an uncontrollable
    firing.  After a correct closure this cannot happen; the check fails
    closed instead of synthesizing an unsound controller."""


class UncoverableState(OverseerError):
    """Some border state is covered by no candidate over-state, so a
    maximally permissive token-sum supervisor does not exist."""

    def __init__(self, message, uncovered=()):
        super().__init__(message)
        self.uncovered = tuple(uncovered)


class NonBinaryController(OverseerError):
    """The controller needs arc weights or markings beyond 0/1 and cannot
    be materialized as a safe net (verification still runs on the
    composite representation)."""


class VerificationFailure(OverseerError):
    """The rebuilt closed loop contradicts what synthesis promised."""


class StageFailure(OverseerError):
    """Wraps an error with the pipeline stage it occurred in."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__("%s: %s" % (stage, cause))
