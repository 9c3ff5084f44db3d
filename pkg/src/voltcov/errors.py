"""Exception types shared across the library.

Everything raised on purpose derives from :class:`VoltcovError`, so callers
(and the CLI) can distinguish modelling errors from genuine bugs.
"""

from __future__ import annotations


class VoltcovError(Exception):
    """Base class for all errors raised by this library."""


class DegreeMismatch(VoltcovError):
    """Permutations of different degrees were combined."""


class OrderCapExceeded(VoltcovError):
    """Closure enumeration grew past the configured order cap."""


class NotASubgroup(VoltcovError):
    """An operation expected H <= G but some element of H is outside G."""


class NotInAmbientGroup(VoltcovError):
    """A generating part lies outside the ambient group."""


class NotInGroup(VoltcovError):
    """A group element argument is not a member of the expected group."""


class InvNotInvolution(VoltcovError):
    """The dart-inverse map fails inv(inv(x)) == x for some dart."""


class DanglingDart(VoltcovError):
    """A dart points at a vertex or dart index that does not exist."""


class NotConnected(VoltcovError):
    """A connected graph was required."""


class TooLarge(VoltcovError):
    """An exhaustive search was asked for on an instance above its cap."""


class GvgInvalid(VoltcovError):
    """A quadruple (base, group, weights, voltages) breaks a defining condition."""

    def __init__(self, message: str, dart: int | None = None):
        super().__init__(message)
        self.dart = dart


class Eq1Violation(GvgInvalid):
    """Some dart weight is not contained in the weight of its initial vertex."""


class Eq2Violation(GvgInvalid):
    """Some dart weight is not the voltage-conjugate of its inverse's weight."""


class Eq3Violation(GvgInvalid):
    """For some dart x, volt(inv x) * volt(x) falls outside the weight of x."""


class BaseNotConnected(GvgInvalid):
    """The base graph of a voltage graph must be connected."""


class ConditionViolation(VoltcovError):
    """A convenience constructor was fed data breaking one of its conditions."""


class SizeCapExceeded(VoltcovError):
    """The requested cover is larger than the configured size cap."""


class NotAnAction(VoltcovError):
    """The supplied permutations do not act on the graph by automorphisms."""


class BadTransversal(VoltcovError):
    """Orbit representatives do not form a connected transversal."""


class LoopOrSemiEdge(VoltcovError):
    """A dart with distinct endpoints was required."""


class NotASpanningTree(VoltcovError):
    """The supplied dart set is not a spanning tree of the base graph."""


class IncompatiblePair(VoltcovError):
    """A (graph iso, group iso) pair fails one of its matching conditions."""


class SpecFormatError(VoltcovError):
    """A text or JSON input file could not be parsed; message carries position."""
