"""Exception types raised by geometric predicates, builders, and verifiers."""

from __future__ import annotations


class LineLabError(Exception):
    """Base class for all domain errors."""


class NearParallel(LineLabError):
    """Two lines meet at an angle below the configured minimum."""


class DegenerateTriangle(LineLabError):
    """Three lines do not bound a usable triangle (parallel pair or near-concurrent)."""


class DegenerateContact(LineLabError):
    """Two region boundaries touch tangentially or overlap within tolerance."""


class GeneralPositionViolation(LineLabError):
    """Input lines violate the margins required for arrangement construction."""


class QueryDegenerate(LineLabError):
    """A zone query line is unusable: too close to a vertex, a box corner,
    or it crosses some arrangement line outside the clipping box."""


class ValidationFailed(LineLabError):
    """A scene failed general-position or pseudo-disc-family validation."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class UnknownVertex(LineLabError):
    """A referenced line id does not exist in the hypergraph."""


class CapExceeded(LineLabError):
    """A shattered set of the cap size exists; the VC dimension is >= cap."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class WitnessLocalizationFailed(LineLabError):
    """No cell of the reduced arrangement qualifies for a witness disc.

    Signals a predicate or tolerance problem, not a combinatorial one."""


class TooFewLines(LineLabError):
    """A disc scheduled for shrinking meets fewer than two lines."""


class OrderInconsistency(LineLabError):
    """Tangency points along the two wedge rays induce different disc orders."""


class IntervalViolation(LineLabError):
    """A line meets a non-contiguous set of discs in a wedge order."""


class UnattributedEdge(LineLabError):
    """A hyperedge has no witness carrying tangent-pair metadata."""


class ParameterMismatch(LineLabError):
    """Generator parameters are mutually inconsistent."""


class GenerationRetriesExhausted(LineLabError):
    """Rejection sampling failed to produce a margin-valid object."""
