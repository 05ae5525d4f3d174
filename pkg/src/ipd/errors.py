"""Exception hierarchy for the ipd package.

Every error raised deliberately by this package derives from IpdError, so
callers can catch one type at the boundary. Input-shaped problems (bad
probabilities, malformed tables) additionally derive from ValueError via
ValidationError, which keeps ``except ValueError`` workflows functional.
"""

from __future__ import annotations


class IpdError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(IpdError, ValueError):
    """Malformed or inconsistent input data."""


class NonPositiveMass(ValidationError):
    """A secret was given zero or negative marginal mass."""


class MassNotNormalized(ValidationError):
    """A probability vector does not sum to one within tolerance."""


class ConditionalOutOfRange(ValidationError):
    """A conditional probability lies outside [0, 1]."""


class DegenerateConditional(ValidationError):
    """Cell posteriors are inconsistent with a conditional of 0 or 1."""


class BadWeights(ValidationError):
    """Split weights must be positive and sum to one."""


class NotEquivalentSignals(IpdError):
    """Signals in a merge group do not share posteriors within tolerance."""


class ZeroMassContext(IpdError):
    """Sampling was requested for a (secret, state) pair of probability zero."""


class MeanMismatch(IpdError):
    """Two posterior summaries disagree on the prior state probability."""


class NotBinarySecret(IpdError):
    """A binary-secret operation was called with a different support size."""


class DegenerateRatio(IpdError):
    """Regime ratios are undefined because a conditional sits at 0 or 1."""


class UnsupportedSize(IpdError):
    """The secret support exceeds the configured enumeration cap."""


class NoFeasibleAssignment(IpdError):
    """No enumerated assignment produced a feasible linear program."""

    def __init__(self, message: str, diagnostics: tuple = ()):  # pragma: no cover
        super().__init__(message)
        self.diagnostics = diagnostics


class ZeroBaselineUtility(IpdError):
    """The perfect-privacy baseline utility is zero, so the gain ratio is
    undefined; gain computations report infinity with a flag instead of
    raising this, but the type names the condition for callers that want
    to treat it as an error."""
