"""Exception types shared across the package."""


class PierceError(Exception):
    """Base class for package-specific failures."""


class InvalidBodyError(PierceError):
    """Raised when vertex input cannot be turned into a valid convex body."""


class InsufficientWitnessesError(PierceError):
    """Raised when a witness list is empty but a heavy point was requested."""


class DegenerateQuadrupleError(PierceError):
    """Raised when all four separator angles collapse to a single direction."""


class IncompleteCandidatesError(PierceError):
    """Raised when some body contains none of the supplied candidate points."""


class ConditionNotSatisfiedError(PierceError):
    """Raised when an operation requires the p-subset meeting condition and it fails."""


class EmptyMultisetError(PierceError):
    """Raised when replication is asked to build a multiset with no elements."""


class GenerationError(PierceError):
    """Raised when an instance generator fails its post-check after retries."""


class PipelineError(PierceError):
    """Raised when a pipeline stage cannot produce a usable result."""
