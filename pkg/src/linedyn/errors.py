"""Exception types shared across the library."""


class LineDynError(Exception):
    """Base class for all library errors."""


class NotFoundError(LineDynError):
    """An element is not a member of the poset or window at hand."""


class InvalidRangeError(LineDynError):
    """A window was requested with lo > hi."""


class InvalidPosetError(LineDynError):
    """The input relation is not a partial order (e.g. the cover digraph has a cycle)."""


class InvalidTailError(LineDynError):
    """A tail rule is malformed, e.g. a shift by an odd offset."""


class InvalidMapError(LineDynError):
    """A map does not satisfy the structural requirement of the operation
    (not order-preserving, not simplicial, image outside the codomain, ...)."""


class OutOfWindowError(LineDynError):
    """An image point fell outside the window of an operation that requires
    in-window values; the caller should widen the window."""


class SizeGuardError(LineDynError):
    """An exhaustive enumeration was requested on a structure larger than the
    guard allows.  Pass force=True to override."""


class NotContinuousError(InvalidMapError):
    """A self-map failed the order-preservation (continuity) check."""


class InconclusiveDynamicsError(LineDynError):
    """An orbit left the window and no tail rule describes the outside
    behaviour, so the analysis cannot decide."""


class NoPeriodTwoError(LineDynError):
    """The period-two point set was requested for a map without period-two
    points."""


class InvalidMultiMapError(LineDynError):
    """A multivalued map has an empty or out-of-window value set."""


class NotVietorisError(LineDynError):
    """A Lefschetz computation was requested for a multivalued map that is
    not Vietoris-like."""


class InternalConsistencyError(LineDynError):
    """An invariant that should be guaranteed by a verified precondition
    failed; indicates a bug rather than bad input."""


class SpecFormatError(LineDynError):
    """A JSON map description could not be parsed."""
