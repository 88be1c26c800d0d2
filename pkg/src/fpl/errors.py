"""Exception types shared across the library."""


class FrameError(Exception):
    """Base class for every error this library raises on purpose."""


class ShapeError(FrameError):
    """Matrix dimensions rule the input out (e.g. fewer vectors than dimensions)."""


class ShapeMismatch(FrameError):
    """Two operands that must share dimensions (or scalar field) do not."""


class NotAFrame(FrameError):
    """The supplied vectors do not span the ambient space."""


class SingularOperator(FrameError):
    """A frame operator turned out numerically singular."""


class NotUnitary(FrameError):
    """The supplied matrix is not unitary/orthogonal within tolerance."""


class NotADual(FrameError):
    """An operation restricted to dual pairs received a pair that is not dual."""


class DomainError(FrameError):
    """A scalar argument lies outside the domain of the formula."""


class SolverFailure(FrameError):
    """The optimiser failed or exhausted its budget before reaching the gap."""


class NotAFusionFrame(FrameError):
    """The subspaces do not span the ambient space (or a basis is defective)."""


class EmptySubspace(FrameError):
    """A subspace basis with zero columns was supplied."""


class FrameFileError(FrameError):
    """A frame or fusion-frame data file is malformed."""
