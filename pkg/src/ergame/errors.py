"""Exception types shared across the package."""


class ErgameError(Exception):
    """Base class for all package errors."""


class CapExceededError(ErgameError):
    """A requested depth/order would exceed the configured word-count cap."""


class InvariantError(ErgameError):
    """A data invariant failed validation; the message names the constraint."""


class SchemaError(InvariantError):
    """A structured input document does not match its schema."""


class SpecMismatchError(InvariantError):
    """Two objects were combined that live on incompatible shift spaces."""


class ConvergenceError(ErgameError):
    """An iterative solver failed to converge within its iteration budget."""


class SolverError(ErgameError):
    """An LP or eigensolve failed in a way that signals an internal bug."""
