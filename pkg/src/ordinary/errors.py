"""Exception hierarchy shared by the finders and the CLI."""


class GeometryError(Exception):
    pass


class DegenerateInputError(GeometryError):
    """The input violates a finder's genericity assumption.

    ``reason`` is a short machine-readable tag reported by the CLI.
    """

    reason = "degenerate"


class CollinearInputError(DegenerateInputError):
    reason = "collinear"


class CoconicInputError(DegenerateInputError):
    reason = "co-conic"


class ConcyclicInputError(DegenerateInputError):
    reason = "concyclic"


class CoplanarInputError(DegenerateInputError):
    reason = "coplanar"


class DegenerateReductionError(DegenerateInputError):
    """Coincident projected points leave no ordinary conic through the chosen triple."""

    reason = "degenerate-reduction"


class InvariantViolation(GeometryError):
    """A step that cannot fail in theory did fail. Never swallowed."""
