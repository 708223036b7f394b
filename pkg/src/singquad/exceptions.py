"""Exception hierarchy.

Every error raised by the library derives from :class:`SingquadError`, which
is itself a :class:`ValueError` so generic callers can keep catching that.
"""


class SingquadError(ValueError):
    """Base class for all library errors."""


class InvalidGrid(SingquadError):
    pass


class OutOfRange(SingquadError):
    """A singularity abscissa lies outside the open grid interval."""


class NodeCollision(SingquadError):
    """A singularity sits (numerically) on a grid node.

    The side the nodal sample belongs to is then ambiguous, so the correction
    cannot be attributed.
    """


class UnsupportedDegree(SingquadError):
    pass


class InvalidVariant(SingquadError):
    pass


class PanelMismatch(SingquadError):
    """Interval count is not a multiple of the rule's panel width."""


class MissingJumps(SingquadError):
    """Fewer jump values than the rule degree requires."""


class TwoSingularitiesInOnePanel(SingquadError):
    pass


class MissingDerivativeBound(SingquadError):
    pass


class ConvergenceError(SingquadError):
    """The adaptive reference integrator did not reach its tolerance."""


class UnregisteredFunction(SingquadError):
    """No closed-form antiderivative is known for the integrand."""
