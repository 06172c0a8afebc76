"""Exception hierarchy shared by the library and the CLI."""


class QuatRootsError(Exception):
    """Base class for every error raised by quatroots."""


class ZeroDivision(QuatRootsError, ZeroDivisionError):
    """Inverse of a quaternion whose norm is below the inverse floor."""


class RealityViolation(QuatRootsError, ArithmeticError):
    """A product that must be real carries a non-negligible imaginary part."""


class DomainError(QuatRootsError, ValueError):
    pass


class PreconditionViolation(QuatRootsError, ValueError):
    pass


class ClassCollision(QuatRootsError):
    """Two iterates (nearly) share a congruence class, so the correction is singular."""

    def __init__(self, index, magnitude):
        super().__init__(f"iterate {index} collides with another congruence class "
                         f"(|Q_i(z_i)| = {magnitude:.3e})")
        self.index = index
        self.magnitude = magnitude


class TooManyCollisions(QuatRootsError):
    pass


class NotConverged(QuatRootsError):
    """Raised by strict solves; the partial outcome is attached."""

    def __init__(self, outcome):
        super().__init__(f"no convergence after {outcome.iterations} iterations")
        self.outcome = outcome


class NotAZero(QuatRootsError, ValueError):
    pass


class DiagnosticConflict(QuatRootsError):
    """The conjugate-evaluation and quadratic-division sphere tests disagree."""


class CountMismatch(QuatRootsError, ValueError):
    pass


class ParseError(QuatRootsError, ValueError):
    pass


class DegreeZero(ParseError):
    pass
