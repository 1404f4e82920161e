"""Exception types shared across the solver stack."""


class ShapeMismatchError(ValueError):
    """Field shapes or direction counts disagree with the grid geometry."""


class InvalidMaterialError(ValueError):
    """Cross sections violate the positivity requirements of the scheme."""


class BlowupError(FloatingPointError):
    """A time step produced nonfinite values or the density ran away.

    Carries the step index and simulation time at which the instability
    was detected, so callers (and the CLI exit-code contract) can report
    exactly where a run died.
    """

    def __init__(self, message: str, step: int, time: float):
        super().__init__(message)
        self.step = step
        self.time = time
