class InputError(ValueError):
    """Invalid argument: bad parameter, unknown generator, mixed rings."""


class RewriteError(RuntimeError):
    """Rewriting did not terminate within the step guard."""


class VerificationError(AssertionError):
    """A computed quantity disagrees with its reference value."""
