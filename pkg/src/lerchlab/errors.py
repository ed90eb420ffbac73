"""Exception types shared across the package.

Validation failures (bad parameters, violated preconditions) raise plain
ValueError.  ComputationError and its subclasses mark failures that occur
during an otherwise well-posed computation; the CLI maps ValueError to exit
code 2 and ComputationError to exit code 1.
"""


class ComputationError(Exception):
    """A well-posed computation could not produce a result."""


class PoleError(ComputationError):
    """Evaluation was requested too close to the simple pole at s = 1."""


class ConvergenceError(ComputationError):
    """The remainder bound could not reach the requested accuracy within
    the configured limits."""


class EmptyWindowError(ComputationError):
    """No integer falls inside a requested summation window."""
