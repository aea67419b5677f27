"""Error types shared across the generator, measures, and harness.

All of these subclass ValueError so callers that only care about
"bad input" can catch one thing. Plain ValueError is still raised for
ordinary argument validation (wrong n, bad ratio, unknown id).
"""


class DegenerateNoiseError(ValueError):
    """Noise vector carries no information (zero variance or all zeros)."""


class DegenerateSignalError(ValueError):
    """Signal has zero variance where a variance ratio is required."""


class DegenerateInputError(ValueError):
    """A measure cannot be computed on this input (e.g. constant vector)."""


class NoRealRootError(ValueError):
    """The exact SSNR adjustment has no real solution for these inputs.

    Callers are expected to re-draw the free noise components and retry.
    """


class SizeCapError(ValueError):
    """Input exceeds a measure's configured size cap; subsample and retry."""
