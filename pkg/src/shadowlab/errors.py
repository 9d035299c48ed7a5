"""Exception hierarchy.

The CLI maps these onto process exit codes: validation problems exit 3,
budget refusals exit 4, usage mistakes exit 2 (argparse handles the last).
"""

from __future__ import annotations


class ShadowLabError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ShadowLabError, ValueError):
    """Input data violated a documented precondition."""


class CurveFormatError(ValidationError):
    """A curve or voxel file could not be parsed."""


class NotSimpleError(ValidationError):
    """A polygonal chain failed the simplicity check."""


class DegenerateAxisError(ValidationError):
    """The chain lies in a hyperplane orthogonal to the requested axis."""


class EmptySliceError(ShadowLabError):
    """A slice value inside the bounds hit no cells.

    Distinct from ValidationError so callers can tell a gap in the set
    apart from a value outside the declared bounds.
    """


class BudgetError(ShadowLabError):
    """A search or homology request exceeded the configured budget."""
