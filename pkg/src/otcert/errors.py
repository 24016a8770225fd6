"""Exception hierarchy shared by all otcert modules."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from otcert.monotonicity.models import ViolatingCycle


class OTCertError(Exception):
    """Base class for toolkit errors."""


class DimensionMismatchError(OTCertError, ValueError):
    """Points of different dimension were passed to an analytic cost."""


class IndexOutOfRangeError(OTCertError, IndexError):
    """An index does not address an atom of the cost or measure."""


class InfiniteCostError(OTCertError, ValueError):
    """An infinite cost entry was used where a finite one is required."""


class InfeasibleError(OTCertError):
    """No coupling with finite cost exists."""


class SizeExceededError(OTCertError, ValueError):
    """An exhaustive oracle was asked for an instance beyond its size limit."""


class InfiniteOnSupportError(OTCertError):
    """A support pair has infinite cost."""

    def __init__(self, pair: tuple[int, int]) -> None:
        self.pair = pair
        super().__init__(f"Support pair {pair} has infinite cost")


class NotMonotoneError(OTCertError):
    """A support set admits a strictly improving cycle."""

    def __init__(self, cycle: ViolatingCycle) -> None:
        self.cycle = cycle
        super().__init__(
            f"Support is not c-monotone: cycle of length {len(cycle.cycle)} "
            f"improves cost by {cycle.improvement:g}"
        )


class RootOutOfRangeError(OTCertError, IndexError):
    """The root index does not address a support pair."""


class AllNegativeInfinityError(OTCertError, ValueError):
    """A potential is identically -inf, so its c-transform is undefined."""


class DegenerateTransformError(OTCertError, ValueError):
    """A c-transform entry would be +inf: no finite candidate in its column."""


class UnsupportedSpecError(OTCertError, ValueError):
    """A distribution or cost spec is not supported by the requested operation."""
