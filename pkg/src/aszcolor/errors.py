"""Error types shared across the package.

All of these derive from ValueError so callers that only care about
"bad input" can catch one thing; the CLI distinguishes them to pick
exit codes.
"""


class OracleLimitError(ValueError):
    """An exact oracle was asked for an instance beyond its stated cap."""


class CapacityError(ValueError):
    """An instance exceeds a fixed representation budget (e.g. 62 bicliques)."""


class InvalidPartitionError(ValueError):
    """The biclique list cannot be edge-disjoint (two-cycle or double side tag)."""


class EdgeCollisionError(InvalidPartitionError):
    """Two bicliques cover the same vertex pair."""
