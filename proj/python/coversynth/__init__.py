"""Joint plan and sensor design over p-graph worlds.

Covers are lists of blocks; each block is a list of observation names.
"""

try:
    from ._coversynth import (
        Error,
        NotASolutionError,
        Problem,
        ResourceError,
        Solution,
        ValidationError,
        intersect,
        oracle,
        project,
        scenario_names,
        synthesize,
        upper_covers,
        verify,
    )
except ImportError:  # in-tree build: the extension is on sys.path by itself
    from _coversynth import (  # type: ignore[no-redef]
        Error,
        NotASolutionError,
        Problem,
        ResourceError,
        Solution,
        ValidationError,
        intersect,
        oracle,
        project,
        scenario_names,
        synthesize,
        upper_covers,
        verify,
    )

__all__ = [
    "Error",
    "NotASolutionError",
    "Problem",
    "ResourceError",
    "Solution",
    "ValidationError",
    "intersect",
    "oracle",
    "project",
    "scenario_names",
    "synthesize",
    "upper_covers",
    "verify",
]
