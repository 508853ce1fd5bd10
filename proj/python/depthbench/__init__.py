"""Depth-prediction evaluation: 2D metrics, point-cloud metrics, and the
per-sample pipeline shared with the ``depthbench`` command-line tool."""

from ._core import (
    ConvergenceError,
    DegenerateInput,
    Error,
    InvalidArgument,
    __version__,
    backproject,
    chamfer,
    emd_approx,
    evaluate_pair,
    fscore_suite,
    metrics_2d,
    metrics_3d,
)

__all__ = [
    "ConvergenceError",
    "DegenerateInput",
    "Error",
    "InvalidArgument",
    "__version__",
    "backproject",
    "chamfer",
    "emd_approx",
    "evaluate_pair",
    "fscore_suite",
    "metrics_2d",
    "metrics_3d",
]
