"""Exact combinatorial invariants of fibre integrals over torus hypersurfaces."""

import json

from ._core import (
    ConsistencyError,
    DomainError,
    Error,
    ParseError,
    __version__,
    canonical,
    ehrhart,
    hypergeom,
    poles,
    sigma_count,
    simplicial,
)
from ._core import run_json as _run_json


def run(polynomial, subcommand="analyze", k_max=3, J=(), sigmas=None):
    """Run a pipeline subset and return the report as a dict."""
    return json.loads(_run_json(polynomial, subcommand, k_max, [list(j) for j in J], sigmas))


__all__ = [
    "ConsistencyError", "DomainError", "Error", "ParseError", "__version__",
    "canonical", "ehrhart", "hypergeom", "poles", "run", "sigma_count", "simplicial",
]
