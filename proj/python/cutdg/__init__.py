"""Bound-preserving cut-DG solver for 1D hyperbolic conservation laws.

The compiled extension carries the solver; this package re-exports its
surface. See ``cutdg._core`` docstrings for the individual operations.
"""

from cutdg._core import (  # noqa: F401
    ConfigError,
    InvariantViolation,
    converge,
    gauss_legendre,
    gauss_lobatto,
    lobatto_order_for_degree,
    mesh_summary,
    riemann_exact,
    run,
    run_config_file,
    verify,
)

__all__ = [
    "ConfigError",
    "InvariantViolation",
    "converge",
    "gauss_legendre",
    "gauss_lobatto",
    "lobatto_order_for_degree",
    "mesh_summary",
    "riemann_exact",
    "run",
    "run_config_file",
    "verify",
]
