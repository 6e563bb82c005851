"""Phase-locking polytopes for the all-to-all Kuramoto model.

Thin Python layer over the C++ core: coupling constants, boundary point
families, polytope norms and membership, weighted Monte Carlo and exact
volumes, and extreme-value scaling sequences.
"""

try:
    from ._kuramoto import (
        cs_points,
        db_points,
        exact_volume,
        in_polytope,
        locking_test,
        mc_volume,
        norm,
        postnikov_volume,
        scaling,
        stability,
        tau,
        tau_general,
        transition_curve,
        true_volume,
    )
except ImportError:
    # development layout: the extension sits on PYTHONPATH (CMake build dir)
    # instead of inside the installed package
    from _kuramoto import (
        cs_points,
        db_points,
        exact_volume,
        in_polytope,
        locking_test,
        mc_volume,
        norm,
        postnikov_volume,
        scaling,
        stability,
        tau,
        tau_general,
        transition_curve,
        true_volume,
    )

__all__ = [
    "cs_points",
    "db_points",
    "exact_volume",
    "in_polytope",
    "locking_test",
    "mc_volume",
    "norm",
    "postnikov_volume",
    "scaling",
    "stability",
    "tau",
    "tau_general",
    "transition_curve",
    "true_volume",
]
