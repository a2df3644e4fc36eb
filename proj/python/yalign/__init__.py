"""DoF region and signal-alignment toolkit for the three-user MIMO Y channel.

Thin Python layer over the C++ core: structured results cross the pybind11
boundary as JSON strings and are parsed into dicts here. Rationals are "p/q"
strings throughout.
"""

import json

try:
    from yalign import _core
except ImportError:  # built-tree layout: extension next to the package
    import _core

__all__ = [
    "region",
    "contains",
    "max_weighted",
    "plan",
    "monte_carlo",
    "verify",
]


def region(m1, m2, m3, n, with_vertices=False):
    """Halfspace system (and optionally the vertex set) of the DoF region."""
    return json.loads(_core.region_json(m1, m2, m3, n, with_vertices))


def contains(m1, m2, m3, n, dof):
    """Exact membership of a 6-entry DoF tuple (strings like "1/2")."""
    return _core.contains(m1, m2, m3, n, [str(x) for x in dof])


def max_weighted(m1, m2, m3, n, weights):
    """Maximum weighted DoF sum over the region, with an argmax vertex."""
    return json.loads(_core.max_weighted(m1, m2, m3, n,
                                         [str(x) for x in weights]))


def plan(m1, m2, m3, n, dof):
    """Pattern decomposition and feasibility report for an in-region tuple."""
    return json.loads(_core.plan_json(m1, m2, m3, n, [str(x) for x in dof]))


def monte_carlo(m1, m2, m3, n, dof, trials=10, seed=1, mode="noiseless",
                power_grid_db=(40.0, 50.0, 60.0)):
    """Seeded Monte Carlo synthesis and recovery/rate statistics."""
    return json.loads(_core.monte_carlo_json(m1, m2, m3, n,
                                             [str(x) for x in dof], trials,
                                             seed, mode,
                                             list(power_grid_db)))


def verify(m1, m2, m3, n, dof, seed=1):
    """Independent oracle verdicts: membership, rank audit, end-to-end map."""
    return json.loads(_core.verify_json(m1, m2, m3, n,
                                        [str(x) for x in dof], seed))
