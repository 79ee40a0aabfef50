"""Exact and asymptotic statistics of the 2D Coulomb gas with an annular gap."""

try:  # installed layout: the extension lives inside the package
    from ._coulombgap import *  # noqa: F401,F403
except ImportError:  # build-tree layout: extension on PYTHONPATH
    from _coulombgap import *  # noqa: F401,F403
