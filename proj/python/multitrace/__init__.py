"""Exact and Monte Carlo multi-trace statistics of classical random matrix ensembles."""

try:
    from ._multitrace import *  # noqa: F401,F403
    from ._multitrace import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension next to the package
    from _multitrace import *  # noqa: F401,F403
    from _multitrace import __version__  # noqa: F401
