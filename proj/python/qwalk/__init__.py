"""One-defect (Wojcik) quantum walk on the line.

Thin Python layer over the C++ core: lattice evolution, the closed-form
stationary eigenstates and measures, and the residual checks behind them.
"""

from ._qwalk import *  # noqa: F401,F403
from ._qwalk import __doc__  # noqa: F401

__version__ = "0.1.0"
