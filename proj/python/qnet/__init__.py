"""Epidemic spreading on classical and photonic quantum networks.

Thin Python surface over the C++ core: graph generators, photonic link
weights, epidemic-threshold estimators, and the mNLDS / direct-simulation
dynamics.
"""

from ._qnet import *  # noqa: F401,F403
from ._qnet import __version__  # noqa: F401
