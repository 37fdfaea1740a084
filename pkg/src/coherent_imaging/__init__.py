"""Heisenberg-limited emitter localization with Chebyshev pulse sequences."""
from .chebyshev import *  # noqa: F401,F403
from .su2 import *  # noqa: F401,F403
from .synthesis import *  # noqa: F401,F403
from .beam import *  # noqa: F401,F403
from .classify import *  # noqa: F401,F403
from .search import *  # noqa: F401,F403

__version__ = "0.1.0"
