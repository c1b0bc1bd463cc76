"""Finite flat commutative group schemes as finite free Hopf algebras, computed exactly."""

from .errors import *  # noqa: F401,F403
from .exactalg import *  # noqa: F401,F403
from .algebra import *  # noqa: F401,F403
from .hopf import *  # noqa: F401,F403
from .groups import *  # noqa: F401,F403
from .primitive import *  # noqa: F401,F403
from .serialize import *  # noqa: F401,F403

__version__ = "0.1.0"
