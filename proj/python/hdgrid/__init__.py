"""Grid approximation of Hausdorff distances between level-set shapes."""

from . import _core
from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
__all__ = [name for name in dir(_core) if not name.startswith("_")]
