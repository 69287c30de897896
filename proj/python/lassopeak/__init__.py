"""Lasso regularization paths, cross-validated model selection, and the
n/p = 1 peaking experiment."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
