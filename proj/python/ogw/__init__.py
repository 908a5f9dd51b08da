"""Ordered groups and Weihrauch reductions."""

from ._ogw import *  # noqa: F401,F403
from ._ogw import __doc__  # noqa: F401
