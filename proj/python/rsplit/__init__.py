"""Resolvents, proximity operators and projections by relaxed reflected-resolvent splitting."""

from ._rsplit import *  # noqa: F401,F403
from ._rsplit import __doc__  # noqa: F401
