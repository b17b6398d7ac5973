"""Quench dynamics of the Dicke model and its inverted-oscillator reductions.

Thin python layer over the compiled core; see the README for the CLI and
file-format documentation.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
