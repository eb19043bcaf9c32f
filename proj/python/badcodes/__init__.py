from ._badcodes import *  # noqa: F401,F403
from ._badcodes import __version__  # noqa: F401
