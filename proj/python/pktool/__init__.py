from ._pkcore import *  # noqa: F401,F403
from ._pkcore import __doc__  # noqa: F401
