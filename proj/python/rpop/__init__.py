from ._rpop import *  # noqa: F401,F403
