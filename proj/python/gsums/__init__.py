from ._gsums import *  # noqa: F401,F403
