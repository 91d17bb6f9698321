"""Joint Dropout corpus augmentation for low-resource machine translation."""

from jointdrop._core import *  # noqa: F401,F403
from jointdrop._core import __version__  # noqa: F401
