# SPDX-License-Identifier: Apache-2.0
"""Bell-inequality tests for continuous-variable states."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
