"""
Multiple ergodic averages for finite systems.

Finite measure-preserving systems with two commuting actions of an
amenable group, their multiple ergodic averages and exact limits, the
associated recurrence bounds, and brute-force combinatorial scanners.
"""

from importlib.metadata import PackageNotFoundError
from importlib.metadata import version

try:
    __version__ = version("ergavg")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0+unknown"

import logging

from apsbits.utils import logging_setup  # noqa: F401

# modules announce themselves at the BSDEV level of apsbits sessions
if not hasattr(logging.Logger, "bsdev"):
    BSDEV = logging.INFO - 5
    logging.addLevelName(BSDEV, "BSDEV")

    def _bsdev(self, message, *args, **kwargs):
        if self.isEnabledFor(BSDEV):
            self._log(BSDEV, message, args, **kwargs)

    logging.Logger.bsdev = _bsdev
