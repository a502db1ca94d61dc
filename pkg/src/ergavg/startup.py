"""
Start ergavg sessions.

Loads the session configuration (``configs/iconfig.yml``) and configures
logging.  The command-line interface calls :func:`init_session` once;
library functions never read the configuration themselves.
"""

# Standard Library Imports
import logging
from pathlib import Path

# Configuration functions
from apsbits.utils.config_loaders import load_config
from apsbits.utils.logging_setup import configure_logging

# Configuration block
# Get the path to the package.
package_path = Path(__file__).parent
iconfig_path = package_path / "configs" / "iconfig.yml"

# Additional logging configuration
# only needed if using a different logging setup
# from the one in the apsbits package
extra_logging_configs_path = package_path / "configs" / "extra_logging.yml"

logger = logging.getLogger(__name__)


def init_session(config_path=None):
    """Load the iconfig, configure logging, and return the iconfig."""
    path = Path(config_path) if config_path is not None else iconfig_path
    iconfig = load_config(path)
    configure_logging(extra_logging_configs_path=extra_logging_configs_path)
    logger.info("Starting ergavg session with iconfig: %s", path)
    return iconfig


def tolerances(iconfig):
    """``(arithmetic, orthonormal, drop)`` tolerances from the iconfig."""
    section = iconfig.get("TOLERANCES", {})
    return (
        float(section.get("ARITHMETIC", 1e-12)),
        float(section.get("ORTHONORMAL", 1e-9)),
        float(section.get("DROP", 1e-10)),
    )
