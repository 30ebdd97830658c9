import logging
import os
import sys
from typing import Optional

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_LEVEL_ENV_VAR = "FCPOINCARE_LOG_LEVEL"


def configure_logging(level: Optional[str] = None) -> None:
    """Send log records to stderr so that reports on stdout stay machine-readable."""
    level_name = (level or os.getenv(LOG_LEVEL_ENV_VAR, "WARNING")).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )
