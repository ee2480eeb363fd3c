__version__ = "26.10.19"

from .utils import log
log.setup_loguru()
from loguru import logger
logger.trace("Mixwitt loading...")
logger.info(f"mixwitt={__version__}")

from .base import *
from .exceptions import *

logger.success("Mixwitt loaded.")
