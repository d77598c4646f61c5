import logging
import os
from typing import Optional

from src.utils.config import config


def setup_logging():
    """Set up logging configuration."""
    handlers = [logging.StreamHandler()]

    if config.LOG_FILE:
        # Create log directory if it doesn't exist
        log_dir = os.path.dirname(config.LOG_FILE)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(config.LOG_FILE))

    # Configure logging; the stream handler writes to stderr so reports on
    # stdout stay byte-identical between runs
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
    )

    return logging.getLogger(__name__)


def log_session_start(system_name: str, envelope_dim: int) -> None:
    """Log creation of a star-product session."""
    logger = logging.getLogger(__name__)
    logger.info(
        f"Envelope session for {system_name}: Lie envelope of dimension {envelope_dim}"
    )


def log_check_result(check_name: str, passed: bool, witness: Optional[str] = None) -> None:
    """Log the outcome of an identity or axiom check."""
    logger = logging.getLogger(__name__)
    if passed:
        logger.info(f"Check passed: {check_name}")
    else:
        logger.warning(f"Check FAILED: {check_name} (witness: {witness})")


def log_computation_complete(name: str, processing_time: float) -> None:
    """Log completion of a long-running computation."""
    logger = logging.getLogger(__name__)
    logger.info(f"Computation {name} completed in {processing_time:.2f}s")


def log_error(error_message: str, context: str = None) -> None:
    """Log error event."""
    logger = logging.getLogger(__name__)
    if context:
        logger.error(f"Error in {context}: {error_message}")
    else:
        logger.error(f"Application error: {error_message}")
