"""
Audit logging and exit-code mapping for command handlers
"""
from functools import wraps

from config.settings import config
from utils.errors import (
    BudgetExceeded, CharacterTableError, SieveToolkitError, VerificationFailed,
)
from utils.logging_utils import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def audit_log(func):
    """Audit logging decorator"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        if config.ENABLE_AUDIT_LOG:
            logger.info(f"Command {func.__name__} called with args: {args[:2]}...")
        result = func(*args, **kwargs)
        if config.ENABLE_AUDIT_LOG:
            logger.info(f"Command {func.__name__} completed with exit code {result}")
        return result
    return wrapper


def exit_code_for(error: Exception) -> int:
    if isinstance(error, BudgetExceeded):
        return EXIT_BUDGET
    if isinstance(error, (VerificationFailed, CharacterTableError)):
        return EXIT_FAILED
    return EXIT_USAGE


def exit_on_error(func):
    """Map toolkit errors raised by a handler to exit codes 1/2/3"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            result = func(*args, **kwargs)
        except (SieveToolkitError, ValueError) as e:
            code = exit_code_for(e)
            logger.error(f"{func.__name__} failed: {e}")
            return code
        except OSError as e:
            logger.error(f"{func.__name__}: {e}")
            return EXIT_USAGE
        return EXIT_OK if result is None else result
    return wrapper
