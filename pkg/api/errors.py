from functools import wraps
from api.logs import logger as logger_wrapper
from api.settings import message
import sys


class ClaspError(Exception):
    """Base class of every domain error raised by the library"""


class DimensionError(ClaspError):
    """Matrix shape is wrong for the requested operation"""


class DomainError(ClaspError):
    """Point, color index or textual input outside the operation's domain"""


class SchemaError(ClaspError):
    """JSON model file does not follow the schema

    Attributes
    ----------
    path : str
        JSON path of the offending node, e.g. ``$.seifert['--']``
    """

    def __init__(self, path, reason):
        super().__init__("{}: {}".format(path, reason))
        self.path = path
        self.reason = reason


class InvalidModelError(ClaspError):
    """Model violates an invariant or lacks metadata an operation needs"""


class IndeterminateError(ClaspError):
    """Approximate eigenvalue falls inside the tolerance guard band"""


class InapplicableError(ClaspError):
    """Operation precondition does not hold at the given point"""


class ZeroDenominatorError(ClaspError):
    """Potential value in a denominator vanishes"""


class InconsistentInputError(ClaspError):
    """Caller-supplied values contradict a structural property"""


class ScanLimitError(ClaspError):
    """Requested scan exceeds the configured point budget"""


def exception_handler(func):
    """Domain error handling decorator for CLI verbs

    Args
    ----
    func : function
        CLI verb returning an exit code

    Returns
    -------
    Function passed through exception handling
    If ClaspError caught:
        log CRITICAL, write the message to stderr and return exit code 1
    If ValueError caught (malformed numeric flags):
        same treatment, exit code 1
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (ClaspError, ValueError) as domain_error:
            logger_wrapper().critical(domain_error)
            sys.stderr.write(message("cli", "msg_domain_error", domain_error) + "\n")
            return 1
    return wrapper
