"""All exceptions of the library you must store here.

Examples:
    This is a simple example of how to create an exception::
        >>> from app.pkg.models.base import BaseSLPException
        >>> class MyException(BaseSLPException):
        ...     message = "My message"
        ...     exit_code = 2
"""

# ruff: noqa

from app.pkg.models.v1.exceptions.bench import *
from app.pkg.models.v1.exceptions.compression import *
from app.pkg.models.v1.exceptions.oracle import *
from app.pkg.models.v1.exceptions.slp import *
