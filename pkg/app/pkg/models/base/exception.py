"""Base exception for the library and the command line."""

__all__ = ["BaseSLPException"]


class BaseSLPException(Exception):
    """Base internal exception.

    Attributes:
        message:
            Message of exception.
        exit_code:
            Process exit code used when the exception reaches the command line.

    Examples:
        Before using this class, you must create your own exception class.
        And inherit from this class.::

            >>> from app.pkg.models.base.exception import BaseSLPException
            >>> class MyException(BaseSLPException):
            ...     message = "My exception"
            ...     exit_code = 2

        After that, you can raise it anywhere in the library::

            >>> def my_func():
            ...     raise MyException("rule 3 is broken")
    """

    message: str = "Base SLP exception."
    exit_code: int = 2

    def __init__(self, message: (str | Exception | dict) | None = None):
        """Init BaseSLPException.

        Args:
            message:
                Message of exception, by default the class ``message``.
        """
        if message is not None:
            self.message = message

        if isinstance(message, Exception):
            self.message = str(message)

        if isinstance(message, dict):
            self.message = ", ".join(f"{k}={v}" for k, v in message.items())

        super().__init__(self.message)
