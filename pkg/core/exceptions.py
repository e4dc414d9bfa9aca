class EklabError(Exception):
    """Base error for eklab. ``exit_code`` is what the command line returns."""
    exit_code = 1


class DomainError(EklabError, ValueError):
    """An operation was called outside its domain (n < 2, d not squarefree...)."""
    exit_code = 2


class ParameterError(EklabError, ValueError):
    exit_code = 2

    def __init__(self, message, flag=None):
        super().__init__(message)
        self.flag = flag

    def __str__(self):
        message = super().__str__()
        if self.flag:
            return f"{self.flag}: {message}"
        return message


class ResourceError(EklabError):
    """Segment too large for the memory budget, or a 64-bit overflow."""
    exit_code = 2


class IdentityViolation(EklabError, AssertionError):
    """An exact identity failed. This is always a bug, never bad input."""
    exit_code = 1
