"""
Error types for zetakit

Every error carries the process exit code the CLI reports for it, the same
way the HTTP layer attaches a status code to a failure.
"""

from typing import Optional


class ZetaKitError(Exception):
    """Base error with an exit code and a human readable detail"""

    exit_code: int = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class VerificationFailure(ZetaKitError):
    exit_code = 1


class PoleError(ZetaKitError):
    """Evaluation requested at a pole; `point` is the offending location"""

    exit_code = 2

    def __init__(self, detail: str, point: complex):
        super().__init__(detail)
        self.point = point


class UndefinedPointError(PoleError):
    """Point where the zeta function is left undefined (s = 0, 1)"""


class ConditioningError(ZetaKitError):
    exit_code = 3


class UsageError(ZetaKitError):
    exit_code = 64


class DomainError(ZetaKitError):
    exit_code = 65


class RangeError(DomainError):
    """Overflow guard exceeded (exponential range or 64-bit integer width)"""


class RegimeError(DomainError):
    """Argument lies outside the region where the chosen formula is valid"""


class MissingPrerequisiteError(ZetaKitError):
    exit_code = 66


class CacheIOError(ZetaKitError):
    exit_code = 74
