"""Exception hierarchy shared by all modules"""

from typing import Any, Optional


class CodeToolkitError(Exception):
    """Base class for every error raised by the toolkit"""


class InputError(CodeToolkitError, ValueError):
    """Malformed polynomial text, seed document, shape or index"""


class SeedValidationError(InputError):
    """A seed matrix failed a hard clustered-cyclic check"""

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report


class IncompatiblePairError(InputError):
    """Two logical indices cannot be merged by one product connection"""


class BudgetExceededError(CodeToolkitError):
    """An enumeration or closure would exceed its configured budget"""


class VerificationError(CodeToolkitError):
    """A named identity failed to hold"""

    def __init__(self, identity: str, detail: str = ""):
        self.identity = identity
        self.detail = detail
        super().__init__(f"{identity}: {detail}" if detail else identity)
