"""
Alpharm Exceptions
Error hierarchy shared by the numerical modules and the CLI exit-code mapping
"""

from typing import Optional


class AlphaHarmonicError(Exception):
    """Base class for every error raised by alpharm"""


class DomainError(AlphaHarmonicError, ValueError):
    """An argument lies outside the region where a formula is defined"""

    def __init__(self, message: str, parameter: Optional[str] = None):
        super().__init__(message)
        self.parameter = parameter


class AliasingError(DomainError):
    """Too few boundary samples for the requested truncation order"""


class ConvergenceError(AlphaHarmonicError):
    """An iterative procedure hit its iteration cap"""

    def __init__(self, message: str, iterations: int = 0):
        super().__init__(message)
        self.iterations = iterations


class InputFormatError(AlphaHarmonicError):
    """A solution document or boundary table could not be parsed"""


class VerificationFailure(AlphaHarmonicError):
    """At least one checked inequality was violated"""

    def __init__(self, message: str, failed: int = 0):
        super().__init__(message)
        self.failed = failed
