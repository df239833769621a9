"""
Exception types shared by all toolkit packages
"""


class SieveToolkitError(Exception):
    """Base class for toolkit errors"""


class PartitionError(SieveToolkitError, ValueError):
    """Invalid partition or mismatched partition sizes"""


class ConfigError(SieveToolkitError, ValueError):
    """Invalid configuration value or file"""


class BudgetExceeded(SieveToolkitError):
    """A configured computation budget would be exceeded"""

    def __init__(self, budget: str, requested, limit):
        self.budget = budget
        self.requested = requested
        self.limit = limit
        super().__init__(f"Budget {budget} exceeded: requested {requested}, limit {limit}")


class CharacterTableError(SieveToolkitError, ArithmeticError):
    """An identity that must hold exactly for characters failed"""


class UnsupportedTarget(SieveToolkitError, ValueError):
    """Target set not supported by the chosen state space"""


class TranscriptFormatError(SieveToolkitError, ValueError):
    """Malformed transcript or forest description"""


class VerificationFailed(SieveToolkitError):
    """A named verification check failed"""

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        self.detail = detail
        super().__init__(f"Check {check} failed" + (f": {detail}" if detail else ""))
