from fwlp.constants import BRUTE_FORCE_MAX_N


class DimensionMismatchError(ValueError):
    def __init__(self, name: str, expected: int, actual: int) -> None:
        super().__init__(f"Length of {name} is {actual}, expected {expected}!")

class NonFiniteEntryError(ValueError):
    def __init__(self, name: str, index: int) -> None:
        super().__init__(f"Non-finite entry in {name} at position {index}!")

class InvalidParameterError(ValueError):
    def __init__(self, name: str, value: float | int, rule: str) -> None:
        super().__init__(f"Parameter {name}={value} invalid, must be {rule}!")

class InvalidStartPointError(ValueError):
    def __init__(self, message: str) -> None:
        super().__init__(message)

class IndexTooSmallError(ValueError):
    def __init__(self, k: int, minimum: int = 2) -> None:
        super().__init__(f"Iteration index {k} is below {minimum}!")

class SizeLimitExceededError(ValueError):
    def __init__(self, n: int) -> None:
        super().__init__(f"Brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}!")

class UnsupportedSectionError(ValueError):
    def __init__(self, section: str, line: int | None = None) -> None:
        if line is not None:
            super().__init__(f"Unsupported MPS section {section} at line {line}!")
        else:
            super().__init__(f"Unsupported MPS section {section}!")
        self.section = section

class MalformedFieldError(ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            super().__init__(f"Line {line}: {message}")
        else:
            super().__init__(message)

class DuplicateEntryError(ValueError):
    def __init__(self, what: str, line: int | None = None) -> None:
        if line is not None:
            super().__init__(f"Duplicate {what} at line {line}!")
        else:
            super().__init__(f"Duplicate {what}!")

class UnboundedBelowVariableError(ValueError):
    def __init__(self, column: str) -> None:
        super().__init__(f"Variable '{column}' is unbounded below but not declared FR!")

class InconsistentBoundsError(ValueError):
    def __init__(self, column: str, lower: float, upper: float) -> None:
        super().__init__(f"Variable '{column}' has lower bound {lower} above upper bound {upper}!")

class RankDeficiencyRetryLimitError(ValueError):
    def __init__(self, attempts: int) -> None:
        super().__init__(f"Could not sample a full-rank support block in {attempts} attempts!")
