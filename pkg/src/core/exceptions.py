"""
ProbStream Custom Exceptions

Every error carries the process exit code the CLI reports for it:
2 for validation and flag errors, 3 for budget and refusal errors.
"""


class ProbStreamError(Exception):
    """Base exception for all ProbStream errors"""

    exit_code = 1


# Validation errors (exit code 2)


class StreamValidationError(ProbStreamError):
    """Input data violates the probabilistic stream model"""

    exit_code = 2


class ProbSumExceedsOne(StreamValidationError):
    """Tuple probabilities of one item sum past 1 + tol_parse"""

    pass


class NonPositiveProb(StreamValidationError):
    """A tuple probability is zero, negative or not a finite number"""

    pass


class NonPositiveValue(StreamValidationError):
    """A tuple value is below 1"""

    pass


class DuplicateValue(StreamValidationError):
    """The same value appears twice within one item"""

    pass


class StreamFormatError(StreamValidationError):
    """A line of a stream file cannot be parsed"""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class StreamFileNotFoundError(StreamValidationError):
    """A stream file does not exist"""

    pass


class ValueOutOfDomain(StreamValidationError):
    """A value falls outside [1, n]"""

    pass


class DomainUnknown(StreamValidationError):
    """The domain size n is required up front but was not supplied"""

    pass


class InfeasibleSpec(StreamValidationError):
    """A generator specification cannot be satisfied"""

    pass


class ConfigurationError(ProbStreamError):
    """Invalid parameter combination or settings"""

    exit_code = 2


# Computation refusals (exit code 3)


class RefusalError(ProbStreamError):
    """An aggregate is undefined for the input or exceeds a budget"""

    exit_code = 3


class AllBotItem(RefusalError):
    """Conditional mean requested for an item whose whole mass is on the empty outcome"""

    pass


class UndefinedAverage(RefusalError):
    """Every item is all-bottom, so AVG has no realization with elements"""

    pass


class EmptySummary(RefusalError):
    """Rank query against a quantile summary with no inserts"""

    pass


class EmptyInducedStream(RefusalError):
    """Every tuple rounds to zero copies; epsilon is too small for the probabilities"""

    pass


class EnumerationTooLarge(RefusalError):
    """The outcome space exceeds the oracle's enumeration budget"""

    pass
