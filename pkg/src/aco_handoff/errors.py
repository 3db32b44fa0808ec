"""Exception hierarchy shared by every layer of the package."""


class HandoffError(Exception):
    """Base class for all errors raised by aco_handoff."""


class EmptyChannelSet(HandoffError, ValueError):
    pass


class DuplicateChannelId(HandoffError, ValueError):
    pass


class EmptyEdgeSet(HandoffError, ValueError):
    pass


class InvalidRhoBounds(HandoffError, ValueError):
    pass


class NoFeasibleChannel(HandoffError):
    """Every candidate channel has zero visibility (availability 0)."""


class ScenarioError(HandoffError):
    """Raised when a scenario document cannot be turned into a Scenario."""


class ParseError(ScenarioError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class ValidationError(ScenarioError, ValueError):
    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")


class UnknownKeyError(ValidationError):
    def __init__(self, field: str, key: str):
        self.key = key
        super().__init__(field, f"unknown key {key!r}")
