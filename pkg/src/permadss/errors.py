"""Exception types shared across the package."""


class FuzzyError(Exception):
    """Base class for all domain errors raised by this package."""


class OutOfRangeError(FuzzyError):
    """A crisp value fell outside a variable's declared universe."""

    def __init__(self, name: str, value: float, lo: float, hi: float):
        self.name = name
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__(f"{name}={value!r} is outside the range [{lo!r}, {hi!r}]")


class NoRuleFiredError(FuzzyError):
    """Every rule fired with strength zero, so the output set is empty.

    Deliberately distinct from a numeric failure: a silent 0 would read
    as an extreme recommendation rather than as "the system is mute".
    """


class UnknownScenarioError(FuzzyError):
    """A scenario name other than the supported ones was requested."""

    def __init__(self, scenario: str, known: tuple):
        self.scenario = scenario
        self.known = known
        super().__init__(f"unknown scenario {scenario!r}; expected one of {list(known)}")


class FisParseError(FuzzyError):
    """A syntax or semantic error in FIS text, with source position."""

    def __init__(self, message: str, line: int, col: int):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")
