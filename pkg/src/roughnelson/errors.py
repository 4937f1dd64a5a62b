"""Exception hierarchy shared by all modules."""


class RoughNelsonError(Exception):
    """Base class for every error raised by this package."""


class InputError(RoughNelsonError, ValueError):
    """Malformed or inconsistent user input (unknown label, bad matrix, ...)."""


class CapExceededError(RoughNelsonError):
    """An enumeration would exceed the configured universe cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: carrier size {size} exceeds the enumeration cap of {cap} (2^{cap} subsets)")


class LatticeError(InputError):
    """An order is not a lattice, or a lattice lacks a required operation."""


class ConsistencyError(RoughNelsonError):
    """An internal invariant failed; indicates a bug or a false mathematical claim."""


class CheckFailed(RoughNelsonError):
    """A precondition check failed; carries the report with witnesses."""

    def __init__(self, report):
        self.report = report
        names = ", ".join(sorted({f.name for f in report.findings}))
        super().__init__(f"{report.subject}: check failed ({names})")
