class InstanceError(ValueError):
    """Malformed or inconsistent input data (bad spec file, wrong sizes)."""


class InconsistencyError(RuntimeError):
    """A derived identity failed although the defining axioms passed.

    By construction this can only be an implementation bug.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class CalculusError(ValueError):
    """A calculus invariant failed during construction."""

    def __init__(self, report):
        super().__init__(report.summary())
        self.report = report
