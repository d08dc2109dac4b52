"""Exception hierarchy shared across the package."""


class GestureHandError(Exception):
    """Base class for all package errors."""


class SchemaError(GestureHandError):
    """A document does not conform to its schema; message names the offending path."""


class ConfigurationError(GestureHandError):
    """Inputs are structurally valid but inconsistent with the hand model."""


class FitError(GestureHandError):
    """A regression problem is degenerate (too few or collinear samples)."""


class GestureNotFoundError(GestureHandError):
    """Unknown gesture id; carries nearest-name suggestions."""

    def __init__(self, gesture_id: str, suggestions: tuple[str, ...] = ()):
        self.gesture_id = gesture_id
        self.suggestions = tuple(suggestions)
        hint = f" (did you mean: {', '.join(self.suggestions)}?)" if self.suggestions else ""
        super().__init__(f"unknown gesture id {gesture_id!r}{hint}")


class GestureValidationError(GestureHandError):
    """Strict-mode gesture load failed; carries the per-record violation messages."""

    def __init__(self, problems: tuple[str, ...]):
        self.problems = tuple(problems)
        super().__init__(
            f"{len(self.problems)} gesture(s) failed validation:\n  "
            + "\n  ".join(self.problems)
        )


class CompileError(GestureHandError):
    """A manipulation script cannot be compiled into a trajectory."""
