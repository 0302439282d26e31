"""Exception types shared across the engine."""


class KwbError(Exception):
    """Base class for all engine errors."""


class InkParseError(KwbError):
    """Raised when an ink document violates the ink JSON schema.

    ``path`` names the offending location, e.g. ``strokes[2].points[0].t``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class EmptySketchError(KwbError):
    """Raised when a sketch without strokes is submitted for assessment."""


class TemplateNotFoundError(KwbError):
    """Raised when a character label has no template in the store."""


class LessonNotFoundError(KwbError):
    """Raised when a lesson id is not in the catalog."""


class StoreError(KwbError):
    """Raised for template store validation or format problems."""


class ConfigError(KwbError):
    """Raised for malformed or inconsistent threshold configuration."""
