"""Exception types shared across the package."""


class HeilbronnError(Exception):
    """Base class for all package errors."""


class DegenerateInstance(HeilbronnError):
    """Fewer than three points."""


class DegenerateBoundingBox(HeilbronnError):
    """Bounding box with zero width or height."""


class UnknownInstance(HeilbronnError):
    """No registered configuration for this n."""


class NotApplicable(HeilbronnError):
    """An enhancement or table does not apply to this n."""


class InvalidParameter(HeilbronnError, ValueError):
    pass


class ExportUnsupported(HeilbronnError):
    pass


class OracleTooLarge(HeilbronnError):
    pass
