"""
Exceptions raised by the event graph services.
"""
from src.conf import messages


class EventGraphError(ValueError):
    """Root of every error raised for invalid input to the services."""


class GraphError(EventGraphError):
    pass


class LabellingError(EventGraphError):
    pass


class LimitExceededError(EventGraphError):
    pass


class DimensionError(EventGraphError):
    pass


class StateError(EventGraphError):
    pass


class DistributionError(EventGraphError):
    pass


class FileFormatError(EventGraphError):
    """
    Malformed input file.

    :param file: Name of the offending file.
    :type file: str
    :param line: 1-based line number, 0 when the whole file is at fault.
    :type line: int
    :param detail: What is wrong.
    :type detail: str
    """

    def __init__(self, file: str, line: int, detail: str):
        super().__init__(messages.FILE_FORMAT.format(file=file, line=line, detail=detail))
        self.file = file
        self.line = line
        self.detail = detail
