from typing import Optional, Tuple


class LabError(Exception):
    """Racine des erreurs du laboratoire."""


class StructureError(LabError, ValueError):

    def __init__(self, message: str, witness: Optional[Tuple] = None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(LabError, ValueError):
    pass


class CapExceededError(PreconditionError):
    pass


class WindowExhaustedError(LabError):

    def __init__(self, message: str, window: Optional[int] = None):
        super().__init__(message)
        self.window = window


class InputFormatError(LabError, ValueError):

    def __init__(self, message: str, source: str = "<entrée>",
                 line_number: Optional[int] = None):
        location = source if line_number is None else f"{source}:{line_number}"
        super().__init__(f"{location}: {message}")
        self.source = source
        self.line_number = line_number


class XPathUnavailable(LabError):
    pass
