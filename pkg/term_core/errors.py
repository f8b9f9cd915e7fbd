"""Errors raised by the term algebra"""


class TermError(Exception):
    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(self.message)


class UnknownSymbolError(TermError):
    pass


class SortMismatchError(TermError):
    pass


class ContextClassError(TermError):
    pass


class ChainBoundsError(TermError):
    pass


class NotAlmostGroundError(TermError):
    pass


class TermParsingError(TermError):
    pass
