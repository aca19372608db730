"""Exception hierarchy shared by every module."""


class AtomSetError(Exception):
    pass


class PreconditionError(AtomSetError, ValueError):
    """An operation was called outside its documented domain."""


class ArityError(PreconditionError):
    pass


class WindowTooSmall(PreconditionError):
    pass


class ParseError(AtomSetError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")
