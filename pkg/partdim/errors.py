"""Exception tree shared by every partdim module.

Each error carries the process exit code the command surface reports for it.
"""

from typing import Optional


class PartdimError(Exception):
    """Base class for all partdim failures"""

    exit_code = 1


class InputError(PartdimError):
    """The caller handed us something we cannot work with"""

    exit_code = 2


class ComputationError(PartdimError):
    """Valid input, but the requested quantity cannot be produced"""

    exit_code = 1


class InvalidEdge(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidPartition(InputError):
    pass


class InvalidPair(InputError):
    pass


class InvalidSet(InputError):
    pass


class InvalidParams(InputError):
    pass


class UnknownFamily(InputError):
    pass


class Disconnected(InputError):
    pass


class TrivialGraph(InputError):
    pass


class NotATree(InputError):
    pass


class PathHasNoProfile(InputError):
    pass


class NoExteriorMajorVertex(InputError):
    pass


class UnsupportedConstruction(InputError):
    pass


class InfeasibleK(ComputationError):
    pass


class TooLarge(ComputationError):
    pass


class ConstructionFailed(ComputationError):
    pass
