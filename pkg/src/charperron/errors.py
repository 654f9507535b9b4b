"""Exception hierarchy.

Input problems derive from :class:`ValueError`, numerical breakdowns from
:class:`ArithmeticError`; the CLI maps the two families to distinct exit codes.
"""


class CharPerronError(Exception):
    pass


class InputError(CharPerronError, ValueError):
    pass


class InvalidOrderError(InputError):
    pass


class InvalidSizeError(InputError):
    pass


class InvalidPermutationError(InputError):
    pass


class GroupAxiomError(InputError):
    pass


class GroupTooLargeError(InputError):
    pass


class NotAbelianError(InputError):
    pass


class NotTotallyNonzeroError(InputError):
    pass


class RealTableRequiredError(InputError):
    pass


class UnsupportedDimensionError(CharPerronError, ValueError):
    pass


class NumericalError(CharPerronError, ArithmeticError):
    pass


class NumericalDegeneracyError(NumericalError):
    pass


class IllConditionedError(NumericalError):
    pass


class NonRealRealizationError(NumericalError):
    def __init__(self, message, entry=None, value=None):
        super().__init__(message)
        self.entry = entry
        self.value = value


class TableCorruptError(NumericalError):
    pass


class InternalConsistencyError(NumericalError):
    pass
