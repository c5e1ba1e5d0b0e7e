"""Custom error classes for rankset."""


class Error(Exception):
    """Base class for rankset Exceptions."""

    pass


class DomainError(Error):
    """Custom Exception for an invalid domain size, element code or set code.
    """

    pass


class DecodeError(Error):
    """Custom Exception for when an assignment or relation cannot be read as
    the requested structure (partial assignment, non-linear element order).
    """

    pass


class MslspSyntaxError(Error):
    """Custom Exception for when MSLSP source text cannot be parsed.

    Args:
        message (:obj:`str`): What went wrong.
        line (:obj:`int`, optional): 1-based line of the offending token.
        column (:obj:`int`, optional): 1-based column of the offending token.

    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return self.message
        return '{}:{}: {}'.format(self.line, self.column, self.message)


class SortError(MslspSyntaxError):
    """Custom Exception for an ill-sorted MSLSP term or atom."""

    pass


class ArityError(MslspSyntaxError):
    """Custom Exception for a function or relation symbol applied to the
    wrong number of arguments."""

    pass


class UnboundVariableError(MslspSyntaxError):
    """Custom Exception for a free variable where a closed formula was
    required."""

    pass


class NotClosedError(Error):
    """Custom Exception for grounding a formula that has free variables.

    Args:
        names (:obj:`list` of :obj:`str`): The free variable names.

    """

    def __init__(self, names):
        self.names = sorted(names)
        super().__init__('formula is not closed; free variables: {}'
                         .format(', '.join(self.names)))


class DimacsError(Error):
    """Custom Exception for malformed DIMACS CNF text.

    Args:
        message (:obj:`str`): What went wrong.
        line (:obj:`int`, optional): 1-based line number.

    """

    def __init__(self, message, line=None):
        self.message = message
        self.line = line
        super().__init__(message if line is None
                         else 'line {}: {}'.format(line, message))


class SolverError(Error):
    """Custom Exception for malformed solver input or an internal solver
    failure (for example a model that does not satisfy its formula)."""

    pass


class ProofError(Error):
    """Custom Exception for proof traces that were requested on a satisfiable
    or undecided instance, or that a checker rejects."""

    pass


class CheckpointError(Error):
    """Custom Exception for an unreadable or incompatible checkpoint file.

    Args:
        path (:obj:`str`): The checkpoint file.
        message (:obj:`str`): What went wrong.

    """

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__('{}: {}'.format(path, message))


class LatticeConflictError(Error):
    """Custom Exception for a verdict contradicting a resolved lattice cell.

    This always indicates an encoding or solver bug, so searches abort.

    """

    pass


class IncompleteLatticeError(Error):
    """Custom Exception for reading final results off an unfinished
    lattice."""

    pass


class OracleError(Error):
    """Custom Exception for calling the brute-force oracle outside the range
    where its enumeration covers the search space."""

    pass


class ReportError(Error):
    """Custom Exception for a results file or CSV table that cannot be read
    back."""

    pass
