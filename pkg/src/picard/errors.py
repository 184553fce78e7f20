class ValidationError(ValueError):
    """Bad user input: non-squarefree d, bad parahoric placement, malformed word."""


class BudgetExceeded(RuntimeError):
    """A coset enumeration or subgroup search ran past its coset budget."""


class DataError(ValueError):
    """A group data file is inconsistent with what it claims."""
