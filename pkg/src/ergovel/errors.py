"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
NumericError -> 4.
"""


class ErgovelError(Exception):
    """Base class for package errors."""


class ConfigError(ErgovelError, ValueError):
    """Invalid run configuration (bad parameter values, missing files)."""


class DataError(ErgovelError, ValueError):
    """Malformed or contract-violating input data."""


class NumericError(ErgovelError, ArithmeticError):
    """A computation produced values outside its numeric contract."""
