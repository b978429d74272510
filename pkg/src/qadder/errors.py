"""Exception classes shared across the package.

The CLI maps these onto distinct exit codes, so keep the hierarchy flat:
DomainError for arguments outside the defined region, ParseError for
malformed circuit/QASM text, ConfigError for bad run-config files.
Programming-contract violations (wrong gate arity, non-unitary input)
raise plain ValueError.
"""


class DomainError(ValueError):
    """Argument outside the domain an operation is defined on."""


class ParseError(ValueError):
    """Malformed circuit or QASM text."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class ConfigError(ValueError):
    """Invalid run-config file; carries the offending key when known."""

    def __init__(self, message: str, key: str | None = None):
        self.key = key
        super().__init__(message if key is None else f"{key}: {message}")
