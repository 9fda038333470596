"""
Error Types
Exception hierarchy shared by the library and the CLI.
Each error carries the process exit code the CLI reports for it.
"""


class NetDistError(Exception):
    """Base class for all netdist errors."""

    exit_code = 1


class InputError(NetDistError, ValueError):
    """Unreadable file, malformed matrix or invalid weight values."""

    exit_code = 2


class ContractError(NetDistError, ValueError):
    """Valid inputs that violate an operation's preconditions."""

    exit_code = 3


class NumericalError(NetDistError, RuntimeError):
    """Solver failure: eigensolver, root bracketing or residual check."""

    exit_code = 4
