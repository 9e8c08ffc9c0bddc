"""Exception hierarchy.

Every error carries the process exit code the CLI reports for it:
1 = usage, 2 = validation failure, 3 = computation infeasible.
"""

from __future__ import annotations


class EmbedlabError(Exception):
    exit_code = 1


class UsageError(EmbedlabError):
    """Bad flags, unknown subcommand, malformed literal on the command line."""

    exit_code = 1


class ConfigError(UsageError):
    """An EMBEDLAB_* environment variable holds an unusable value."""


class ValidationError(EmbedlabError, ValueError):
    """Input violates a documented precondition."""

    exit_code = 2


class SizeLimitError(ValidationError):
    pass


class MembershipError(ValidationError):
    """A point is not part of the space it was looked up in."""


class MoleculeError(ValidationError):
    pass


class CertificateError(ValidationError):
    pass


class DimensionError(ValidationError):
    pass


class InfeasibleError(EmbedlabError):
    exit_code = 3


class PerturbationTooLargeError(InfeasibleError):
    pass
