"""Exception taxonomy shared by the whole package.

Exit-code mapping used by the CLI: InputError -> 2, ResourceLimitError -> 3.
Verification failures are reported, not raised.
"""


class InputError(ValueError):
    """Malformed or inconsistent input (bad generator file, degree mismatch, ...)."""


class ResourceLimitError(RuntimeError):
    """A configured size cap (degree, group order, ambient order) was exceeded."""
