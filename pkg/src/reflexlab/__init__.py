"""reflexlab: exact verification of CM-group norm, character, and Pfister
identities on signed-permutation models."""

from .cm_structure import CMGroup, CMType, validate_cm_group
from .errors import InputError, ResourceLimitError
from .signed_perm import Group, SignedPerm, close, full_hyperoctahedral

__version__ = "0.1.0"

__all__ = [
    "CMGroup",
    "CMType",
    "Group",
    "InputError",
    "ResourceLimitError",
    "SignedPerm",
    "close",
    "full_hyperoctahedral",
    "validate_cm_group",
    "__version__",
]
