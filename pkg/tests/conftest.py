"""Shared catalog fixtures.

Groups and Contexts are expensive to build (the dihedral8 context takes a
few seconds), so they are cached once per session and shared across files.
"""

from reflexlab.catalog import catalog_group, CATALOG
from reflexlab.group_algebra import Context

ALL_NAMES = sorted(CATALOG)
# catalog groups with |G| <= 200, the exhaustive-check tier
SMALL_NAMES = [
    "n1",
    "b2",
    "b3",
    "iota_c3",
    "iota_s3",
    "dihedral4",
    "dihedral6",
    "dihedral8",
]

_cms = {}
_ctxs = {}


def get_cm(name):
    if name not in _cms:
        _cms[name] = catalog_group(name)
    return _cms[name]


def get_ctx(name):
    if name not in _ctxs:
        _ctxs[name] = Context(get_cm(name))
    return _ctxs[name]
