import pytest

from reflexlab.catalog import (
    CATALOG,
    build_dihedral,
    build_from_generators,
    build_iota_times_g0,
    catalog_group,
    dihedral_counts,
    dihedral_shimura_check,
)
from reflexlab.cm_structure import reflex_subgroup
from reflexlab.errors import InputError

from conftest import get_cm

# [DERIVED] group orders
ORDERS = {
    "n1": 2,
    "b2": 8,
    "b3": 48,
    "b4": 384,
    "iota_c3": 6,
    "iota_s3": 12,
    "dihedral4": 16,
    "dihedral6": 24,
    "dihedral8": 32,
}

# [DERIVED] dihedral subset counts (s_j, s~_j, t_j, t~_j) per divisor j of
# the odd part, frozen from an independent brute force over bit masks.
COUNTS = {
    4: {1: (16, 4, 8, 4)},
    6: {1: (4, 2, 2, 2), 3: (60, 6, 30, 6)},
    8: {1: (256, 16, 128, 16)},
    10: {1: (4, 2, 2, 2), 5: (1020, 30, 510, 30)},
    12: {1: (16, 4, 8, 4), 3: (4080, 60, 2040, 60)},
}


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_orders(name):
    assert get_cm(name).order == ORDERS[name]


def test_catalog_unknown_name():
    with pytest.raises(InputError, match="unknown catalog group"):
        catalog_group("nosuch")


@pytest.mark.parametrize("n", [4, 5, 6, 8])
def test_dihedral_relations(n):
    model = build_dihedral(n)
    g = model.cm.group
    a, b = model.alpha, model.beta
    p = g.identity_pos
    for _ in range(n):
        p = g.mul(p, a)
    assert p == model.cm.iota_pos  # alpha^n = iota
    assert g.mul(p, p) == g.identity_pos  # alpha^2n = id
    assert g.mul(b, b) == g.identity_pos
    assert g.mul(g.mul(b, a), g.inv(b)) == g.inv(a)
    assert g.order == 4 * n


@pytest.mark.parametrize("n", [4, 6, 8])
def test_dihedral_reflection_is_transposition_product(n):
    # [DERIVED] rho(alpha^i beta) equals the product of the transpositions
    # (a, b) with a + b = i + 2 mod n, built independently here
    model = build_dihedral(n)
    g = model.cm.group
    pos = g.identity_pos
    for i in range(n):
        e = g.elements[g.mul(pos, model.beta)]
        perm = list(range(1, n + 1))
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                if (a + b - i - 2) % n == 0:
                    perm[a - 1], perm[b - 1] = perm[b - 1], perm[a - 1]
        assert e.perm == tuple(perm), (n, i)
        pos = g.mul(pos, model.alpha)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_dihedral_reflex_of_base_type(n):
    # frozen oracle: H*(Phi_0) = {id, alpha^(n-1) beta}
    model = build_dihedral(n)
    g = model.cm.group
    p = g.identity_pos
    for _ in range(n - 1):
        p = g.mul(p, model.alpha)
    want = {g.identity_pos, g.mul(p, model.beta)}
    assert set(reflex_subgroup(model.cm, (0,) * n)) == want


@pytest.mark.parametrize("n", [4, 6, 8])
def test_dihedral_shimura(n):
    r = dihedral_shimura_check(n)
    assert r["pass"], r
    assert r["identity"] and not r["subgroups_conjugate"]


def test_dihedral_shimura_rejects_odd():
    with pytest.raises(InputError, match="even"):
        dihedral_shimura_check(5)


@pytest.mark.parametrize("n", sorted(COUNTS))
def test_dihedral_counts(n):
    r = dihedral_counts(n)
    assert r["pass"], r
    got = {
        j: (v["s"], v["s~"], v["t"], v["t~"]) for j, v in r["counts"].items()
    }
    assert got == COUNTS[n]
    # s_j = 2 t_j, s~_j = t~_j, and the s_j tile the power set
    assert all(s == 2 * t and st == tt for s, st, t, tt in got.values())
    assert sum(s for s, _, _, _ in got.values()) == 1 << n


def test_build_iota_times_g0():
    cm = build_iota_times_g0([(2, 3, 1)])
    assert cm.order == 6
    assert all(e.sign in ((0, 0, 0), (1, 1, 1)) for e in cm.group.elements)
    with pytest.raises(InputError):
        # transpositions alone give an intransitive degree-3 action
        build_iota_times_g0([(2, 1, 3)])


def test_build_from_generators_roundtrip():
    text = "degree 2\nsigns=10 perm=1 2\nsigns=00 perm=2 1\n"
    cm = build_from_generators(text)
    assert cm.order == get_cm("b2").order
