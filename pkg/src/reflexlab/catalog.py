"""Built-in example groups and the dihedral family.

Every builder returns a validated CMGroup.  The dihedral model follows the
worked example: G = D_{2n} with alpha of order 2n, alpha^n = iota, and the
embedding determined by the base type Phi_0 = {id, alpha, ..., alpha^{n-1}};
the generator images and the subset counting sets S_j, T_j are cross-checked
against their closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cm_structure import validate_cm_group, reflex_subgroup
from .errors import InputError
from .signed_perm import (
    SignedPerm,
    close,
    full_hyperoctahedral,
    iota,
    parse_generator_file,
)


def build_hyperoctahedral(n, max_order=100_000):
    """The full group (Z/2)^N x| S_N as a CM-group."""
    return validate_cm_group(full_hyperoctahedral(n, max_order=max_order))


def build_iota_times_g0(perm_gens, max_order=100_000):
    """G = <iota> x G_0 for a transitive permutation group G_0 (split case)."""
    if not perm_gens:
        raise InputError("need at least one permutation generator")
    n = len(perm_gens[0])
    gens = [SignedPerm((0,) * n, tuple(p)) for p in perm_gens]
    gens.append(iota(n))
    g = close(gens, max_order=max_order)
    g0 = {e.perm for e in g.elements}
    if g.order != 2 * len(g0):
        raise InputError("closure is not <iota> x G_0")
    zero = (0,) * n
    one = (1,) * n
    if any(e.sign not in (zero, one) for e in g.elements):
        raise InputError("sign parts escape {0, 1}")
    return validate_cm_group(g)


def build_from_generators(text, max_order=100_000):
    """Build and validate a CM-group from the generator file format."""
    degree, gens = parse_generator_file(text)
    g = close(gens, degree=degree, max_order=max_order)
    return validate_cm_group(g)


# -- the dihedral family ---------------------------------------------------

@dataclass(frozen=True)
class DihedralModel:
    """The dihedral CM-group with its distinguished generator positions."""

    n: int
    cm: object
    alpha: int
    beta: int


def _alpha_image(n):
    sign = (1,) + (0,) * (n - 1)
    perm = tuple(j % n + 1 for j in range(1, n + 1))
    return SignedPerm(sign, perm)


def _beta_image(n):
    sign = (0,) + (1,) * (n - 1)
    perm = tuple(((1 - j) % n) + 1 for j in range(1, n + 1))
    return SignedPerm(sign, perm)


def build_dihedral(n, max_order=100_000):
    """The dihedral group D_{2n} as a CM-group of degree N = n.

    Verifies the defining relations, the closed-form generator images, and
    that the reflex subgroup of the base type is {id, alpha^{n-1} beta}.
    """
    if n < 2:
        raise InputError("dihedral model needs n >= 2")
    a = _alpha_image(n)
    b = _beta_image(n)
    g = close([a, b], max_order=max_order)
    if g.order != 4 * n:
        raise InputError("dihedral closure has order %d, expected %d" % (g.order, 4 * n))
    cm = validate_cm_group(g)
    apos = g.index[a]
    bpos = g.index[b]

    # Relations alpha^{2n} = id, alpha^n = iota, beta^2 = id, and
    # beta alpha beta^-1 = alpha^-1.
    p = g.identity_pos
    powers = [p]
    for _ in range(2 * n):
        p = g.mul(p, apos)
        powers.append(p)
    if powers[2 * n] != g.identity_pos or powers[n] != cm.iota_pos:
        raise InputError("alpha does not have order 2n with alpha^n = iota")
    if g.mul(bpos, bpos) != g.identity_pos:
        raise InputError("beta^2 is not the identity")
    if g.mul(g.mul(bpos, apos), g.inv(bpos)) != g.inv(apos):
        raise InputError("beta alpha beta^-1 is not alpha^-1")

    # Closed-form images of alpha^i and alpha^i beta for 0 <= i < n.
    for i in range(n):
        e = g.elements[powers[i]]
        want_sign = (1,) * i + (0,) * (n - i)
        want_perm = tuple(((j - 1 + i) % n) + 1 for j in range(1, n + 1))
        if e.sign != want_sign or e.perm != want_perm:
            raise InputError("alpha^%d image differs from the closed form" % i)
        eb = g.elements[g.mul(powers[i], bpos)]
        want_sign = (0,) * (i + 1) + (1,) * (n - i - 1)
        want_perm = tuple(((i + 1 - j) % n) + 1 for j in range(1, n + 1))
        if eb.sign != want_sign or eb.perm != want_perm:
            raise InputError("alpha^%d beta image differs from the closed form" % i)

    hstar = reflex_subgroup(cm, (0,) * n)
    want = {g.identity_pos, g.mul(powers[n - 1], bpos)}
    if set(hstar) != want:
        raise InputError("H*(Phi_0) is not {id, alpha^(n-1) beta}")
    return DihedralModel(n=n, cm=cm, alpha=apos, beta=bpos)


def dihedral_shimura_check(n, max_order=100_000):
    """Shimura's identity Ind(chi_{H0/H}) = Ind(chi_{H*0/H*}) for even n,
    together with the non-conjugacy of H and H*(Phi_0)."""
    from .characters import induce, sign_character

    if n % 2:
        raise InputError("the Shimura identity check needs even n")
    model = build_dihedral(n, max_order=max_order)
    cm = model.cm
    g = cm.group
    hstar = reflex_subgroup(cm, (0,) * n)
    hstar0 = g.subgroup(set(hstar) | {g.mul(cm.iota_pos, t) for t in hstar})

    lhs = induce(g, cm.h0, sign_character(g, cm.h0, cm.h))
    rhs = induce(g, hstar0, sign_character(g, hstar0, hstar))

    h_set = set(cm.h)
    conjugate = any(
        {g.conjugate(t, x) for t in h_set} == set(hstar) for x in range(g.order)
    )
    return {
        "check": "dihedral_shimura",
        "n": n,
        "pass": lhs == rhs and not conjugate,
        "identity": lhs == rhs,
        "subgroups_conjugate": conjugate,
    }


def _shift(mask, a, n):
    """Image of a subset mask under alpha^a (position j -> j + a mod n)."""
    a %= n
    return ((mask << a) | (mask >> (n - a))) & ((1 << n) - 1) if a else mask


def _apply_perm_mask(mask, perm, n):
    out = 0
    for j in range(1, n + 1):
        if mask >> (j - 1) & 1:
            out |= 1 << (perm[j - 1] - 1)
    return out


def dihedral_counts(n):
    """The counting sets S_j, S~_j, T_j, T~_j of the dihedral example.

    Computed from the alpha/beta actions, cross-checked against the restated
    closed forms, with the assertions sum s_j = 2^n, s_j = 2 t_j and
    s~_j = t~_j.
    """
    if n < 2 or n % 2:
        raise InputError("the counting sets are defined for even n >= 2")
    k0 = (n & -n).bit_length() - 1
    q = n >> k0
    divisors = [j for j in range(1, q + 1) if q % j == 0]

    refl_nm1 = tuple(n - j + 1 for j in range(1, n + 1))  # alpha^{n-1} beta
    refl_beta = tuple(((1 - j) % n) + 1 for j in range(1, n + 1))  # beta

    sets = {j: {"S": [], "S~": [], "T": [], "T~": []} for j in divisors}
    for mask in range(1 << n):
        # Literal membership: alpha^{2^k0 j} fixes I while no proper divisor
        # j0 of j does.  Exactly one j qualifies for every subset.
        hits = [
            j
            for j in divisors
            if _shift(mask, (1 << k0) * j, n) == mask
            and all(
                _shift(mask, (1 << k0) * j0, n) != mask
                for j0 in divisors
                if j0 != j and j % j0 == 0
            )
        ]
        if len(hits) != 1:
            raise InputError("subset belongs to %d counting sets" % len(hits))
        bucket = sets[hits[0]]
        bucket["S"].append(mask)
        if _apply_perm_mask(mask, refl_nm1, n) == mask:
            bucket["S~"].append(mask)
        if bin(mask).count("1") % 2:
            bucket["T"].append(mask)
            if _apply_perm_mask(mask, refl_beta, n) == mask:
                bucket["T~"].append(mask)

    counts = {}
    ok = True
    total = 0
    for j in divisors:
        s = len(sets[j]["S"])
        st = len(sets[j]["S~"])
        t = len(sets[j]["T"])
        tt = len(sets[j]["T~"])
        total += s
        if s != 2 * t or st != tt:
            ok = False
        counts[j] = {"s": s, "s~": st, "t": t, "t~": tt}
    if total != 1 << n:
        ok = False

    restated_ok = _counts_restated_match(n, k0, divisors, sets)
    return {
        "check": "dihedral_counts",
        "n": n,
        "pass": ok and restated_ok,
        "relations": ok,
        "restated": restated_ok,
        "counts": counts,
    }


def _counts_restated_match(n, k0, divisors, sets):
    """The closed-form restatements of S_j, S~_j, T_j, T~_j, as set equality."""
    for j in divisors:
        period = (1 << k0) * j
        s_restated = []
        for mask in range(1 << n):
            periods = [
                jj for jj in divisors if _shift(mask, (1 << k0) * jj, n) == mask
            ]
            if min(periods) == j:
                s_restated.append(mask)
        if s_restated != sets[j]["S"]:
            return False
        st_restated = [
            m
            for m in s_restated
            if all((m >> (i - 1) & 1) == (m >> (n - i) & 1) for i in range(1, n + 1))
        ]
        if st_restated != sets[j]["S~"]:
            return False
        t_restated = [
            m
            for m in s_restated
            if bin(m & ((1 << period) - 1)).count("1") % 2
        ]
        if t_restated != sets[j]["T"]:
            return False
        tt_restated = []
        for m in s_restated:
            cond1 = (m >> 0 & 1) != (m >> (n // 2) & 1)
            cond2 = all(
                (m >> (i - 1) & 1) == (m >> (n - i + 1) & 1)
                for i in range(2, n // 2 + 1)
            )
            if cond1 and cond2:
                tt_restated.append(m)
        if tt_restated != sets[j]["T~"]:
            return False
    return True


# -- the catalog -----------------------------------------------------------

def _c3():
    return build_iota_times_g0([(2, 3, 1)])


def _s3():
    return build_iota_times_g0([(2, 3, 1), (2, 1, 3)])


CATALOG = {
    "n1": lambda: build_hyperoctahedral(1),
    "b2": lambda: build_hyperoctahedral(2),
    "b3": lambda: build_hyperoctahedral(3),
    "b4": lambda: build_hyperoctahedral(4),
    "iota_c3": _c3,
    "iota_s3": _s3,
    "dihedral4": lambda: build_dihedral(4).cm,
    "dihedral6": lambda: build_dihedral(6).cm,
    "dihedral8": lambda: build_dihedral(8).cm,
}


def catalog_group(name):
    try:
        builder = CATALOG[name]
    except KeyError:
        raise InputError(
            "unknown catalog group %r (choose from %s)"
            % (name, ", ".join(sorted(CATALOG)))
        )
    return builder()
