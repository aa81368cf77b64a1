"""CM-type combinatorics on a validated signed-permutation group.

The group G sits inside (Z/2)^N x| S_N and the position i stands for the
coset phi_i H0, so the base CM-type is the zero bit vector and the sign part
of an element is literally the base cocycle r_{Phi_0}.  Everything else (the
star action, reflex subgroups, the subset subgroups H(I) and H_0(I)) is
derived from those coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InputError, ResourceLimitError
from .signed_perm import Group, SignedPerm, identity, inverse, iota

ORBIT_DEGREE_CAP = 20


@dataclass(frozen=True)
class CMType:
    """A CM-type Phi_f, encoded by its bit vector f."""

    bits: tuple

    def __post_init__(self):
        if not self.bits or any(b not in (0, 1) for b in self.bits):
            raise InputError("CM-type must be a nonempty bit vector")

    @property
    def degree(self):
        return len(self.bits)

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    @classmethod
    def from_subset(cls, n, subset):
        """Indicator vector f_I of a subset I of {1..N}."""
        s = set(subset)
        if not s.issubset(range(1, n + 1)):
            raise InputError("subset must lie in 1..%d" % n)
        return cls(tuple(1 if i in s else 0 for i in range(1, n + 1)))

    def conjugate(self):
        """The conjugate type iota*Phi_f = Phi_{f + 1}."""
        return CMType(tuple(b ^ 1 for b in self.bits))

    def __str__(self):
        return "".join(str(b) for b in self.bits)


class CMGroup:
    """A group G validated to model Gal(K^c/Q) for a CM-field K.

    Carries the distinguished subgroup positions:

    h0        stabilizer of position 1 under the projection (fixes K_0),
    h         index-2 part of h0 with vanishing base cocycle at 1 (fixes K),
    c_kernel  elements with trivial permutation part (Gal(K^c/K_0^c)).
    """

    def __init__(self, group, iota_pos, h0, h, c_kernel):
        self.group = group
        self.iota_pos = iota_pos
        self.h0 = h0
        self.h = h
        self.c_kernel = c_kernel

    @property
    def degree(self):
        return self.group.degree

    @property
    def order(self):
        return self.group.order

    # Position-level helpers used heavily by the algebra modules.

    def element(self, pos):
        return self.group.elements[pos]

    def r0(self, pos):
        """Base cocycle r_{Phi_0} = the sign coordinate."""
        return self.group.elements[pos].sign

    def perm(self, pos):
        return self.group.elements[pos].perm


def validate_cm_group(g):
    """Check the CM axioms on a closed group and package it as a CMGroup.

    Raises InputError when iota is missing or not central, when the
    projection is not transitive, or when the kernel of the projection fails
    to match the intersection of the conjugates of H_0.
    """
    if not isinstance(g, Group):
        raise InputError("expected a Group built by close()")
    n = g.degree
    iot = iota(n)
    if iot not in g.index:
        raise InputError("group does not contain (1...1, id)")
    iota_pos = g.index[iot]
    for x in range(g.order):
        if g.mul(iota_pos, x) != g.mul(x, iota_pos):
            raise InputError("(1...1, id) is not central")

    # Transitivity of the projection on {1..N}.
    reached = {1}
    frontier = [1]
    images = [e.perm for e in g.elements]
    while frontier:
        i = frontier.pop()
        for p in images:
            j = p[i - 1]
            if j not in reached:
                reached.add(j)
                frontier.append(j)
    if len(reached) != n:
        raise InputError("projection is not transitive: K_0 would not be a field")

    h0 = g.select(lambda e: e.perm[0] == 1)
    h = g.select(lambda e: e.perm[0] == 1 and e.sign[0] == 0)
    c_kernel = g.select(lambda e: e.perm == iot.perm)

    h0 = g.subgroup(h0)
    h = g.subgroup(h)
    c_kernel = g.subgroup(c_kernel)
    if 2 * len(h) != len(h0):
        raise InputError("H does not have index 2 in H_0")
    h_set = set(h)
    if set(h0) != h_set | {g.mul(iota_pos, t) for t in h}:
        raise InputError("H_0 is not H together with iota*H")

    # The projection kernel must be the intersection of the conjugates of H_0.
    core = set(h0)
    for x in range(g.order):
        core &= {g.conjugate(t, x) for t in h0}
    if core != set(c_kernel):
        raise InputError("kernel of projection differs from the core of H_0")

    return CMGroup(g, iota_pos, h0, h, c_kernel)


# -- cocycle and star action ----------------------------------------------

def _perm_inverse(perm):
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j - 1] = i + 1
    return inv


def translate_bits(tau, f):
    """The permutation action (tau . f)(j) = f(sigma^-1 j)."""
    inv = _perm_inverse(tau.perm)
    return tuple(f[inv[j] - 1] for j in range(len(f)))


def cocycle(cm, f, tau):
    """r_{Phi_f}(tau) = r_{Phi_0}(tau) + tau.f + f as a bit vector."""
    if isinstance(f, CMType):
        f = f.bits
    if len(f) != tau.degree:
        raise InputError("CM-type degree does not match the element")
    shifted = translate_bits(tau, f)
    return tuple(tau.sign[j] ^ shifted[j] ^ f[j] for j in range(tau.degree))


def star(cm, tau, f):
    """The star action tau * f = r_{Phi_0}(tau) + tau . f."""
    bits = f.bits if isinstance(f, CMType) else f
    shifted = translate_bits(tau, bits)
    out = tuple(tau.sign[j] ^ shifted[j] for j in range(tau.degree))
    return CMType(out) if isinstance(f, CMType) else out


# -- orbits and reflex subgroups ------------------------------------------

@dataclass(frozen=True)
class OrbitReport:
    """One star-action orbit: a reflex field (K*(Phi), dual data pending)."""

    representative: CMType
    stabilizer: tuple
    orbit_size: int
    members: tuple

    def __post_init__(self):
        if self.orbit_size != len(self.members):
            raise InputError("orbit size does not match member count")


def reflex_subgroup(cm, f):
    """H*(Phi_f) as positions: the elements with vanishing cocycle r_{Phi_f}.

    Cross-checked against the star-action stabilizer of f, and against the
    structural facts iota not in H*(Phi) and C intersect H*(Phi) = {id}.
    """
    bits = f.bits if isinstance(f, CMType) else tuple(f)
    g = cm.group
    zero = (0,) * g.degree
    sub = g.select(lambda e: cocycle(cm, bits, e) == zero)
    stab = g.select(lambda e: star(cm, e, bits) == bits)
    if sub != stab:
        raise InputError("cocycle kernel differs from the star stabilizer")
    if cm.iota_pos in sub:
        raise InputError("iota lies in a reflex subgroup")
    if set(sub) & set(cm.c_kernel) != {g.identity_pos}:
        raise InputError("C meets a reflex subgroup nontrivially")
    return g.subgroup(sub)


def cm_orbits(cm):
    """All star-action orbits on the 2^N CM-types, canonically ordered.

    Representatives are the numerically least bit vectors; the union of the
    members is the whole type space and orbit sizes obey orbit-stabilizer.
    """
    n = cm.degree
    if n > ORBIT_DEGREE_CAP:
        raise ResourceLimitError("degree %d exceeds the orbit cap %d" % (n, ORBIT_DEGREE_CAP))
    gens = cm.group.generators or cm.group.elements
    seen = set()
    reports = []
    for bits in itertools.product((0, 1), repeat=n):
        if bits in seen:
            continue
        orbit = {bits}
        frontier = [bits]
        while frontier:
            x = frontier.pop()
            for tau in gens:
                y = star(cm, tau, x)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        stab = reflex_subgroup(cm, bits)
        if len(orbit) * len(stab) != cm.order:
            raise InputError("orbit-stabilizer mismatch for f=%s" % (bits,))
        reports.append(
            OrbitReport(
                representative=CMType(bits),
                stabilizer=stab,
                orbit_size=len(orbit),
                members=tuple(CMType(b) for b in sorted(orbit)),
            )
        )
    return reports


# -- S_Phi and the dual type ----------------------------------------------

def s_phi(cm, f):
    """S_Phi as positions: sigma with r_{Phi_f}(sigma^-1)(1) = 0.

    These are exactly the elements restricting to an embedding in Phi on K.
    """
    bits = f.bits if isinstance(f, CMType) else tuple(f)
    return cm.group.select(lambda e: cocycle(cm, bits, inverse(e))[0] == 0)


def dual_type(cm, f):
    """Right-coset reps of H*(Phi_f) inside S_Phi (the dual CM-type Phi*).

    Returns (reps, s_phi_positions); reps are the canonically least element
    of each coset H*(Phi)psi, so M = len(reps) = |S_Phi| / |H*(Phi)|.
    """
    g = cm.group
    hstar = reflex_subgroup(cm, f)
    s = s_phi(cm, f)
    s_set = set(s)
    assigned = set()
    reps = []
    for x in s:
        if x in assigned:
            continue
        reps.append(x)
        coset = {g.mul(t, x) for t in hstar}
        if not coset <= s_set:
            raise InputError("S_Phi is not a union of right H*(Phi)-cosets")
        assigned |= coset
    if len(reps) * len(hstar) != len(s):
        raise InputError("coset count mismatch inside S_Phi")
    return tuple(reps), s


# -- subset subgroups H(I), H_0(I), S_{Phi(I)} ----------------------------

@dataclass(frozen=True)
class SubsetData:
    """The subgroup data attached to a subset I of {1..N}."""

    subset: tuple
    h_I: tuple
    h0_I: tuple
    s_phi_I: tuple
    phi_I: tuple
    phi_I_star: tuple


def subset_subgroups(cm, I, f=None):
    """Compute H(I), H_0(I), S_{Phi(I)} and both coset-rep systems.

    The cocycle defaults to the base type Phi_0; the subgroups themselves do
    not depend on that choice (tested elsewhere), while S_{Phi(I)} and the
    rep systems do.
    """
    g = cm.group
    n = cm.degree
    I = tuple(sorted(set(I)))
    if any(i < 1 or i > n for i in I):
        raise InputError("subset must lie in 1..%d" % n)
    bits = (f.bits if isinstance(f, CMType) else tuple(f)) if f is not None else (0,) * n
    iset = set(I)

    def preserves(e):
        return {e.perm[i - 1] for i in I} == iset

    def parity(vec):
        return sum(vec[i - 1] for i in I) % 2

    h0_I = g.subgroup(g.select(preserves))
    h_I = g.subgroup(g.select(lambda e: preserves(e) and parity(cocycle(cm, bits, e)) == 0))
    s_phi_I = g.select(lambda e: parity(cocycle(cm, bits, inverse(e))) == 0)

    if not set(h_I) <= set(h0_I):
        raise InputError("H(I) escapes H_0(I)")
    if len(I) % 2 == 1:
        if cm.iota_pos in h_I:
            raise InputError("iota in H(I) for odd |I|")
        if set(h0_I) != set(h_I) | {g.mul(cm.iota_pos, t) for t in h_I}:
            raise InputError("H_0(I) is not H(I) union iota H(I) for odd |I|")

    hstar = reflex_subgroup(cm, bits)
    s_set = set(s_phi_I)
    if {g.mul(t, x) for t in hstar for x in s_phi_I} != s_set:
        raise InputError("H*(Phi) S_{Phi(I)} differs from S_{Phi(I)}")
    if {g.mul(x, t) for x in s_phi_I for t in h_I} != s_set:
        raise InputError("S_{Phi(I)} H(I) differs from S_{Phi(I)}")

    phi_I = _coset_reps(g, s_phi_I, h_I, side="left")
    phi_I_star = _coset_reps(g, s_phi_I, hstar, side="right")
    return SubsetData(
        subset=I,
        h_I=h_I,
        h0_I=h0_I,
        s_phi_I=s_phi_I,
        phi_I=phi_I,
        phi_I_star=phi_I_star,
    )


def _coset_reps(g, universe, sub, side):
    """Canonical reps partitioning ``universe`` into sub-cosets (one side)."""
    assigned = set()
    reps = []
    uni = set(universe)
    for x in universe:
        if x in assigned:
            continue
        reps.append(x)
        if side == "left":
            coset = {g.mul(x, t) for t in sub}
        else:
            coset = {g.mul(t, x) for t in sub}
        if not coset <= uni:
            raise InputError("coset escapes the ambient element set")
        assigned |= coset
    return tuple(reps)


def jodd_representatives(cm):
    """Orbit reps of the projection action on odd subsets of {1..N}.

    The rep of each orbit is the lexicographically least sorted subset, and
    sum over reps of [G : H_0(I)] equals 2^{N-1} (the count of odd subsets).
    """
    n = cm.degree
    perms = sorted({e.perm for e in cm.group.elements})
    seen = set()
    reps = []
    total_index = 0
    for size in range(1, n + 1, 2):
        for I in itertools.combinations(range(1, n + 1), size):
            if I in seen:
                continue
            orbit = {I}
            frontier = [I]
            while frontier:
                J = frontier.pop()
                for p in perms:
                    Jp = tuple(sorted(p[i - 1] for i in J))
                    if Jp not in orbit:
                        orbit.add(Jp)
                        frontier.append(Jp)
            seen |= orbit
            reps.append(I)
            data_index = cm.order // len(subset_subgroups(cm, I).h0_I)
            if data_index != len(orbit):
                raise InputError("[G : H_0(I)] does not match the orbit size of I")
            total_index += data_index
    if total_index != 2 ** (n - 1):
        raise InputError("odd-subset orbit indices do not sum to 2^(N-1)")
    return reps
