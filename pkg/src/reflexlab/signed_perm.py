"""Signed permutations and finite groups of them.

Elements are pairs (sign, perm) with ``sign`` a bit vector of length N and
``perm`` a permutation of {1..N} in one-line notation.  The product is the
semidirect one:

    (f, s) * (f', s') = (f + s.f', s s'),   (s.f')(j) = f'(s^-1 j),

so the sign fiber (Z/2)^N is permuted by positions.  Groups are stored as
canonically ordered element lists (lexicographic by (perm, sign)); subgroups
are sorted tuples of positions into a parent group, never independent groups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, ResourceLimitError

MAX_DEGREE = 20
DEFAULT_MAX_ORDER = 100_000


@dataclass(frozen=True)
class SignedPerm:
    """An element (sign, perm) of (Z/2)^N x| S_N."""

    sign: tuple
    perm: tuple

    def __post_init__(self):
        n = len(self.perm)
        if len(self.sign) != n:
            raise InputError("sign vector and permutation have different lengths")
        if sorted(self.perm) != list(range(1, n + 1)):
            raise InputError("perm is not a permutation of 1..N: %r" % (self.perm,))
        if any(b not in (0, 1) for b in self.sign):
            raise InputError("sign vector entries must be bits")

    @property
    def degree(self):
        return len(self.perm)

    def key(self):
        """Canonical sort key: lexicographic by (perm, sign)."""
        return (self.perm, self.sign)

    def apply(self, i):
        """Image of position i (1-based) under the permutation part."""
        return self.perm[i - 1]

    def __repr__(self):
        bits = "".join(str(b) for b in self.sign)
        return "SignedPerm(%s, %s)" % (bits, list(self.perm))


def identity(n):
    return SignedPerm((0,) * n, tuple(range(1, n + 1)))


def iota(n):
    """The distinguished central element (1...1, id)."""
    return SignedPerm((1,) * n, tuple(range(1, n + 1)))


def compose(a, b):
    """Semidirect product a*b; raises InputError on degree mismatch."""
    if a.degree != b.degree:
        raise InputError("degree mismatch: %d vs %d" % (a.degree, b.degree))
    n = a.degree
    perm = tuple(a.perm[b.perm[i] - 1] for i in range(n))
    ainv = [0] * n
    for i in range(n):
        ainv[a.perm[i] - 1] = i + 1
    sign = tuple(a.sign[j] ^ b.sign[ainv[j] - 1] for j in range(n))
    return SignedPerm(sign, perm)


def inverse(a):
    n = a.degree
    perm = [0] * n
    for i in range(n):
        perm[a.perm[i] - 1] = i + 1
    sign = tuple(a.sign[a.perm[k] - 1] for k in range(n))
    return SignedPerm(sign, tuple(perm))


class Group:
    """A group of signed permutations, closed and canonically ordered.

    Built via :func:`close`.  ``elements`` is sorted by the canonical key,
    ``index`` maps an element back to its position.  Multiplication and
    inversion by position are memoized.  Instances are immutable after
    construction and safe to share between threads.
    """

    def __init__(self, degree, elements, generators):
        self.degree = degree
        self.elements = tuple(sorted(elements, key=SignedPerm.key))
        if len(set(self.elements)) != len(self.elements):
            raise InputError("duplicate elements")
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.generators = tuple(generators)
        self.identity_pos = self.index[identity(degree)]
        self._mul_cache = {}
        self._inv_cache = [None] * len(self.elements)
        self._classes = None

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def mul(self, i, j):
        key = (i, j)
        r = self._mul_cache.get(key)
        if r is None:
            r = self.index[compose(self.elements[i], self.elements[j])]
            self._mul_cache[key] = r
        return r

    def inv(self, i):
        r = self._inv_cache[i]
        if r is None:
            r = self.index[inverse(self.elements[i])]
            self._inv_cache[i] = r
        return r

    def conjugate(self, i, g):
        """Position of g * x_i * g^-1."""
        return self.mul(self.mul(g, i), self.inv(g))

    # -- subgroups ---------------------------------------------------------

    def subgroup(self, positions):
        """Validate and canonicalize a subgroup given as element positions."""
        sub = tuple(sorted(set(positions)))
        if not sub or self.identity_pos not in sub:
            raise InputError("subgroup must contain the identity")
        subset = set(sub)
        for a in sub:
            if self.inv(a) not in subset:
                raise InputError("subset not closed under inversion")
            for b in sub:
                if self.mul(a, b) not in subset:
                    raise InputError("subset not closed under multiplication")
        return sub

    def is_subgroup(self, positions):
        try:
            self.subgroup(positions)
            return True
        except InputError:
            return False

    def select(self, predicate):
        """Sorted positions of all elements satisfying ``predicate(element)``."""
        return tuple(i for i, g in enumerate(self.elements) if predicate(g))

    # -- cosets ------------------------------------------------------------

    def left_cosets(self, sub):
        sub = self.subgroup(sub)
        return self._cosets(sub, lambda g: sorted(self.mul(g, s) for s in sub))

    def right_cosets(self, sub):
        sub = self.subgroup(sub)
        return self._cosets(sub, lambda g: sorted(self.mul(s, g) for s in sub))

    def double_cosets(self, a_sub, b_sub):
        a_sub = self.subgroup(a_sub)
        b_sub = self.subgroup(b_sub)
        return self._cosets(
            a_sub,
            lambda g: sorted({self.mul(self.mul(x, g), y) for x in a_sub for y in b_sub}),
            subgroup_b=b_sub,
        )

    def _cosets(self, sub, orbit_of, subgroup_b=None):
        membership = [-1] * len(self.elements)
        reps = []
        for g in range(len(self.elements)):
            if membership[g] >= 0:
                continue
            cid = len(reps)
            reps.append(g)
            for x in orbit_of(g):
                membership[x] = cid
        return CosetDecomposition(
            subgroup=sub,
            reps=tuple(reps),
            membership=tuple(membership),
            subgroup_b=subgroup_b,
        )

    # -- conjugacy classes -------------------------------------------------

    def conjugacy_classes(self):
        """Partition of positions into conjugacy classes (orbit BFS by generators)."""
        if self._classes is not None:
            return self._classes
        gens = [self.index[g] for g in self.generators]
        if not gens:
            gens = list(range(len(self.elements)))
        seen = [False] * len(self.elements)
        classes = []
        for g in range(len(self.elements)):
            if seen[g]:
                continue
            orbit = [g]
            seen[g] = True
            frontier = [g]
            while frontier:
                x = frontier.pop()
                for t in gens:
                    y = self.conjugate(x, t)
                    if not seen[y]:
                        seen[y] = True
                        orbit.append(y)
                        frontier.append(y)
            classes.append(tuple(sorted(orbit)))
        self._classes = tuple(classes)
        return self._classes


@dataclass(frozen=True)
class CosetDecomposition:
    """A coset (or double-coset) partition of a group.

    ``reps`` holds the canonically least element position of each coset;
    ``membership[pos]`` is the coset id of each group element.
    """

    subgroup: tuple
    reps: tuple
    membership: tuple
    subgroup_b: tuple = None

    @property
    def count(self):
        return len(self.reps)

    def coset_elements(self, cid):
        return tuple(i for i, c in enumerate(self.membership) if c == cid)


def close(generators, degree=None, max_order=DEFAULT_MAX_ORDER):
    """Breadth-first closure of a generator list into a :class:`Group`.

    An empty generator list with an explicit ``degree`` yields the trivial
    group.  Raises ResourceLimitError when the closure exceeds ``max_order``
    or the degree exceeds MAX_DEGREE.
    """
    if not generators:
        if degree is None:
            raise InputError("close([]) needs an explicit degree")
        return Group(degree, [identity(degree)], [])
    degrees = {g.degree for g in generators}
    if len(degrees) != 1:
        raise InputError("generators have mixed degrees: %s" % sorted(degrees))
    n = degrees.pop()
    if degree is not None and degree != n:
        raise InputError("declared degree %d does not match generators (%d)" % (degree, n))
    if n > MAX_DEGREE:
        raise ResourceLimitError("degree %d exceeds the cap %d" % (n, MAX_DEGREE))
    seen = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > max_order:
                        raise ResourceLimitError(
                            "closure exceeds the size cap %d" % max_order
                        )
        frontier = nxt
    return Group(n, seen, generators)


def full_hyperoctahedral(n, max_order=DEFAULT_MAX_ORDER):
    """The full group (Z/2)^N x| S_N of order 2^N * N!."""
    if n < 1:
        raise InputError("degree must be positive")
    gens = [SignedPerm((1,) + (0,) * (n - 1), tuple(range(1, n + 1)))]
    if n > 1:
        swap = (2, 1) + tuple(range(3, n + 1))
        cyc = tuple(range(2, n + 1)) + (1,)
        gens.append(SignedPerm((0,) * n, swap))
        gens.append(SignedPerm((0,) * n, cyc))
    return close(gens, max_order=max_order)


# -- generator file format ------------------------------------------------
#
#   degree N
#   signs=<N bits> perm=<N space-separated images of 1..N>
#
# Blank lines and lines starting with '#' are ignored.

def parse_generator_file(text):
    """Parse the documented generator file format; errors cite line numbers."""
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit():
                raise InputError("line %d: expected 'degree N'" % lineno)
            degree = int(parts[1])
            if degree < 1:
                raise InputError("line %d: degree must be positive" % lineno)
            continue
        fields = line.split()
        if (
            len(fields) < 2
            or not fields[0].startswith("signs=")
            or not fields[1].startswith("perm=")
        ):
            raise InputError(
                "line %d: expected 'signs=<bits> perm=<images>'" % lineno
            )
        bits = fields[0][len("signs="):]
        if len(bits) != degree or any(c not in "01" for c in bits):
            raise InputError("line %d: signs must be %d bits" % (lineno, degree))
        images = [fields[1][len("perm="):]] + fields[2:]
        try:
            perm = tuple(int(tok) for tok in images)
        except ValueError:
            raise InputError("line %d: perm images must be integers" % lineno)
        if sorted(perm) != list(range(1, degree + 1)):
            raise InputError("line %d: perm is not a permutation of 1..%d" % (lineno, degree))
        try:
            gens.append(SignedPerm(tuple(int(c) for c in bits), perm))
        except InputError as exc:
            raise InputError("line %d: %s" % (lineno, exc))
    if degree is None:
        raise InputError("empty generator file: missing 'degree N' line")
    return degree, gens
