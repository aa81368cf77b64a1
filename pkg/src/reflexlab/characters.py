"""Exact character theory: induction, inner products, the character identity.

Characters are class functions with Fraction values.  Induction uses the
class-intersection formula

    Ind_S^G chi (c) = |G| / (|S| |c|) * sum over s in (S meet c) of chi(s),

which only needs the conjugacy classes of G and the values of chi on S.
The decomposition lemma lives in the ambient group (Z/2)^N x| G_0, built by
closure, and a restriction map bridges it back to G.
"""

from __future__ import annotations

from fractions import Fraction

from .cm_structure import jodd_representatives
from .errors import InputError
from .signed_perm import DEFAULT_MAX_ORDER, SignedPerm, close


class ClassFunction:
    """An exact class function on a Group, stored by conjugacy class."""

    __slots__ = ("group", "values")

    def __init__(self, group, values):
        classes = group.conjugacy_classes()
        if len(values) != len(classes):
            raise InputError("one value per conjugacy class expected")
        self.group = group
        self.values = tuple(Fraction(v) for v in values)

    @property
    def degree(self):
        cid = _class_map(self.group)[self.group.identity_pos]
        return self.values[cid]

    def value_at(self, pos):
        return self.values[_class_map(self.group)[pos]]

    def __add__(self, other):
        if other.group is not self.group:
            raise InputError("class functions live on different groups")
        return ClassFunction(
            self.group, [a + b for a, b in zip(self.values, other.values)]
        )

    def __sub__(self, other):
        if other.group is not self.group:
            raise InputError("class functions live on different groups")
        return ClassFunction(
            self.group, [a - b for a, b in zip(self.values, other.values)]
        )

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and self.group is other.group
            and self.values == other.values
        )

    def __hash__(self):
        return hash(self.values)


_CLASS_MAPS = {}


def _class_map(group):
    """pos -> conjugacy class id, cached per group instance."""
    key = id(group)
    cached = _CLASS_MAPS.get(key)
    if cached is None or cached[0] is not group:
        classes = group.conjugacy_classes()
        cmap = [0] * group.order
        for cid, cls in enumerate(classes):
            for pos in cls:
                cmap[pos] = cid
        cached = (group, cmap)
        _CLASS_MAPS[key] = cached
    return cached[1]


def sign_character(group, sub, kernel):
    """The index-two character of ``sub`` with the given kernel, as pos -> +-1."""
    sub = group.subgroup(sub)
    kernel = group.subgroup(kernel)
    if not set(kernel) <= set(sub) or 2 * len(kernel) != len(sub):
        raise InputError("kernel is not an index-two subgroup")
    return {pos: 1 if pos in set(kernel) else -1 for pos in sub}


def induce(group, sub, values):
    """Induce a subgroup character (pos -> value on ``sub``) up to ``group``."""
    sub = group.subgroup(sub)
    if set(values) != set(sub):
        raise InputError("character values must cover the subgroup exactly")
    classes = group.conjugacy_classes()
    cmap = _class_map(group)
    sums = [Fraction(0)] * len(classes)
    for pos in sub:
        sums[cmap[pos]] += values[pos]
    out = []
    for cid, cls in enumerate(classes):
        out.append(Fraction(group.order, len(sub) * len(cls)) * sums[cid])
    return ClassFunction(group, out)


def inner_product(a, b):
    """<a, b> = |G|^-1 sum over g of a(g) b(g^-1), via classes."""
    if a.group is not b.group:
        raise InputError("class functions live on different groups")
    g = a.group
    classes = g.conjugacy_classes()
    cmap = _class_map(g)
    total = Fraction(0)
    for cid, cls in enumerate(classes):
        inv_cid = cmap[g.inv(cls[0])]
        total += len(cls) * a.values[cid] * b.values[inv_cid]
    return total / g.order


def character_identity_sides(cm, ctx=None):
    """The two sides of the character identity as ClassFunctions on G."""
    from .group_algebra import Context

    ctx = ctx or Context(cm)
    g = cm.group
    lhs = None
    for f in ctx.lambda_bits:
        hs = ctx.hstar(f)
        hs0 = ctx.hstar0(f)
        term = induce(g, hs0, sign_character(g, hs0, hs))
        lhs = term if lhs is None else lhs + term
    rhs = None
    for I in ctx.jodd:
        data = ctx.subset(I)
        term = induce(g, data.h0_I, sign_character(g, data.h0_I, data.h_I))
        rhs = term if rhs is None else rhs + term
    return lhs, rhs


def verify_character_identity(cm, ctx=None):
    """sum over Lambda of Ind(chi_{H*0/H*}) equals the J-side sum, exactly."""
    lhs, rhs = character_identity_sides(cm, ctx)
    expected_degree = Fraction(2) ** (cm.degree - 1)
    degrees_ok = lhs.degree == expected_degree and rhs.degree == expected_degree
    equal = degrees_ok and lhs == rhs
    return {
        "check": "character_identity",
        "degree": int(expected_degree),
        "degrees_ok": degrees_ok,
        "pass": equal,
        "lhs": [str(v) for v in lhs.values],
        "rhs": [str(v) for v in rhs.values],
    }


# -- the ambient group and the decomposition lemma -------------------------

def build_ambient(cm, max_order=DEFAULT_MAX_ORDER):
    """Close (Z/2)^N x| G_0 with G_0 the permutation image of G."""
    n = cm.degree
    idp = tuple(range(1, n + 1))
    gens = [SignedPerm((0,) * n, e.perm) for e in cm.group.generators]
    if not gens:
        gens = [SignedPerm((0,) * n, e.perm) for e in cm.group.elements]
    gens.append(SignedPerm((1,) + (0,) * (n - 1), idp))
    amb = close(gens, max_order=max_order)
    g0_size = len({e.perm for e in cm.group.elements})
    if amb.order != (1 << n) * g0_size:
        raise InputError("ambient closure has unexpected order %d" % amb.order)
    return amb


def decomposition_sides(cm, amb):
    """LHS and the chi_{I, id} summands of the decomposition lemma on ambient."""
    n = cm.degree
    zero = (0,) * n
    one = (1,) * n
    base = amb.select(lambda e: e.sign in (zero, one))
    base_char = {pos: 1 if amb.elements[pos].sign == zero else -1 for pos in base}
    lhs = induce(amb, base, base_char)

    summands = []
    for I in jodd_representatives(cm):
        iset = set(I)
        sub = amb.select(lambda e: {e.perm[i - 1] for i in I} == iset)
        values = {}
        for pos in sub:
            par = sum(amb.elements[pos].sign[i - 1] for i in I) % 2
            values[pos] = -1 if par else 1
        summands.append((I, induce(amb, sub, values)))
    return lhs, summands


def verify_decomposition_lemma(cm, max_order=DEFAULT_MAX_ORDER):
    """Ind from <1> x G_0 of the sign character equals sum of chi_{I, id}.

    Also checks each chi_{I, id} is irreducible (norm one) and that the
    summands are pairwise orthogonal.
    """
    amb = build_ambient(cm, max_order=max_order)
    lhs, summands = decomposition_sides(cm, amb)
    norms_ok = all(inner_product(c, c) == 1 for _, c in summands)
    ortho_ok = all(
        inner_product(summands[i][1], summands[j][1]) == 0
        for i in range(len(summands))
        for j in range(i + 1, len(summands))
    )
    total = None
    for _, c in summands:
        total = c if total is None else total + c
    equal = total is not None and lhs == total
    return {
        "check": "decomposition_lemma",
        "ambient_order": amb.order,
        "pass": norms_ok and ortho_ok and equal,
        "norms_ok": norms_ok,
        "orthogonal": ortho_ok,
        "sum_equals_lhs": equal,
    }


def restrict(chi, target):
    """Restrict an ambient ClassFunction to a group whose elements embed.

    ``target`` must consist of signed permutations that literally belong to
    the ambient group; values are read off through the embedding.
    """
    amb = chi.group
    out = []
    for cls in target.conjugacy_classes():
        e = target.elements[cls[0]]
        pos = amb.index.get(e)
        if pos is None:
            raise InputError("element %r does not embed into the ambient group" % (e,))
        out.append(chi.value_at(pos))
    return ClassFunction(target, out)


def verify_restriction_bridge(cm, max_order=DEFAULT_MAX_ORDER, ctx=None):
    """The ambient decomposition restricts to the character identity on G.

    Checks Res_G(chi_{I, id}) = Ind_{H_0(I)}^G(chi_I tilde) summand by
    summand, and that restricting the ambient LHS gives the Lambda-side sum.
    """
    from .group_algebra import Context

    ctx = ctx or Context(cm)
    g = cm.group
    amb = build_ambient(cm, max_order=max_order)
    lhs_amb, summands = decomposition_sides(cm, amb)

    per_I_ok = True
    for I, chi in summands:
        data = ctx.subset(I)
        want = induce(g, data.h0_I, sign_character(g, data.h0_I, data.h_I))
        if restrict(chi, g) != want:
            per_I_ok = False

    lhs_g, rhs_g = character_identity_sides(cm, ctx)
    res_ok = restrict(lhs_amb, g) == lhs_g and restrict(lhs_amb, g) == rhs_g
    return {
        "check": "restriction_bridge",
        "pass": per_I_ok and res_ok,
        "summands_ok": per_I_ok,
        "lhs_ok": res_ok,
    }
