"""The split model of K^c and the Pfister-form theorem, in exact arithmetic.

Field elements become functions tau -> tau(x) with values in Q(i); the group
acts by (sigma . x)_tau = x_{tau sigma} and complex conjugation is the action
of iota.  The totally positive d is given by its positive square roots
e_i = sqrt(d_i), so sqrt(-phi_i(d)) is modeled exactly as i * e_i.  The base
field K_0^c splits as R = Map(G_0, Q(i)) and the algebra V gets the basis
v_I with v_I v_J = prod_{i in I meet J} (-D_i) v_{I xor J}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


class QI:
    """A Gaussian rational re + im*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, o):
        return QI(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return QI(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __mul__(self, o):
        # Zero-part fast paths; most values in practice are real or purely
        # imaginary and full Gaussian multiplication is four Fraction products.
        if not self.im:
            if not o.im:
                return QI(self.re * o.re, 0)
            return QI(self.re * o.re, self.re * o.im)
        if not self.re:
            if not o.re:
                return QI(-self.im * o.im, 0)
            return QI(-self.im * o.im, self.im * o.re)
        return QI(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    def __truediv__(self, o):
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return QI(self.re / o.re, self.im / o.re)
        if not o.re:
            return QI(self.im / o.im, -self.re / o.im)
        den = o.re * o.re + o.im * o.im
        return QI(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
        )

    def scale(self, c):
        return QI(self.re * c, self.im * c)

    def __eq__(self, o):
        return isinstance(o, QI) and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def __repr__(self):
        return "QI(%s, %s)" % (self.re, self.im)


@dataclass(frozen=True)
class SplitParams:
    """The square roots e_i > 0 of a totally positive d (d_i = e_i^2)."""

    e: tuple

    def __post_init__(self):
        e = tuple(Fraction(x) for x in self.e)
        if not e or any(x <= 0 for x in e):
            raise InputError("all e_i must be positive rationals")
        object.__setattr__(self, "e", e)

    @property
    def degree(self):
        return len(self.e)

    @property
    def d(self):
        return tuple(x * x for x in self.e)


class FunctionAlgebraElement:
    """An element of A = Map(G, Q(i)) with the right-translation action."""

    __slots__ = ("cm", "values")

    def __init__(self, cm, values):
        if len(values) != cm.order:
            raise InputError("value list must cover the group")
        self.cm = cm
        self.values = list(values)

    @classmethod
    def zero(cls, cm):
        return cls(cm, [QI() for _ in range(cm.order)])

    @classmethod
    def coset_indicator(cls, cm, rep, sub):
        coset = {cm.group.mul(rep, s) for s in sub}
        return cls(cm, [QI(1) if t in coset else QI() for t in range(cm.order)])

    def __add__(self, o):
        return FunctionAlgebraElement(
            self.cm, [a + b for a, b in zip(self.values, o.values)]
        )

    def __sub__(self, o):
        return FunctionAlgebraElement(
            self.cm, [a - b for a, b in zip(self.values, o.values)]
        )

    def __mul__(self, o):
        return FunctionAlgebraElement(
            self.cm, [a * b for a, b in zip(self.values, o.values)]
        )

    def scale(self, c):
        if isinstance(c, QI):
            return FunctionAlgebraElement(self.cm, [v * c for v in self.values])
        return FunctionAlgebraElement(self.cm, [v.scale(c) for v in self.values])

    def act(self, pos):
        """(sigma . x)_tau = x_{tau sigma} for sigma at position ``pos``."""
        g = self.cm.group
        return FunctionAlgebraElement(
            self.cm, [self.values[g.mul(t, pos)] for t in range(self.cm.order)]
        )

    def conj(self):
        """Complex conjugation: the action of iota."""
        return self.act(self.cm.iota_pos)

    def is_invariant(self, sub):
        return all(self.act(s).values == self.values for s in sub)

    def __eq__(self, o):
        return isinstance(o, FunctionAlgebraElement) and self.values == o.values

    def __hash__(self):
        return hash(tuple(self.values))


def s_element(cm, params, i):
    """The model of sqrt(-phi_i(d)): tau -> (-1)^{f(sigma(i))} i e_{sigma(i)}."""
    if params.degree != cm.degree:
        raise InputError("parameter degree does not match the group")
    vals = []
    for t in range(cm.order):
        e = cm.element(t)
        j = e.perm[i - 1]
        sgn = -1 if e.sign[j - 1] else 1
        vals.append(QI(0, sgn * params.e[j - 1]))
    return FunctionAlgebraElement(cm, vals)


def fixed_subalgebra_basis(cm, sub):
    """Indicator basis of A^S: one per left coset tau S, canonical reps first."""
    reps = cm.group.left_cosets(sub).reps
    return [FunctionAlgebraElement.coset_indicator(cm, r, sub) for r in reps]


def trace_to_Q(x, sub):
    """Tr_{fix(S)/Q}(x) = sum over G/S of sigma(x): asserts the sum is a
    rational constant and returns it as a Fraction."""
    cm = x.cm
    reps = cm.group.left_cosets(sub).reps
    total = FunctionAlgebraElement.zero(cm)
    for r in reps:
        total = total + x.act(r)
    first = total.values[0]
    if any(v != first for v in total.values[1:]):
        raise InputError("trace of a non-invariant element is not constant")
    if first.im:
        raise InputError("trace has a nonzero imaginary part")
    return first.re


# -- the split base ring R and the algebra V -------------------------------

# Per-group caches.  Keys include id(cm) and the cached value keeps a strong
# reference to cm, so a recycled id can never alias a different group.
_perm_cache = {}
_fiber_cache = {}
_dfun_cache = {}
_recip_cache = {}


def perm_list(cm):
    """The permutation image G_0 as a sorted list of one-line tuples."""
    hit = _perm_cache.get(id(cm))
    if hit is not None and hit[0] is cm:
        return hit[1]
    perms = sorted({e.perm for e in cm.group.elements})
    _perm_cache[id(cm)] = (cm, perms)
    return perms


def _fibers(cm):
    """Positions of G grouped by permutation image, in perm_list order."""
    hit = _fiber_cache.get(id(cm))
    if hit is not None and hit[0] is cm:
        return hit[1]
    perms = perm_list(cm)
    by_perm = {p: [] for p in perms}
    for t in range(cm.order):
        by_perm[cm.perm(t)].append(t)
    fibers = [by_perm[p] for p in perms]
    _fiber_cache[id(cm)] = (cm, fibers)
    return fibers


def d_function(cm, params, i):
    """D_i in R: sigma -> d_{sigma(i)}."""
    return [QI(params.d[p[i - 1] - 1]) for p in perm_list(cm)]


def _dfuns(cm, params):
    key = (id(cm), params.e)
    hit = _dfun_cache.get(key)
    if hit is not None and hit[0] is cm:
        return hit[1]
    funs = [d_function(cm, params, i) for i in range(1, cm.degree + 1)]
    _dfun_cache[key] = (cm, funs)
    return funs


def _mask_recips(cm, params):
    """1 / prod_{i in I} s_i as a function on G, for every subset mask."""
    key = (id(cm), params.e)
    hit = _recip_cache.get(key)
    if hit is not None and hit[0] is cm:
        return hit[1]
    n = cm.degree
    s_funs = [s_element(cm, params, i) for i in range(1, n + 1)]
    one = QI(1)
    recips = {}
    for mask in range(1 << n):
        prod = [one] * cm.order
        for i in range(n):
            if mask >> i & 1:
                prod = [a * b for a, b in zip(prod, s_funs[i].values)]
        recips[mask] = [one / b for b in prod]
    _recip_cache[key] = (cm, recips)
    return recips


class VElement:
    """An element of V = R<v_I>, coefficients indexed by subset bit masks."""

    __slots__ = ("cm", "params", "coeffs")

    def __init__(self, cm, params, coeffs):
        self.cm = cm
        self.params = params
        self.coeffs = coeffs  # mask -> list of QI over perm_list(cm)

    @classmethod
    def zero(cls, cm, params):
        width = len(perm_list(cm))
        return cls(
            cm,
            params,
            {m: [QI() for _ in range(width)] for m in range(1 << cm.degree)},
        )

    def __add__(self, o):
        out = {
            m: [a + b for a, b in zip(self.coeffs[m], o.coeffs[m])]
            for m in self.coeffs
        }
        return VElement(self.cm, self.params, out)

    def __sub__(self, o):
        out = {
            m: [a - b for a, b in zip(self.coeffs[m], o.coeffs[m])]
            for m in self.coeffs
        }
        return VElement(self.cm, self.params, out)

    def __mul__(self, o):
        cm = self.cm
        n = cm.degree
        dfuns = _dfuns(cm, self.params)
        out = VElement.zero(cm, self.params).coeffs
        for m1, r1 in self.coeffs.items():
            if not any(r1):
                continue
            for m2, r2 in o.coeffs.items():
                if not any(r2):
                    continue
                prod = [a * b for a, b in zip(r1, r2)]
                inter = m1 & m2
                for i in range(n):
                    if inter >> i & 1:
                        prod = [-a * b for a, b in zip(prod, dfuns[i])]
                tgt = out[m1 ^ m2]
                out[m1 ^ m2] = [a + b for a, b in zip(tgt, prod)]
        return VElement(cm, self.params, out)

    def __eq__(self, o):
        return isinstance(o, VElement) and self.coeffs == o.coeffs

    def __hash__(self):
        return hash(tuple(tuple(v) for _, v in sorted(self.coeffs.items())))


def pfister_q(v):
    """q(sum x_I v_I) = sum x_I^2 prod_{i in I} D_i, an element of R."""
    cm = v.cm
    n = cm.degree
    dfuns = _dfuns(cm, v.params)
    width = len(perm_list(cm))
    out = [QI() for _ in range(width)]
    for m, r in v.coeffs.items():
        term = [a * a for a in r]
        for i in range(n):
            if m >> i & 1:
                term = [a * b for a, b in zip(term, dfuns[i])]
        out = [a + b for a, b in zip(out, term)]
    return out


def pfister_b(v, w):
    """The polarization of pfister_q: sum_I v_I w_I prod_{i in I} D_i."""
    cm = v.cm
    n = cm.degree
    dfuns = _dfuns(cm, v.params)
    width = len(perm_list(cm))
    out = [QI() for _ in range(width)]
    for m in v.coeffs:
        term = [a * b for a, b in zip(v.coeffs[m], w.coeffs[m])]
        for i in range(n):
            if m >> i & 1:
                term = [a * b for a, b in zip(term, dfuns[i])]
        out = [a + b for a, b in zip(out, term)]
    return out


def fold_to_R(cm, x):
    """Collapse a C-invariant function on G to a function on G_0.

    The fibers of rho are exactly the cosets of C, so the constancy check
    here is the C-invariance assertion.
    """
    out = []
    for fiber in _fibers(cm):
        first = x.values[fiber[0]]
        if any(x.values[t] != first for t in fiber[1:]):
            raise InputError("element is not constant on the fibers of rho")
        out.append(first)
    return out


def apply_half_norm_star(ctx, f, I, a):
    """N_{Phi_f(I)*} acting on a FunctionAlgebraElement.

    Since (psi . a)_t = a_{t psi}, position s of a lands at t = s psi^{-1};
    scattering from the support of a is much cheaper for sparse inputs.
    """
    cm = ctx.cm
    g = cm.group
    half = Fraction(1, 2)
    vals = [QI() for _ in range(cm.order)]
    support = [(s, v) for s, v in enumerate(a.values) if v]
    for rep in ctx.left_reps(ctx.hstar(f)):
        c = -half if ctx.parity(f, I, rep) else half
        rinv = g.inv(rep)
        for s, v in support:
            t = g.mul(s, rinv)
            vals[t] = vals[t] + v.scale(c)
    return FunctionAlgebraElement(cm, vals)


def phi_lambda(cm, params, a_by_f, ctx=None):
    """The algebra map phi_Lambda into V, with the C-invariance assertion."""
    from .group_algebra import Context

    ctx = ctx or Context(cm)
    n = cm.degree
    recips = _mask_recips(cm, params)
    scale = Fraction(1, 2 ** (n - 1))
    out = VElement.zero(cm, params)
    for mask in range(1 << n):
        I = tuple(i + 1 for i in range(n) if mask >> i & 1)
        u = FunctionAlgebraElement.zero(cm)
        for f in ctx.lambda_bits:
            sgn = (-1) ** sum(f[i - 1] for i in I)
            u = u + apply_half_norm_star(ctx, f, I, a_by_f[f]).scale(sgn)
        w = FunctionAlgebraElement(
            cm, [a * b for a, b in zip(u.values, recips[mask])]
        )
        # fold_to_R raises if w is not C-invariant
        out.coeffs[mask] = [v.scale(scale) for v in fold_to_R(cm, w)]
    return out


# -- verification ----------------------------------------------------------

def _reflex_basis(cm, ctx):
    """Indicator basis of the direct sum of the A^{H*(Phi)} blocks.

    Returns a list of (f, FunctionAlgebraElement) with the zero components of
    the tuple left implicit: a basis tuple is nonzero in one block only.
    """
    out = []
    for f in ctx.lambda_bits:
        for b in fixed_subalgebra_basis(cm, ctx.hstar(f)):
            out.append((f, b))
    return out


def _tuple_of(cm, ctx, f, elem):
    return {
        f2: (elem if f2 == f else FunctionAlgebraElement.zero(cm))
        for f2 in ctx.lambda_bits
    }


def q_lambda_b(cm, ctx, tup_a, tup_b):
    """Polarized trace form of Q_Lambda on tuples over Lambda, a Fraction."""
    total = Fraction(0)
    for f in ctx.lambda_bits:
        a = tup_a[f]
        b = tup_b[f]
        x = a.conj() * b + b.conj() * a
        total += trace_to_Q(x, ctx.hstar(f))
    return total / 2


def verify_pfister(cm, params, ctx=None):
    """The three Pfister checks: homomorphism, Gram identity, bijectivity."""
    from .group_algebra import Context

    ctx = ctx or Context(cm)
    n = cm.degree
    basis = _reflex_basis(cm, ctx)
    if len(basis) != 1 << n:
        raise InputError("reflex basis has wrong dimension %d" % len(basis))
    images = [
        phi_lambda(cm, params, _tuple_of(cm, ctx, f, b), ctx) for f, b in basis
    ]
    zero_v = VElement.zero(cm, params)

    # (i) algebra homomorphism on all basis pairs; products of indicator
    # basis vectors are again basis vectors or zero, so phi of the product
    # is already known.
    hom_ok = True
    for i, (f1, b1) in enumerate(basis):
        for j, (f2, b2) in enumerate(basis):
            got = images[i] * images[j]
            if f1 == f2 and b1 == b2:
                want = images[i]
            elif f1 == f2 and (b1 * b2) == FunctionAlgebraElement.zero(cm):
                want = zero_v
            elif f1 != f2:
                want = zero_v
            else:
                raise InputError("indicator product is not indicator or zero")
            if got != want:
                hom_ok = False

    # (ii) Gram identity: B_q(phi(a), phi(b)) = 2^-N B_Lambda(a, b), with
    # every entry a rational constant in R.
    gram_ok = True
    scale = Fraction(1, 2 ** n)
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            lhs = pfister_b(images[i], images[j])
            f1, b1 = basis[i]
            f2, b2 = basis[j]
            want = scale * q_lambda_b(
                cm,
                ctx,
                _tuple_of(cm, ctx, f1, b1),
                _tuple_of(cm, ctx, f2, b2),
            )
            if any(v != QI(want) for v in lhs):
                gram_ok = False

    # (iii) fiberwise bijectivity: for each sigma in G_0 the 2^N x 2^N matrix
    # of v_I coordinates has nonzero determinant over Q(i).
    bij_ok = True
    width = len(perm_list(cm))
    for k in range(width):
        mat = [
            [images[b].coeffs[m][k] for m in range(1 << n)]
            for b in range(len(basis))
        ]
        if not _nonzero_det(mat):
            bij_ok = False

    return {
        "check": "pfister",
        "e": [str(x) for x in params.e],
        "pass": hom_ok and gram_ok and bij_ok,
        "homomorphism": hom_ok,
        "gram": gram_ok,
        "bijective": bij_ok,
    }


def _nonzero_det(mat):
    """Gaussian elimination over Q(i); True when the matrix is invertible."""
    m = [row[:] for row in mat]
    size = len(m)
    for col in range(size):
        piv = None
        for r in range(col, size):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return False
        m[col], m[piv] = m[piv], m[col]
        inv = QI(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(col + 1, size):
            if m[r][col]:
                c = m[r][col]
                m[r] = [x - c * y for x, y in zip(m[r], m[col])]
    return True


def conjugation_real_basis(cm, sub):
    """A basis on which the trace form is visibly definite.

    For each pair of left cosets (tau S, iota tau S) it takes
    u+ = ind_tau + ind_{iota tau} and u- = i (ind_tau - ind_{iota tau}),
    both fixed under the composite of conjugations.
    """
    g = cm.group
    sub = g.subgroup(sub)
    if cm.iota_pos in sub:
        raise InputError("iota must not lie in the subgroup")
    dec = g.left_cosets(sub)
    seen = set()
    out = []
    for rep in dec.reps:
        if dec.membership[rep] in seen:
            continue
        mate = dec.membership[g.mul(cm.iota_pos, rep)]
        seen.add(dec.membership[rep])
        seen.add(mate)
        ind = FunctionAlgebraElement.coset_indicator(cm, rep, sub)
        ind_m = ind.conj()
        out.append(ind + ind_m)
        out.append((ind - ind_m).scale(QI(0, 1)))
    return out


def trace_gram(cm, ctx=None):
    """Gram matrices of the orthogonal trace forms on both direct sums.

    Uses the conjugation-real bases; entries must be rational and the
    matrices positive definite (checked by leading principal minors).
    """
    from .group_algebra import Context

    ctx = ctx or Context(cm)
    sides = {}
    for label, subs in (
        ("lambda", [ctx.hstar(f) for f in ctx.lambda_bits]),
        ("jodd", [ctx.subset(I).h_I for I in ctx.jodd]),
    ):
        blocks = [(sub, conjugation_real_basis(cm, sub)) for sub in subs]
        dim = sum(len(b) for _, b in blocks)
        gram = [[Fraction(0)] * dim for _ in range(dim)]
        offset = 0
        for sub, vecs in blocks:
            for i, a in enumerate(vecs):
                for j, b in enumerate(vecs):
                    x = a.conj() * b + b.conj() * a
                    gram[offset + i][offset + j] = trace_to_Q(x, sub) / 2
            offset += len(vecs)
        sides[label] = {
            "dimension": dim,
            "gram": [[str(v) for v in row] for row in gram],
            "positive_definite": _positive_definite(gram),
        }
    ok = all(s["positive_definite"] for s in sides.values())
    return {"check": "trace_gram", "pass": ok, "sides": sides}


def _positive_definite(gram):
    """Exact Sylvester criterion: all leading principal minors positive."""
    size = len(gram)
    for k in range(1, size + 1):
        if _det([row[:k] for row in gram[:k]]) <= 0:
            return False
    return True


def _det(mat):
    m = [[Fraction(x) for x in row] for row in mat]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        piv = None
        for r in range(col, size):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, size):
            if m[r][col]:
                c = m[r][col] * inv
                m[r] = [x - c * y for x, y in zip(m[r], m[col])]
    return det
