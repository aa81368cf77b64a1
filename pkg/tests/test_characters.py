from fractions import Fraction

import pytest

from reflexlab.characters import (
    ClassFunction,
    build_ambient,
    induce,
    inner_product,
    restrict,
    sign_character,
    verify_character_identity,
    verify_decomposition_lemma,
    verify_restriction_bridge,
)

from conftest import ALL_NAMES, get_cm, get_ctx

SMALL = ["n1", "b2", "b3", "iota_c3", "iota_s3", "dihedral4", "dihedral6"]


def test_induction_from_trivial_subgroup_is_regular():
    # [TRIVIAL] Ind_1^G(1) is the regular character: |G| at id, 0 elsewhere
    g = get_cm("b2").group
    chi = induce(g, (g.identity_pos,), {g.identity_pos: Fraction(1)})
    assert chi.value_at(g.identity_pos) == g.order
    assert all(chi.value_at(t) == 0 for t in range(1, g.order))
    assert chi.degree == g.order


def test_sign_character_values():
    cm = get_cm("b3")
    vals = sign_character(cm.group, cm.h0, cm.h)
    assert set(vals) == set(cm.h0)
    assert all(vals[t] == 1 for t in cm.h)
    assert all(vals[t] == -1 for t in set(cm.h0) - set(cm.h))


@pytest.mark.parametrize("name", ["b2", "b3", "iota_s3", "dihedral4"])
def test_frobenius_reciprocity(name):
    # <Ind chi, psi>_G == <chi, Res psi>_S for the sign character chi and
    # both sides of the main identity as psi
    cm = get_cm(name)
    g = cm.group
    chi_vals = sign_character(g, cm.h0, cm.h)
    ind = induce(g, cm.h0, chi_vals)
    for psi in (ind, induce(g, cm.h, {t: Fraction(1) for t in cm.h})):
        lhs = inner_product(ind, psi)
        rhs = Fraction(0)
        for t in cm.h0:
            rhs += chi_vals[t] * psi.value_at(t)
        rhs /= len(cm.h0)
        assert lhs == rhs


def test_induced_degree():
    # [TRIVIAL] deg Ind = [G:S] * deg chi
    cm = get_cm("iota_s3")
    g = cm.group
    chi = induce(g, cm.h0, sign_character(g, cm.h0, cm.h))
    assert chi.degree == g.order // len(cm.h0)


def test_class_function_arithmetic():
    g = get_cm("b2").group
    one = ClassFunction(g, [Fraction(1)] * len(g.conjugacy_classes()))
    assert (one + one) - one == one
    assert inner_product(one, one) == 1


@pytest.mark.parametrize("name", ALL_NAMES)
def test_character_identity(name):
    cm = get_cm(name)
    r = verify_character_identity(cm, get_ctx(name))
    assert r["pass"], r
    assert r["degree"] == 1 << (cm.degree - 1)


@pytest.mark.parametrize("name", SMALL)
def test_decomposition_lemma(name):
    cm = get_cm(name)
    r = verify_decomposition_lemma(cm)
    assert r["pass"], r
    assert r["ambient_order"] == (1 << cm.degree) * len(
        {e.perm for e in cm.group.elements}
    )


@pytest.mark.parametrize("name", SMALL)
def test_restriction_bridge(name):
    r = verify_restriction_bridge(get_cm(name), ctx=get_ctx(name))
    assert r["pass"], r


def test_restrict_preserves_values():
    cm = get_cm("b2")
    amb = build_ambient(cm)
    chi = induce(
        amb, (amb.identity_pos,), {amb.identity_pos: Fraction(1)}
    )
    res = restrict(chi, cm.group)
    # the regular character of the ambient restricts to |amb| at id, 0 else
    assert res.value_at(cm.group.identity_pos) == amb.order
    assert all(res.value_at(t) == 0 for t in range(1, cm.order))
