import random

import pytest

from reflexlab.errors import InputError, ResourceLimitError
from reflexlab.signed_perm import (
    SignedPerm,
    close,
    compose,
    full_hyperoctahedral,
    identity,
    inverse,
    iota,
    parse_generator_file,
)

from conftest import get_cm


def rand_elem(rng, n):
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    sign = tuple(rng.randrange(2) for _ in range(n))
    return SignedPerm(sign, tuple(perm))


def act(g, point):
    # Independent model: g sends the signed point (i, eps) to
    # (g.perm[i-1], eps xor g.sign at the image slot).
    i, eps = point
    j = g.perm[i - 1]
    return (j, eps ^ g.sign[j - 1])


def test_compose_matches_action():
    # [DERIVED] composition must agree with composing the signed-point action
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randrange(1, 7)
        a, b = rand_elem(rng, n), rand_elem(rng, n)
        c = compose(a, b)
        for i in range(1, n + 1):
            for eps in (0, 1):
                assert act(a, act(b, (i, eps))) == act(c, (i, eps))


def test_inverse_and_associativity():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randrange(1, 7)
        a, b, c = (rand_elem(rng, n) for _ in range(3))
        assert compose(a, inverse(a)) == identity(n)
        assert compose(inverse(a), a) == identity(n)
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_iota_is_central_and_involutive():
    for n in (1, 2, 3, 4):
        i = iota(n)
        assert compose(i, i) == identity(n)
        rng = random.Random(n)
        for _ in range(20):
            a = rand_elem(rng, n)
            assert compose(a, i) == compose(i, a)


def test_full_hyperoctahedral_orders():
    # [TRIVIAL] |B_N| = 2^N N!
    assert full_hyperoctahedral(1).order == 2
    assert full_hyperoctahedral(2).order == 8
    assert full_hyperoctahedral(3).order == 48


def test_close_caps_and_errors():
    with pytest.raises(ResourceLimitError):
        full_hyperoctahedral(4, max_order=100)
    with pytest.raises(ResourceLimitError):
        close([identity(21)])
    with pytest.raises(InputError):
        close([])
    with pytest.raises(InputError):
        close([identity(2), identity(3)])
    assert close([], degree=3).order == 1


def test_group_tables_and_cosets():
    cm = get_cm("b3")
    g = cm.group
    # multiplication table round trip against the element list
    rng = random.Random(1)
    for _ in range(50):
        i, j = rng.randrange(g.order), rng.randrange(g.order)
        assert g.elements[g.mul(i, j)] == compose(g.elements[i], g.elements[j])
        assert g.mul(i, g.inv(i)) == g.index[identity(3)]
    dec = g.left_cosets(cm.h0)
    assert dec.count * len(cm.h0) == g.order
    covered = sorted(t for c in range(dec.count) for t in dec.coset_elements(c))
    assert covered == list(range(g.order))


def test_conjugacy_classes_partition():
    g = get_cm("b3").group
    classes = g.conjugacy_classes()
    assert sum(len(c) for c in classes) == g.order
    assert [len(c) for c in classes if 0 in c] == [1]
    # class sizes divide the order
    assert all(g.order % len(c) == 0 for c in classes)


def test_parse_generator_file():
    text = """
# comment
degree 2

signs=10 perm=1 2
signs=00 perm=2 1
"""
    degree, gens = parse_generator_file(text)
    assert degree == 2
    assert gens[0] == SignedPerm((1, 0), (1, 2))
    assert gens[1] == SignedPerm((0, 0), (2, 1))


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("", "missing 'degree N'"),
        ("degree x", "line 1"),
        ("degree 2\nsigns=1 perm=1 2", "line 2: signs"),
        ("degree 2\nsigns=10 perm=1 1", "not a permutation"),
        ("degree 2\nperm=1 2 signs=10", "line 2: expected"),
        ("degree 2\nsigns=10 perm=1 x", "must be integers"),
    ],
)
def test_parse_generator_file_errors(text, fragment):
    with pytest.raises(InputError, match=fragment.replace("(", "\\(")):
        parse_generator_file(text)
