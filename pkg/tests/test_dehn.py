import random

import pytest
from hypothesis import given, strategies as st

from stoneinflation.dehn import (
    ALPHA_MS,
    DehnElement,
    Named,
    RationalPi,
    dehn_of_polyhedron,
)
from stoneinflation.goldenfield import TAU, ZERO, GoldenNumber as G
from strategies import goldens

KEYS = ["alpha_ms", "theta_tet", "beta"]

dehn_elements = st.dictionaries(st.sampled_from(KEYS), goldens, max_size=3).map(DehnElement)


def test_rational_pi_normalizes():
    assert RationalPi(3, 2) == RationalPi(1, 2)
    assert RationalPi(-1, 4) == RationalPi(3, 4)
    assert RationalPi(2, 4) == RationalPi(1, 2)
    assert RationalPi(5, 5) == RationalPi(0, 1)
    with pytest.raises(ValueError):
        RationalPi(1, 0)
    with pytest.raises(ValueError):
        Named("not an id")


def test_cube_is_zero():
    assert dehn_of_polyhedron([(1, RationalPi(1, 2))] * 12).is_zero()


def test_empty_is_zero():
    assert dehn_of_polyhedron([]) == DehnElement()


def test_named_sum():
    d = dehn_of_polyhedron([(1, Named("theta_tet"))] * 6)
    assert d.terms == {"theta_tet": G(6)}


def test_nonpositive_length_rejected():
    with pytest.raises(ValueError):
        dehn_of_polyhedron([(0, Named("x"))])
    with pytest.raises(ValueError):
        dehn_of_polyhedron([(1 - TAU, Named("x"))])


def ms(c):
    return DehnElement({"alpha_ms": c})


def test_h_is_r_plus_m():
    d_r = ms(-5 * (TAU + 1))
    d_m = ms(-5 * (1 - TAU))
    assert d_r + d_m == ms(G(-10))


def test_s_plus_two_a():
    d_s = ms(-5 * (TAU - 1))
    d_a = ms(-5 * -TAU)
    assert d_s + d_a.scale(2) == ms(5 * TAU + 5)
    assert d_s + d_a.scale(2) == ms(-5 * (-TAU - 1))


def test_scale_examples():
    d_z = ms(-5 * TAU)
    assert d_z.scale(TAU) == ms(-5 * (TAU + 1))
    assert d_z.scale(0).is_zero()
    assert TAU * d_z == d_z.scale(TAU)


def test_zero_coefficients_pruned():
    d = DehnElement({"x": 0, "y": TAU}) + DehnElement({"y": -TAU})
    assert d.is_zero()
    assert d.keys() == []
    assert DehnElement({RationalPi(1, 3): 5}).is_zero()
    assert DehnElement({ALPHA_MS: 1}) == ms(1)


@given(dehn_elements, dehn_elements, dehn_elements, goldens, goldens)
def test_module_axioms(x, y, z, a, b):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x + DehnElement() == x
    assert x - x == DehnElement()
    assert x.scale(a + b) == x.scale(a) + x.scale(b)
    assert (x + y).scale(a) == x.scale(a) + y.scale(a)
    assert x.scale(a * b) == x.scale(b).scale(a)
    assert x.scale(1) == x


@given(dehn_elements, dehn_elements)
def test_conj_commutes_with_add(x, y):
    assert (x + y).conj() == x.conj() + y.conj()


def test_json_round_trip():
    d = DehnElement({"alpha_ms": G(-5, -5)})
    assert d.to_json() == {"alpha_ms": "-5 - 5*tau"}
    assert DehnElement.from_json(d.to_json()) == d


def random_edges(rng, n, rational_only=False):
    edges = []
    for _ in range(n):
        length = G(rng.randint(0, 20), rng.randint(0, 20))
        if not length:
            length = G(1)
        if rational_only or rng.random() < 0.4:
            angle = RationalPi(rng.randint(-30, 30), rng.randint(1, 12))
        else:
            angle = Named(rng.choice(KEYS))
        edges.append((length, angle))
    return edges


def test_rational_angles_vanish_randomized():
    rng = random.Random(7)
    for _ in range(200):
        assert dehn_of_polyhedron(random_edges(rng, rng.randint(0, 30), True)).is_zero()


def test_additive_over_concatenation_randomized():
    rng = random.Random(11)
    for _ in range(1000):
        e1 = random_edges(rng, rng.randint(0, 15))
        e2 = random_edges(rng, rng.randint(0, 15))
        assert dehn_of_polyhedron(e1 + e2) == dehn_of_polyhedron(e1) + dehn_of_polyhedron(e2)
