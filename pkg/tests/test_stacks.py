import pytest

from su2tqft import stacks
from su2tqft.laurent import LaurentPoly, PeriodicSeries
from su2tqft.stacks import QBG, BGObject, G

P = LaurentPoly


def one(atom, shift=0, mult=1):
    return BGObject.of(atom, shift, mult)


def test_q_pullback():
    assert stacks.q_pullback(one(G(1))) == P({0: 1, 3: 1})
    assert stacks.q_pullback(stacks.UNIT_TABLE[2]) == P({0: 1, 2: 1, 4: 1, 6: 2, 9: 1})
    assert stacks.q_pullback(BGObject()) == P({})


def test_pushforwards_of_atoms():
    assert stacks.pi_shriek_bg(one(QBG)) == PeriodicSeries.geometric(-3, -1)
    assert stacks.pi_star_bg(one(QBG)) == PeriodicSeries.geometric(0, 1)
    assert stacks.pi_shriek_bg(one(G(2))).as_poly() == P({0: 1, 4: 1})
    assert stacks.pi_star_bg(one(G(3))).as_poly() == P({0: 1, 4: 1, 8: 1})
    assert stacks.pi_shriek_bg(one(G(1), -3)).as_poly() == P({3: 1})


def test_G_zero_rejected():
    with pytest.raises(ValueError):
        G(0)


@pytest.mark.parametrize("g, expected", [
    (0, [(1, 0, 0)]),
    (1, [(2, 0, -3), (1, 1, 0)]),
    (2, [(4, 0, -6), (4, 1, -3), (1, 2, 0)]),
])
def test_stacky_expansion(g, expected):
    assert stacks.stacky_F_expansion(g) == expected


@pytest.mark.parametrize("k", range(4))
def test_tables_match_nonequivariant_stalks(k):
    assert stacks.table_check(k) == (True, True)


def test_genus_one():
    res = stacks.charstack(1)
    assert res.finite == P({}) and res.prefactor == P({0: 1, 2: 1, 3: 2})
    assert res.series.coeff(-3) == 1 and res.series.coeff(-1) == 1 and res.series.coeff(0) == 2


def test_genus_two_description():
    assert stacks.charstack(2).describe() == (
        "t^6 + (1 + t^2 + 4t^3 + t^4 + 4t^5 + 5t^6) * T, T = t^{-3} + t^{-7} + t^{-11} + t^{-15} + ..."
    )


def test_genus_three_prefactor():
    res = stacks.charstack(3)
    assert res.finite == P({6: 1, 8: 1, 9: 6, 10: 1, 12: 1})
    assert res.prefactor == P({0: 1, 2: 1, 3: 6, 4: 1, 5: 6, 6: 15, 7: 6, 8: 14, 9: 14})


def test_sphere_is_BG():
    assert stacks.charstack_cohomology(0, variant="ordinary") == PeriodicSeries.geometric(0, 1)


@pytest.mark.parametrize("g, expected", [
    (1, P({0: 1})),
    (2, P({0: 1, 2: 1, 3: 4, 4: 1, 6: 1})),
    (3, P({0: 1, 2: 1, 3: 6, 4: 2, 5: 6, 6: 16, 7: 6, 8: 2, 9: 6, 10: 1, 12: 1})),
])
def test_twisted(g, expected):
    c = stacks.charstack_cohomology(g, twisted=True)
    assert c.is_finite() and c.as_poly() == expected
    assert c == stacks.charstack_cohomology(g, twisted=True, variant="ordinary")
    assert expected.is_palindromic()[0]


def test_unsupported_genus():
    with pytest.raises(stacks.UnsupportedGenus, match="no systematic way"):
        stacks.charstack(4)


def test_unknown_variant():
    with pytest.raises(ValueError):
        stacks.charstack(1, variant="weird")


def test_wrong_tail_is_not_the_answer():
    # t^6 + (1 + t^2 + t^4 + t^6) T differs from the genus two series
    fake = stacks.tail("compact") * P({0: 1, 2: 1, 4: 1, 6: 1}) + P({6: 1})
    real = stacks.charstack_cohomology(2)
    assert fake != real
    assert fake.window(-10, 6) != real.window(-10, 6)
