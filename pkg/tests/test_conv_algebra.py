from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from su2tqft import conv_algebra as ca
from su2tqft.conv_algebra import C, E, I, U, SheafObject
from su2tqft.laurent import LaurentPoly

atoms = st.one_of(st.just(I()), st.just(C()), st.builds(U, st.integers(1, 5)),
                  st.builds(E, st.integers(1, 5)))
objects = st.lists(st.tuples(atoms, st.integers(-6, 6), st.integers(1, 3)),
                   min_size=1, max_size=3).map(SheafObject)


def obj(*terms):
    return SheafObject(list(terms))


def test_zero_index_normalises_to_unit():
    assert U(0) == I() and E(0) == I()


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        U(-1)


@pytest.mark.parametrize("x, y, expected", [
    (C(), C(), [(C(), 0), (C(), -3)]),
    (C(), U(2), [(C(), -6)]),
    (C(), E(3), [(C(), 0)]),
    (U(2), U(3), [(U(5), 0)]),
    (E(2), E(3), [(E(5), 0)]),
    (E(1), U(3), [(U(2), -3)]),
    (E(3), U(1), [(E(2), -3)]),
    (E(2), U(2), [(I(), -6)]),
])
def test_product_table(x, y, expected):
    want = SheafObject([(a, s, 1) for a, s in expected])
    assert obj((x, 0, 1)) * obj((y, 0, 1)) == want
    assert obj((y, 0, 1)) * obj((x, 0, 1)) == want


def test_F_squared():
    F = ca.commutator_object()
    assert str(F) == "2·I[-3] + U1[-3] + E1"
    assert str(F * F) == "6·I[-6] + 4·U1[-6] + U2[-6] + 4·E1[-3] + E2"


def test_S_squared_order():
    assert str(ca.power(ca.squaring_object(), 2)) == "2·I[-3] + U2 + E2"


def test_power_zero_is_unit():
    assert ca.power(ca.commutator_object(), 0) == ca.unit()
    assert str(ca.unit()) == "I"


def test_closed_form_F_coefficients():
    F5 = ca.closed_form_F(5)
    assert F5.multiplicity(I(), -15) == comb(10, 5)
    assert F5.multiplicity(U(2), -15) == comb(10, 3)
    assert F5.multiplicity(E(2), -9) == comb(10, 3)


@pytest.mark.parametrize("n", range(11))
def test_closed_forms_match_powers(n):
    assert ca.closed_form_F(n) == ca.power(ca.commutator_object(), n)
    assert ca.closed_form_S(n) == ca.power(ca.squaring_object(), n)


@pytest.mark.parametrize("atom, one, generic, push", [
    (I(), [0], [], [0]),
    (C(), [0], [0], [0, 3]),
    (U(1), [], [0], [3]),
    (U(3), [4, 6], [2, 4, 6], [9]),
    (E(2), [0, 2, 4], [0, 2], [0]),
])
def test_functor_tables(atom, one, generic, push):
    o = obj((atom, 0, 1))
    assert ca.stalk_at_one(o) == LaurentPoly.from_degrees(one)
    assert ca.stalk_generic(o) == LaurentPoly.from_degrees(generic)
    assert ca.pi_shriek(o) == LaurentPoly.from_degrees(push)


def test_shift_moves_degree_up():
    assert ca.stalk_at_one(obj((I(), -3, 2))) == LaurentPoly({3: 2})


def test_json_round_trip():
    F3 = ca.closed_form_F(3)
    assert SheafObject.from_json(F3.to_json()) == F3


@settings(max_examples=60)
@given(objects, objects, objects)
def test_monoid_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert ca.unit() * a == a


@given(objects, objects)
def test_functors_respect_convolution(a, b):
    assert ca.pi_shriek(a * b) == ca.pi_shriek(a) * ca.pi_shriek(b)


@given(objects, objects)
def test_k0_is_additive(a, b):
    assert ca.k0_reduce(a + b) == ca.k0_reduce(a) + ca.k0_reduce(b)
    assert ca.k0_reduce(a.shift(1)) == -ca.k0_reduce(a)


@given(objects)
def test_euler_characteristics_factor(a):
    k = ca.k0_reduce(a)
    assert ca.stalk_at_one(a).eval_at_minus_one() == k.chi_stalk_at_one()
    assert ca.stalk_generic(a).eval_at_minus_one() == k.chi_stalk_generic()
    assert ca.pi_shriek(a).eval_at_minus_one() == k.chi_pi_shriek()


def test_k0_values():
    assert ca.k0_atom(E(3)).as_tuple() == (1, 3, 0)
    assert ca.k0_atom(U(2)).as_tuple() == (0, -1, -1)
    assert ca.k0_atom(U(1)) == ca.K0_U1
