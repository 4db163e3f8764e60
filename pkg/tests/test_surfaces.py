import pytest

from su2tqft import surfaces
from su2tqft.laurent import ZERO, LaurentPoly
from su2tqft.surfaces import SurfaceSpec

P = LaurentPoly

# computed with the convolution engine and cross-checked against the binomial sum
REP_G3 = P({0: 1, 2: 1, 3: 6, 4: 1, 5: 6, 6: 16, 7: 6, 8: 15, 9: 20, 12: 6, 13: 1, 15: 1})


@pytest.mark.parametrize("g, expected", [
    (0, P({0: 1})),
    (1, P({0: 1, 2: 1, 3: 2})),
    (2, P({0: 1, 2: 1, 3: 4, 4: 1, 5: 4, 6: 6, 9: 1})),
    (3, REP_G3),
])
def test_rep_poincare(g, expected):
    assert surfaces.rep_poincare(g) == expected


@pytest.mark.parametrize("g", range(1, 11))
def test_rep_closed_sum(g):
    assert surfaces.rep_poincare_closed(g) == surfaces.rep_poincare(g)


def test_euler_characteristic_of_rep_variety():
    # 1 + t^2 + 2t^3 at t = -1
    assert surfaces.rep_poincare(1).eval_at_minus_one() == 0


def test_twisted_small_genus():
    assert surfaces.twisted_rep_poincare(1) == P({0: 1, 3: 1})
    assert surfaces.twisted_rep_poincare(2).is_palindromic()[1] * 2 == 9


def test_twisted_sphere_policy():
    with pytest.raises(ValueError, match="no solutions"):
        surfaces.twisted_rep_poincare(0)
    assert surfaces.twisted_rep_poincare(0, allow_empty=True) == ZERO


@pytest.mark.parametrize("g", range(1, 11))
def test_twisted_closed_form(g):
    assert surfaces.twisted_rep_poincare_closed(g) == surfaces.twisted_rep_poincare(g)


@pytest.mark.parametrize("r, expected", [
    (1, P({0: 2})),
    (2, P({0: 1, 2: 1, 3: 3, 4: 1})),
    (3, P({0: 1, 2: 2, 3: 6, 4: 2, 6: 1})),
])
def test_nonorientable(r, expected):
    assert surfaces.nonorientable_rep_poincare(r) == expected


def test_so3_components():
    comps = surfaces.so3_rep_poincare(1)
    assert comps.identity == P({0: 1, 2: 1, 3: 2})
    assert comps.twisted == P({0: 1, 3: 1})
    assert comps.total() == P({0: 2, 2: 1, 3: 3})


def test_u2_factor():
    assert surfaces.u2_rep_poincare(1) == P({0: 1, 2: 1, 3: 2}) * P({0: 1, 1: 1}) ** 2


@pytest.mark.parametrize("kwargs", [
    dict(family="klein", genus=1),
    dict(family="orientable", genus=-1),
    dict(family="orientable", genus=1, group="U2", twisted=True),
    dict(family="nonorientable", genus=0),
    dict(family="nonorientable", genus=2, group="SO3"),
])
def test_invalid_specs(kwargs):
    with pytest.raises(ValueError):
        SurfaceSpec(**kwargs)


def test_dispatch_labels():
    assert [lab for lab, _ in surfaces.poincare(SurfaceSpec("orientable", 2, "SO3"))] == ["identity", "twisted"]
    assert surfaces.poincare(SurfaceSpec("nonorientable", 1))[0][1] == P({0: 2})


def test_twisted_genus_two_literal():
    assert surfaces.twisted_rep_poincare(2) == P({0: 1, 2: 1, 3: 4, 6: 4, 7: 1, 9: 1})


@pytest.mark.parametrize("g", range(11))
def test_constant_coefficient_is_one(g):
    assert surfaces.rep_poincare(g).coeff(0) == 1
