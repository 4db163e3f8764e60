"""Poincaré polynomials of surface representation varieties.

Every pipeline here is "convolve the local object ``g`` (or ``r``) times, then
take a stalk":

* orientable, untwisted:  stalk at 1 of ``F^g`` where ``F = c_! Q``
* orientable, twisted:    stalk at ``C != 1`` of ``F^g``
* non-orientable ``N_r``: stalk of ``S^r`` (``S = s_! Q`` for ``A -> -A^2``),
  at 1 for even ``r`` and at ``-1`` for odd ``r``
* SO(3): the two components are the untwisted and twisted SU(2) answers
* U(2):  the untwisted SU(2) answer tensored with ``H^*(U(1)^{2g})``

The ``*_closed`` functions evaluate the same answers from binomial sums
without any convolution; they are the independent check on the engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import NamedTuple

from . import conv_algebra as ca
from .laurent import ZERO, LaurentPoly

GROUPS = ("SU2", "SO3", "U2")
FAMILIES = ("orientable", "nonorientable")


@dataclass(frozen=True)
class SurfaceSpec:
    family: str
    genus: int
    group: str = "SU2"
    twisted: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown surface family {self.family!r}")
        if self.group not in GROUPS:
            raise ValueError(f"unknown group {self.group!r}")
        if self.genus < 0:
            raise ValueError("genus/demigenus must be nonnegative")
        if self.twisted and (self.family != "orientable" or self.group != "SU2"):
            raise ValueError("twisted varieties are only defined for orientable surfaces and SU(2)")
        if self.family == "nonorientable" and self.group != "SU2":
            raise ValueError("non-orientable surfaces are only supported for SU(2)")
        if self.family == "nonorientable" and self.genus < 1:
            raise ValueError("demigenus must be at least 1")


def rep_poincare(g: int) -> LaurentPoly:
    """P(Rep_SU(2)(Sigma_g)) via the convolution engine."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return ca.stalk_at_one(ca.power(ca.commutator_object(), g))


def rep_poincare_closed(g: int) -> LaurentPoly:
    """P(Rep_SU(2)(Sigma_g)) from the binomial sum, no convolution involved."""
    if g < 1:
        raise ValueError("closed form needs g >= 1")
    degrees: dict[int, int] = {3 * g: comb(2 * g, g)}
    for k in range(1, g + 1):
        mult = comb(2 * g, g - k)
        for j in range(k - 1):
            d = 3 * g + k + 1 + 2 * j
            degrees[d] = degrees.get(d, 0) + mult
        for j in range(k + 1):
            d = 3 * (g - k) + 2 * j
            degrees[d] = degrees.get(d, 0) + mult
    return LaurentPoly(degrees)


def twisted_rep_poincare(g: int, allow_empty: bool = False) -> LaurentPoly:
    """P of ``{prod [A_i, B_i] = C}`` for a fixed ``C != 1``.

    On the sphere the product is empty, so the equation has no solutions;
    that raises unless ``allow_empty`` asks for the zero polynomial instead.
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    if g == 0:
        if allow_empty:
            return ZERO
        raise ValueError("twist class has no solutions on the sphere")
    return ca.stalk_generic(ca.power(ca.commutator_object(), g))


def twisted_rep_poincare_closed(g: int) -> LaurentPoly:
    r"""Evaluate

    .. math::

        t^{3g - 3/2} \sum_{k=1}^{g} \binom{2g}{g-k}
        \frac{(t^k - t^{-k})(t^{2k - 1/2} + t^{-2k + 1/2})}{t - t^{-1}}

    exactly.  Half-integer powers are handled by working in ``u = t^(1/2)``:
    everything is a Laurent polynomial in ``u``, the division by
    ``u^2 - u^-2`` is carried out as exact polynomial division, and at the end
    every exponent must be even.
    """
    if g < 1:
        raise ValueError("closed form needs g >= 1")

    def u(e: int) -> LaurentPoly:
        return LaurentPoly.monomial(e)

    total = ZERO
    for k in range(1, g + 1):
        total = total + comb(2 * g, g - k) * (u(2 * k) - u(-2 * k)) * (u(4 * k - 1) + u(-4 * k + 1))
    quotient = (total * u(6 * g - 3)).divmod_exact(u(2) - u(-2))
    if any(d % 2 for d in quotient.degrees()):
        raise ArithmeticError("half-integer powers survived; the formula is not a polynomial in t")
    return LaurentPoly({d // 2: c for d, c in quotient.terms()})


def nonorientable_rep_poincare(r: int) -> LaurentPoly:
    """P(Rep_SU(2)(N_r)) for the connected sum of ``r`` projective planes."""
    if r < 1:
        raise ValueError("demigenus must be at least 1")
    obj = ca.power(ca.squaring_object(), r)
    return ca.stalk_at_one(obj) if r % 2 == 0 else ca.stalk_generic(obj)


class SO3Components(NamedTuple):
    identity: LaurentPoly
    twisted: LaurentPoly

    def total(self) -> LaurentPoly:
        return self.identity + self.twisted


def so3_rep_poincare(g: int) -> SO3Components:
    """The two connected components of Rep_SO(3)(Sigma_g), ``g >= 1``."""
    if g < 1:
        raise ValueError("SO(3) component split needs g >= 1")
    return SO3Components(rep_poincare(g), twisted_rep_poincare(g))


def u2_rep_poincare(g: int) -> LaurentPoly:
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return rep_poincare(g) * LaurentPoly({0: 1, 1: 1}) ** (2 * g)


def poincare(spec: SurfaceSpec) -> list[tuple[str, LaurentPoly]]:
    """Dispatch a :class:`SurfaceSpec` to its pipeline.

    Returns labelled components; everything but SO(3) has exactly one.
    """
    if spec.family == "nonorientable":
        return [("variety", nonorientable_rep_poincare(spec.genus))]
    if spec.group == "SO3":
        comps = so3_rep_poincare(spec.genus)
        return [("identity", comps.identity), ("twisted", comps.twisted)]
    if spec.group == "U2":
        return [("variety", u2_rep_poincare(spec.genus))]
    if spec.twisted:
        return [("variety", twisted_rep_poincare(spec.genus))]
    return [("variety", rep_poincare(spec.genus))]

