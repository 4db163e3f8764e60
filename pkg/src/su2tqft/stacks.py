"""Character stacks of Sigma_g via objects on the classifying stack BSU(2).

On ``BG`` only two kinds of atom occur:

* ``QBG`` -- the constant sheaf.  Compactly supported sections give the
  tail ``t^-3 + t^-7 + t^-11 + ...``; ordinary sections give
  ``1 + t^4 + t^8 + ...`` (the cohomology of ``HP^infinity``).
* ``G(n)`` -- iterated cones starting from ``q_* Q``.  Pulled back to a point
  they look like ``H^*(S^(4n-1))``; both pushforwards give
  ``1 + t^4 + ... + t^(4n-4)``.

The stacky commutator object is ``2 * unit[-3] + V``, so its ``g``-th power
is ``sum_k binom(g, k) 2^(g-k) V_k[-3(g-k)]``.  The stalks of ``V_k`` at 1 and
at -1 are known only for ``k <= 3`` and are shipped as literal tables;
:func:`table_check` guards them against the non-equivariant engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import conv_algebra as ca
from .conv_algebra import FormalSum
from .laurent import ZERO, LaurentPoly, PeriodicSeries

MAX_GENUS = 3
VARIANTS = ("compact", "ordinary")


class UnsupportedGenus(ValueError):
    pass


@dataclass(frozen=True)
class BGAtom:
    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            object.__setattr__(self, "index", 0)
        elif self.kind == "G":
            if self.index < 1:
                raise ValueError("G(n) needs n >= 1")
        else:
            raise ValueError(f"unknown BG atom kind {self.kind!r}")

    def sort_key(self):
        return (self.kind != "Q", self.index)

    @property
    def label(self) -> str:
        return "QBG" if self.kind == "Q" else f"G{self.index}"


QBG = BGAtom("Q")


def G(n: int) -> BGAtom:
    return BGAtom("G", n)


class BGObject(FormalSum):
    __slots__ = ()
    atom_type = BGAtom


def _bg(*terms: tuple[BGAtom, int, int]) -> BGObject:
    return BGObject(list(terms))


def _q_shifts(*shifts: int) -> list[tuple[BGAtom, int, int]]:
    return [(QBG, s, 1) for s in shifts]


# i^* V_k : stalk at the identity
UNIT_TABLE: dict[int, BGObject] = {
    0: _bg((QBG, 0, 1)),
    1: _bg(*_q_shifts(0, -2)),
    2: _bg(*_q_shifts(0, -2, -4, -6), (G(1), -6, 1)),
    3: _bg(*_q_shifts(0, -2, -4, -6, -6, -6, -8, -8), (G(2), -6, 1), (G(2), -8, 1)),
}

# i_{-1}^* V_k : stalk at -1.  For k = 3 the two copies of q_* Q[-6] that the
# connecting map leaves untouched survive next to its G(1)[-6] cone, hence
# multiplicity 3.
MINUS_ONE_TABLE: dict[int, BGObject] = {
    0: BGObject(),
    1: _bg((G(1), 0, 1)),
    2: _bg((G(2), 0, 1), (G(2), -2, 1)),
    3: _bg((G(1), -6, 3), (G(3), 0, 1), (G(3), -2, 1), (G(3), -4, 1)),
}


def q_pullback(a: BGObject) -> LaurentPoly:
    """Graded dimension after pulling back along ``* -> BG``."""
    def table(atom: BGAtom) -> LaurentPoly:
        if atom.kind == "Q":
            return LaurentPoly({0: 1})
        return LaurentPoly({0: 1, 4 * atom.index - 1: 1})
    return a.graded(table)


def _g_sections(n: int) -> LaurentPoly:
    return LaurentPoly.from_degrees(4 * k for k in range(n))


def split_pushforward(a: BGObject) -> tuple[LaurentPoly, LaurentPoly]:
    """Split ``a`` into (finite part from ``G`` atoms, prefactor of the ``QBG`` tail).

    Both pushforwards to a point agree on ``G`` atoms and differ only in which
    tail multiplies the ``QBG`` prefactor.
    """
    finite, prefactor = ZERO, ZERO
    for atom, sh, m in a.terms():
        if atom.kind == "Q":
            prefactor = prefactor + LaurentPoly.monomial(-sh, m)
        else:
            finite = finite + m * _g_sections(atom.index).shift(-sh)
    return finite, prefactor


def tail(variant: str) -> PeriodicSeries:
    """Pushforward of ``QBG``: ``t^-3 + t^-7 + ...`` or ``1 + t^4 + ...``."""
    if variant == "compact":
        return PeriodicSeries.geometric(-3, -1)
    if variant == "ordinary":
        return PeriodicSeries.geometric(0, 1)
    raise ValueError(f"unknown cohomology variant {variant!r}")


def _push(a: BGObject, variant: str) -> PeriodicSeries:
    finite, prefactor = split_pushforward(a)
    return tail(variant) * prefactor + finite


def pi_shriek_bg(a: BGObject) -> PeriodicSeries:
    return _push(a, "compact")


def pi_star_bg(a: BGObject) -> PeriodicSeries:
    return _push(a, "ordinary")


def stacky_F_expansion(g: int) -> list[tuple[int, int, int]]:
    """``(coefficient, k, shift)`` terms of the ``g``-th stacky commutator power."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return [(comb(g, k) * 2 ** (g - k), k, -3 * (g - k)) for k in range(g + 1)]


@dataclass(frozen=True)
class StackCohomology:
    """``finite + prefactor * tail`` together with the assembled series."""

    genus: int
    twisted: bool
    variant: str
    finite: LaurentPoly
    prefactor: LaurentPoly

    @property
    def series(self) -> PeriodicSeries:
        return tail(self.variant) * self.prefactor + self.finite

    def describe(self) -> str:
        if self.prefactor.is_zero():
            return str(self.finite)
        head = "" if self.finite.is_zero() else f"{self.finite} + "
        return f"{head}({self.prefactor}) * T, T = {tail(self.variant)}"


def charstack(g: int, twisted: bool = False, variant: str = "compact") -> StackCohomology:
    if variant not in VARIANTS:
        raise ValueError(f"unknown cohomology variant {variant!r}")
    if g < 0:
        raise ValueError("genus must be nonnegative")
    if g > MAX_GENUS:
        raise UnsupportedGenus(
            f"genus {g} is out of range (0..{MAX_GENUS}): the stalks of V_k are only known for "
            "k <= 3, and no systematic way to compute them for g >= 4 has been found"
        )
    table = MINUS_ONE_TABLE if twisted else UNIT_TABLE
    obj = BGObject()
    for coeff, k, sh in stacky_F_expansion(g):
        obj = obj + coeff * table[k].shift(sh)
    finite, prefactor = split_pushforward(obj)
    return StackCohomology(g, twisted, variant, finite, prefactor)


def charstack_cohomology(g: int, twisted: bool = False, variant: str = "compact") -> PeriodicSeries:
    return charstack(g, twisted, variant).series


def nonequivariant_V(k: int) -> ca.SheafObject:
    """``q_G^* V_k``: the ``k``-th power of ``U1[-3] + E1`` in D^b(SU(2))."""
    v = ca.SheafObject([(ca.U(1), -3, 1), (ca.E(1), 0, 1)])
    return ca.power(v, k)


def table_check(k: int) -> tuple[bool, bool]:
    """Whether the two ``V_k`` tables pull back to the engine's stalks."""
    v = nonequivariant_V(k)
    return (q_pullback(UNIT_TABLE[k]) == ca.stalk_at_one(v),
            q_pullback(MINUS_ONE_TABLE[k]) == ca.stalk_generic(v))

