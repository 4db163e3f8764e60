"""Exact graded-dimension arithmetic.

Two value types live here:

* :class:`LaurentPoly` -- a sparse integer Laurent polynomial in ``t``.
* :class:`PeriodicSeries` -- a graded dimension function that is finite except
  for an eventually 4-periodic tail running off to ``+inf`` or ``-inf``.

Grading convention (used everywhere in the package): a summand ``Q[-d]``
contributes ``t^d``.  So ``Q[-3]`` is ``t^3`` and ``Q[4k + 3]`` is
``t^(-4k-3)``; compactly supported cohomology of stacks therefore lives in
negative degrees.

Coefficients are Python ints, so nothing ever overflows or rounds.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Mapping

PERIOD = 4


def _clean(coeffs: Mapping[int, int]) -> dict[int, int]:
    return {int(d): int(c) for d, c in coeffs.items() if c}


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients.

    >>> p = LaurentPoly({0: 1, 2: 1, 3: 2})
    >>> str(p)
    '1 + t^2 + 2t^3'
    >>> (p * LaurentPoly.monomial(-3)).valuation()
    -3
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._coeffs = _clean(coeffs or {})
        self._hash = None

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "LaurentPoly":
        return cls({degree: coeff})

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "LaurentPoly":
        """Sum of ``t^d`` over ``degrees``, repetitions adding up."""
        out: dict[int, int] = {}
        for d in degrees:
            out[d] = out.get(d, 0) + 1
        return cls(out)

    # -- access -----------------------------------------------------------

    def coeff(self, degree: int) -> int:
        return self._coeffs.get(degree, 0)

    def terms(self) -> list[tuple[int, int]]:
        """``(degree, coefficient)`` pairs in ascending degree."""
        return sorted(self._coeffs.items())

    def degrees(self) -> list[int]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self._coeffs)

    def valuation(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no valuation")
        return min(self._coeffs)

    def __iter__(self):
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    # -- ring structure ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out.get(d, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({d: -c for d, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[int, int] = {}
        for (d1, c1), (d2, c2) in product(self._coeffs.items(), other._coeffs.items()):
            out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return LaurentPoly(out)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift")
        result = LaurentPoly({0: 1})
        for _ in range(n):
            result = result * self
        return result

    def shift(self, s: int) -> "LaurentPoly":
        """Multiply by ``t^s`` (the graded effect of the functor ``[-s]``)."""
        return LaurentPoly({d + s: c for d, c in self._coeffs.items()})

    def reflect(self) -> "LaurentPoly":
        """Substitute ``t -> 1/t``."""
        return LaurentPoly({-d: c for d, c in self._coeffs.items()})

    def divmod_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / divisor``; raises if the division leaves a remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO
        lead_d, lead_c = divisor.terms()[-1]
        # any exact quotient has valuation >= this bound
        floor = self.valuation() - divisor.valuation()
        rem = dict(self._coeffs)
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            qd = top - lead_d
            if qd < floor or rem[top] % lead_c:
                break
            q = rem[top] // lead_c
            quot[qd] = q
            for d, dc in divisor._coeffs.items():
                rem[qd + d] = rem.get(qd + d, 0) - q * dc
                if rem[qd + d] == 0:
                    del rem[qd + d]
        if rem:
            raise ValueError(f"{self} is not divisible by {divisor}")
        return LaurentPoly(quot)

    # -- evaluations ------------------------------------------------------

    def eval_at_minus_one(self) -> int:
        """Alternating coefficient sum (the Euler characteristic)."""
        return sum(c if d % 2 == 0 else -c for d, c in self._coeffs.items())

    def __call__(self, x):
        return sum(c * x**d for d, c in self._coeffs.items())

    def is_palindromic(self) -> tuple[bool, Fraction]:
        """Return ``(symmetric, center)`` where ``center = (min + max) / 2``."""
        if not self._coeffs:
            raise ValueError("undefined symmetry: zero polynomial")
        lo, hi = self.valuation(), self.degree()
        sym = all(self.coeff(lo + hi - d) == c for d, c in self._coeffs.items())
        return sym, Fraction(lo + hi, 2)

    # -- comparison & display ----------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self.terms())!r})"

    def __str__(self) -> str:
        return format_poly(self)

    def to_json(self) -> list[list]:
        return [[d, str(c)] for d, c in self.terms()]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls({int(d): int(c) for d, c in data})


T = LaurentPoly.monomial(1)
ONE = LaurentPoly({0: 1})
ZERO = LaurentPoly()


def _power_token(d: int) -> str:
    return f"t^{{{d}}}" if d < 0 else f"t^{d}"


def format_poly(p: LaurentPoly) -> str:
    """Ascending-degree text form with explicit ``t^d`` tokens.

    Negative exponents are braced (``t^{-3}``) so the output is unambiguous.
    """
    if p.is_zero():
        return "0"
    parts = []
    for d, c in p.terms():
        mag = abs(c)
        if d == 0:
            body = str(mag)
        elif mag == 1:
            body = _power_token(d)
        else:
            body = f"{mag}{_power_token(d)}"
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


# -- module-level spellings of the arithmetic -------------------------------

def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def shift(a: LaurentPoly, s: int) -> LaurentPoly:
    return a.shift(s)


def eval_at_minus_one(a: LaurentPoly) -> int:
    return a.eval_at_minus_one()


def is_palindromic(a: LaurentPoly) -> tuple[bool, Fraction]:
    return a.is_palindromic()


# ---------------------------------------------------------------------------
# eventually periodic series
# ---------------------------------------------------------------------------

class PeriodicSeries:
    """Graded dimension function ``transient + periodic tail``.

    The coefficient of ``t^d`` is ``transient.coeff(d)`` plus, when ``d`` lies
    in the tail region, ``pattern[d % 4]``.  The tail region is ``d >= tail_start``
    for ``direction = +1`` and ``d <= tail_start`` for ``direction = -1``.

    Instances are always stored in canonical form:

    * the tail region is as large as possible (``tail_start`` pulled back
      toward the transient until periodicity breaks),
    * the transient has no support inside the tail region,
    * a series whose pattern is zero is finite; it is normalised to
      ``direction = +1`` and ``tail_start`` one past its top degree (0 if empty),
      so finite series compare equal regardless of which pushforward made them.

    With that, equality is literal comparison of the stored fields.
    """

    __slots__ = ("transient", "pattern", "direction", "tail_start")

    def __init__(self, transient: LaurentPoly | None = None, pattern=(0, 0, 0, 0),
                 direction: int = 1, tail_start: int = 0):
        if direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        pattern = tuple(int(c) for c in pattern)
        if len(pattern) != PERIOD:
            raise ValueError("pattern must have exactly 4 entries")
        transient = transient if transient is not None else ZERO
        t, p, dr, s = _canonical(transient, pattern, direction, int(tail_start))
        object.__setattr__(self, "transient", t)
        object.__setattr__(self, "pattern", p)
        object.__setattr__(self, "direction", dr)
        object.__setattr__(self, "tail_start", s)

    def __setattr__(self, name, value):
        raise AttributeError("PeriodicSeries is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "PeriodicSeries":
        return cls(p)

    @classmethod
    def geometric(cls, first_degree: int, direction: int) -> "PeriodicSeries":
        """``sum_{k >= 0} t^(first_degree + 4k * direction)``."""
        pattern = [0] * PERIOD
        pattern[first_degree % PERIOD] = 1
        return cls(ZERO, pattern, direction, first_degree)

    # -- access -----------------------------------------------------------

    def in_tail(self, d: int) -> bool:
        return self.direction * (d - self.tail_start) >= 0

    def coeff(self, d: int) -> int:
        c = self.transient.coeff(d)
        if self.in_tail(d):
            c += self.pattern[d % PERIOD]
        return c

    def window(self, lo: int, hi: int) -> list[int]:
        """Coefficients for degrees ``lo..hi`` inclusive."""
        return [self.coeff(d) for d in range(lo, hi + 1)]

    def is_finite(self) -> bool:
        return not any(self.pattern)

    def as_poly(self) -> LaurentPoly:
        if not self.is_finite():
            raise ValueError("series has an infinite periodic tail")
        return self.transient

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            other = PeriodicSeries(LaurentPoly._coerce(other))
        if not isinstance(other, PeriodicSeries):
            return NotImplemented
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "PeriodicSeries":
        return PeriodicSeries(-self.transient, [-c for c in self.pattern],
                              self.direction, self.tail_start)

    def __sub__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            other = PeriodicSeries(LaurentPoly._coerce(other))
        if not isinstance(other, PeriodicSeries):
            return NotImplemented
        return series_add(self, -other)

    def __mul__(self, other):
        other = LaurentPoly._coerce(other)
        if other is None:
            return NotImplemented
        return series_scale_by_poly(self, other)

    __rmul__ = __mul__

    def shift(self, s: int) -> "PeriodicSeries":
        return series_scale_by_poly(self, LaurentPoly.monomial(s))

    # -- comparison & display ----------------------------------------------

    def _key(self):
        return (self.transient, self.pattern, self.direction, self.tail_start)

    def __eq__(self, other) -> bool:
        if isinstance(other, (LaurentPoly, int)):
            other = PeriodicSeries(LaurentPoly._coerce(other))
        if not isinstance(other, PeriodicSeries):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (f"PeriodicSeries(transient={self.transient!r}, pattern={self.pattern!r}, "
                f"direction={self.direction}, tail_start={self.tail_start})")

    def __str__(self) -> str:
        if self.is_finite():
            return str(self.transient)
        head = [] if self.transient.is_zero() else [str(self.transient)]
        tail_terms = []
        d = self.tail_start
        while len(tail_terms) < 4:
            c = self.pattern[d % PERIOD]
            if c:
                tail_terms.append(format_poly(LaurentPoly.monomial(d, c)))
            d += self.direction
        return " + ".join(head + tail_terms) + " + ..."

    def to_json(self) -> dict:
        return {
            "transient": self.transient.to_json(),
            "pattern": [str(c) for c in self.pattern],
            "direction": self.direction,
            "tail_start": self.tail_start,
        }

    @classmethod
    def from_json(cls, data) -> "PeriodicSeries":
        return cls(LaurentPoly.from_json(data["transient"]),
                   [int(c) for c in data["pattern"]],
                   int(data["direction"]), int(data["tail_start"]))


def _reflect_pattern(pattern) -> tuple[int, ...]:
    return tuple(pattern[(-r) % PERIOD] for r in range(PERIOD))


def _canonical(transient: LaurentPoly, pattern, direction: int, tail_start: int):
    if direction == -1:
        t, p, _, s = _canonical_up(transient.reflect(), _reflect_pattern(pattern), -tail_start)
        if not any(p):
            return t.reflect(), p, 1, _finite_start(t.reflect())
        return t.reflect(), _reflect_pattern(p), -1, -s
    t, p, _, s = _canonical_up(transient, tuple(pattern), tail_start)
    return t, p, 1, s


def _finite_start(t: LaurentPoly) -> int:
    return t.degree() + 1 if t else 0


def _canonical_up(transient: LaurentPoly, pattern, tail_start: int):
    """Canonicalise a series whose tail runs toward ``+inf``."""

    def coeff(d: int) -> int:
        c = transient.coeff(d)
        if d >= tail_start:
            c += pattern[d % PERIOD]
        return c

    if not any(pattern):
        return transient, pattern, 1, _finite_start(transient)
    start = tail_start if transient.is_zero() else max(tail_start, transient.degree() + 1)
    while coeff(start - 1) == pattern[(start - 1) % PERIOD]:
        start -= 1
    low = min(tail_start, transient.valuation()) if transient else tail_start
    new_transient = LaurentPoly({d: coeff(d) for d in range(low, start)})
    return new_transient, pattern, 1, start


def _from_coeff_function(coeff: Callable[[int], int], low: int, start: int, pattern) -> PeriodicSeries:
    """Build an upward series from explicit coefficients on ``[low, start)``."""
    transient = LaurentPoly({d: coeff(d) for d in range(low, start)})
    return PeriodicSeries(transient, pattern, 1, start)


def _reflected(s: PeriodicSeries) -> PeriodicSeries:
    return PeriodicSeries(s.transient.reflect(), _reflect_pattern(s.pattern),
                          -s.direction, -s.tail_start)


def series_add(a: PeriodicSeries, b: PeriodicSeries) -> PeriodicSeries:
    """Coefficientwise sum.  Two infinite tails must point the same way."""
    if a.is_finite() and b.is_finite():
        return PeriodicSeries(a.transient + b.transient)
    if not a.is_finite() and not b.is_finite() and a.direction != b.direction:
        raise ValueError("cannot add series whose tails run in opposite directions")
    direction = b.direction if a.is_finite() else a.direction
    if direction == -1:
        return _reflected(series_add(_reflected(a), _reflected(b)))
    start = max(_tail_or_top(a), _tail_or_top(b))
    low = min(_bottom(a), _bottom(b))
    pattern = [x + y for x, y in zip(a.pattern, b.pattern)]
    return _from_coeff_function(lambda d: a.coeff(d) + b.coeff(d), low, start, pattern)


def _tail_or_top(s: PeriodicSeries) -> int:
    return s.tail_start


def _bottom(s: PeriodicSeries) -> int:
    if s.transient:
        return min(s.transient.valuation(), s.tail_start)
    return s.tail_start


def series_scale_by_poly(s: PeriodicSeries, p: LaurentPoly) -> PeriodicSeries:
    """Exact product ``p * s``."""
    if p.is_zero():
        return PeriodicSeries()
    if s.is_finite():
        return PeriodicSeries(s.transient * p)
    if s.direction == -1:
        return _reflected(series_scale_by_poly(_reflected(s), p.reflect()))
    terms = p.terms()
    pattern = [sum(c * s.pattern[(r - e) % PERIOD] for e, c in terms) for r in range(PERIOD)]
    start = s.tail_start + p.degree()
    low = _bottom(s) + p.valuation()
    return _from_coeff_function(lambda d: sum(c * s.coeff(d - e) for e, c in terms),
                                low, start, pattern)
