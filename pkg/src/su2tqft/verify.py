"""Consistency suite tying the engine to published values and to itself.

Each check returns a :class:`CheckReport`; failures are data, never
exceptions.  Checks are grouped:

``rep``    closed forms vs convolution, Künneth, example polynomials, twisted
           symmetry, algebra laws on random samples
``stack``  V_k table compatibility and character-stack golden values
``k0``     Grothendieck-group recurrences and Euler-characteristic factorisation

Random samples come from ``random.Random(seed)``; the default seed is
:data:`DEFAULT_SEED`, so two runs with the same seed print the same report.
"""

from __future__ import annotations

import random
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from typing import Callable, Iterator

from . import conv_algebra as ca
from . import stacks, surfaces
from .laurent import LaurentPoly, PeriodicSeries

DEFAULT_SEED = 0
SELECTIONS = ("all", "rep", "stack", "k0")
PROPERTY_SAMPLES = 200
K0_SAMPLES = 100


@dataclass(frozen=True)
class CheckReport:
    name: str
    status: str
    detail: str = ""
    group: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return asdict(self)


def _p(coeffs: dict[int, int]) -> LaurentPoly:
    return LaurentPoly(coeffs)


# -- reference values -------------------------------------------------------

EXAMPLE_POLYS = {
    0: _p({0: 1}),
    1: _p({3: 2, 2: 1, 0: 1}),
    2: _p({9: 1, 6: 6, 5: 4, 4: 1, 3: 4, 2: 1, 0: 1}),
}

# (finite part, prefactor of the QBG tail) of the reference decompositions.
STACK_DISPLAY = {
    1: (_p({}), _p({3: 2, 2: 1, 0: 1})),
    2: (_p({6: 1}), _p({0: 1, 2: 1, 3: 4, 4: 1, 5: 4, 6: 5})),
    3: (_p({6: 1, 8: 1, 9: 6, 10: 1, 12: 1}),
        # the reference lists a Q[-6]^14 group after Q[-7]^6; kept literally
        _p({0: 1, 2: 1, 3: 6, 4: 1, 5: 6, 6: 15 + 14, 7: 6, 9: 14})),
}

# The g = 3 reference with its second "Q[-6]^14" read as Q[-8]^14.
STACK_DISPLAY_G3_READING = (STACK_DISPLAY[3][0],
                            _p({0: 1, 2: 1, 3: 6, 4: 1, 5: 6, 6: 15, 7: 6, 8: 14, 9: 14}))

TWISTED_STACK_DISPLAY = {
    1: _p({0: 1}),
    2: _p({0: 1, 2: 1, 3: 4, 4: 1, 6: 1}),
    3: _p({0: 1, 2: 1, 3: 6, 4: 2, 5: 6, 6: 16, 7: 6, 8: 2, 9: 6, 10: 1, 12: 1}),
}

# q^* of the V_k stalks on the non-equivariant side.
QPULL_UNIT = {
    2: _p({0: 1, 2: 1, 4: 1, 6: 2, 9: 1}),
    3: _p({0: 1, 2: 1, 4: 1, 6: 4, 8: 3, 13: 1, 15: 1}),
}
QPULL_MINUS_ONE = {
    2: _p({0: 1, 2: 1, 7: 1, 9: 1}),
    3: _p({0: 1, 2: 1, 4: 1, 6: 3, 9: 3, 11: 1, 13: 1, 15: 1}),
}

WINDOW = (-40, 24)


def display_series(finite: LaurentPoly, prefactor: LaurentPoly, variant: str) -> PeriodicSeries:
    return stacks.tail(variant) * prefactor + finite


# -- helpers ----------------------------------------------------------------

def poly_diff(expected: LaurentPoly, got: LaurentPoly) -> str:
    """Empty if equal, otherwise the first mismatching degree."""
    if expected == got:
        return ""
    for d in sorted(set(expected.degrees()) | set(got.degrees())):
        if expected.coeff(d) != got.coeff(d):
            return f"degree {d}: expected {expected.coeff(d)}, got {got.coeff(d)}"
    return "mismatch"


def series_diffs(expected: PeriodicSeries, got: PeriodicSeries, window=WINDOW) -> list[tuple[int, int, int]]:
    lo, hi = window
    return [(d, e, g) for d, e, g in zip(range(lo, hi + 1), expected.window(lo, hi), got.window(lo, hi))
            if e != g]


def _report(name: str, group: str, failures: list[str], ok_detail: str = "") -> CheckReport:
    if failures:
        return CheckReport(name, "fail", "; ".join(failures[:3]), group)
    return CheckReport(name, "pass", ok_detail, group)


def random_object(rng: random.Random, max_terms: int = 3) -> ca.SheafObject:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        kind = rng.choice("ICUE")
        atom = ca.Atom(kind, rng.randint(1, 5))
        terms.append((atom, rng.randint(-6, 6), rng.randint(1, 3)))
    return ca.SheafObject(terms)


# -- rep checks -------------------------------------------------------------

def check_closed_F(n_max: int = 10) -> CheckReport:
    fails = [f"n={n}" for n in range(n_max + 1)
             if ca.closed_form_F(n) != ca.power(ca.commutator_object(), n)]
    return _report("closed-form F_n = F^n", "rep", fails, f"n <= {n_max}")


def check_closed_S(n_max: int = 10) -> CheckReport:
    fails = [f"n={n}" for n in range(n_max + 1)
             if ca.closed_form_S(n) != ca.power(ca.squaring_object(), n)]
    return _report("closed-form S_n = S^n", "rep", fails, f"n <= {n_max}")


def check_kunneth(g_max: int = 8) -> CheckReport:
    fails = []
    for g in range(g_max + 1):
        d = poly_diff(_p({0: 1, 3: 1}) ** (2 * g), ca.pi_shriek(ca.closed_form_F(g)))
        if d:
            fails.append(f"g={g}: {d}")
    return _report("pi_! F_g = (1+t^3)^(2g)", "rep", fails, f"g <= {g_max}")


def check_examples() -> CheckReport:
    fails = []
    for g, expected in EXAMPLE_POLYS.items():
        d = poly_diff(expected, surfaces.rep_poincare(g))
        if d:
            fails.append(f"g={g}: {d}")
    return _report("example polynomials g=0,1,2", "rep", fails)


def check_rep_closed(g_max: int = 10) -> CheckReport:
    fails = []
    for g in range(1, g_max + 1):
        d = poly_diff(surfaces.rep_poincare_closed(g), surfaces.rep_poincare(g))
        if d:
            fails.append(f"g={g}: {d}")
    return _report("rep closed sum = stalk of F^g", "rep", fails, f"g <= {g_max}")


def check_twisted_symmetry(g_max: int = 8) -> CheckReport:
    fails = []
    for g in range(1, g_max + 1):
        sym, center = surfaces.twisted_rep_poincare(g).is_palindromic()
        if not sym or center * 2 != 6 * g - 3:
            fails.append(f"g={g}: symmetric={sym}, center={center}")
    return _report("twisted palindromic, center (6g-3)/2", "rep", fails, f"g <= {g_max}")


def check_twisted_closed(g_max: int = 10) -> CheckReport:
    fails = []
    for g in range(1, g_max + 1):
        try:
            closed = surfaces.twisted_rep_poincare_closed(g)
        except (ValueError, ArithmeticError) as exc:
            fails.append(f"g={g}: {exc}")
            continue
        d = poly_diff(closed, surfaces.twisted_rep_poincare(g))
        if d:
            fails.append(f"g={g}: {d}")
    return _report("twisted closed form = generic stalk", "rep", fails, f"g <= {g_max}")


def check_laws(seed: int, samples: int = PROPERTY_SAMPLES) -> list[CheckReport]:
    rng = random.Random(seed)
    assoc, comm, unit, mult = [], [], [], []
    one = ca.unit()
    for i in range(samples):
        a, b, c = random_object(rng), random_object(rng), random_object(rng)
        if ca.convolve(a, ca.convolve(b, c)) != ca.convolve(ca.convolve(a, b), c):
            assoc.append(f"sample {i}: {a} | {b} | {c}")
        if ca.convolve(a, b) != ca.convolve(b, a):
            comm.append(f"sample {i}: {a} | {b}")
        if ca.convolve(one, a) != a:
            unit.append(f"sample {i}: {a}")
        if ca.pi_shriek(ca.convolve(a, b)) != ca.pi_shriek(a) * ca.pi_shriek(b):
            mult.append(f"sample {i}: {a} | {b}")
    tag = f"{samples} samples, seed {seed}"
    return [
        _report("associativity", "rep", assoc, tag),
        _report("commutativity", "rep", comm, tag),
        _report("unit law", "rep", unit, tag),
        _report("pi_! multiplicative", "rep", mult, tag),
    ]


# -- stack checks -----------------------------------------------------------

def check_table_compat() -> CheckReport:
    fails = []
    for k in (1, 2, 3):
        v = stacks.nonequivariant_V(k)
        pairs = [
            ("i*", stacks.q_pullback(stacks.UNIT_TABLE[k]), ca.stalk_at_one(v), QPULL_UNIT.get(k)),
            ("i_-1*", stacks.q_pullback(stacks.MINUS_ONE_TABLE[k]), ca.stalk_generic(v),
             QPULL_MINUS_ONE.get(k)),
        ]
        for label, table_side, engine_side, stated in pairs:
            d = poly_diff(table_side, engine_side)
            if d:
                fails.append(f"k={k} {label}: {d}")
            if stated is not None and stated != table_side:
                fails.append(f"k={k} {label}: table vs stated: {poly_diff(stated, table_side)}")
    return _report("q* compatibility of V_k tables", "stack", fails, "k <= 3")


def check_stack_display() -> list[CheckReport]:
    out = []
    for g in (1, 2):
        finite, pref = STACK_DISPLAY[g]
        res = stacks.charstack(g)
        diffs = series_diffs(display_series(finite, pref, "compact"), res.series)
        fails = [f"degree {d}: expected {e}, got {x}" for d, e, x in diffs]
        out.append(_report(f"H_c character stack g={g}", "stack", fails,
                           f"window {WINDOW[0]}..{WINDOW[1]}"))

    # g = 3: report every deviation from the literal display, and require that
    # the deviations are exactly the t^6 / t^8 relocation of the 14.
    res = stacks.charstack(3)
    finite, pref = STACK_DISPLAY[3]
    literal = series_diffs(display_series(finite, pref, "compact"), res.series)
    reading = series_diffs(display_series(*STACK_DISPLAY_G3_READING, "compact"), res.series)
    prefactor_dev = [(d, pref.coeff(d), res.prefactor.coeff(d))
                     for d in sorted(set(pref.degrees()) | set(res.prefactor.degrees()))
                     if pref.coeff(d) != res.prefactor.coeff(d)]
    fails = []
    if reading:
        fails.append(f"engine differs from the Q[-8]^14 reading at {reading[:3]}")
    if res.finite != finite:
        fails.append(f"finite part: {poly_diff(finite, res.finite)}")
    if prefactor_dev != [(6, 29, 15), (8, 0, 14)]:
        fails.append(f"unexpected prefactor deviations {prefactor_dev}")
    detail = ("deviations from literal display: prefactor "
              + ", ".join(f"t^{d}: displayed {e}, engine {x}" for d, e, x in prefactor_dev)
              + f"; {len(literal)} series coefficients differ in window")
    out.append(_report("H_c character stack g=3 (deviations reported)", "stack", fails, detail))

    fails = []
    for g in (1, 2, 3):
        comp, ordn = stacks.charstack(g), stacks.charstack(g, variant="ordinary")
        if (comp.finite, comp.prefactor) != (ordn.finite, ordn.prefactor):
            fails.append(f"g={g}: decompositions differ")
        expected = display_series(comp.finite, comp.prefactor, "ordinary")
        diffs = series_diffs(expected, ordn.series, (-WINDOW[1], -WINDOW[0]))
        if diffs:
            fails.append(f"g={g}: {diffs[:2]}")
    out.append(_report("ordinary = compact with tail replaced", "stack", fails))
    return out


def check_twisted_stacks() -> list[CheckReport]:
    fails, agree = [], []
    for g, expected in TWISTED_STACK_DISPLAY.items():
        comp = stacks.charstack_cohomology(g, twisted=True)
        ordn = stacks.charstack_cohomology(g, twisted=True, variant="ordinary")
        if not comp.is_finite():
            fails.append(f"g={g}: infinite tail")
            continue
        d = poly_diff(expected, comp.as_poly())
        if d:
            fails.append(f"g={g}: {d}")
        if comp != ordn:
            agree.append(f"g={g}")
    return [_report("twisted character stacks g=1,2,3", "stack", fails),
            _report("twisted compact = ordinary", "stack", agree)]


# -- K0 checks --------------------------------------------------------------

def check_k0_recurrences(n_max: int = 12) -> list[CheckReport]:
    e_fail, u_fail, chi_fail = [], [], []
    for n in range(1, n_max + 1):
        prev_e = ca.k0_atom(ca.E(n - 1))
        if ca.k0_atom(ca.E(n)) != prev_e + ca.K0_C:
            e_fail.append(f"n={n}")
        if n >= 2:
            if ca.k0_atom(ca.U(n)) != (-1) ** (n + 1) * ca.K0_C - ca.k0_atom(ca.U(n - 1)):
                u_fail.append(f"n={n}")
        chi_e = ca.stalk_at_one(ca.SheafObject.of(ca.E(n))).eval_at_minus_one()
        chi_u = ca.stalk_at_one(ca.SheafObject.of(ca.U(n))).eval_at_minus_one()
        if chi_e != n + 1 or chi_u != (n - 1) * (-1) ** (n + 1):
            chi_fail.append(f"n={n}: chi(i*E)={chi_e}, chi(i*U)={chi_u}")
    # [U_1] = [C] - [I] from 0 -> j_!Q -> Q -> i_*Q -> 0 must be invisible to every Euler characteristic
    rel = ca.K0_U1 - ca.K0_C + ca.K0_I
    if (rel.chi_stalk_at_one(), rel.chi_stalk_generic(), rel.chi_pi_shriek()) != (0, 0, 0):
        u_fail.append("relation [U1] = [C] - [I] not in the kernel")
    tag = f"n <= {n_max}"
    return [_report("[E_n] = [E_(n-1)] + [C]", "k0", e_fail, tag),
            _report("[U_n] = (-1)^(n+1)[C] - [U_(n-1)]", "k0", u_fail, tag),
            _report("stalk Euler characteristics of E_n, U_n", "k0", chi_fail, tag)]


def check_euler_factorization(seed: int, samples: int = K0_SAMPLES) -> CheckReport:
    rng = random.Random(seed + 1)
    fails = []
    for i in range(samples):
        a = random_object(rng, 4)
        cls = ca.k0_reduce(a)
        got = (ca.stalk_at_one(a).eval_at_minus_one(), ca.stalk_generic(a).eval_at_minus_one(),
               ca.pi_shriek(a).eval_at_minus_one())
        want = (cls.chi_stalk_at_one(), cls.chi_stalk_generic(), cls.chi_pi_shriek())
        if got != want:
            fails.append(f"sample {i}: {a}: {got} != {want}")
    return _report("Euler characteristics factor through K0", "k0", fails,
                   f"{samples} samples, seed {seed}")


# -- suite ------------------------------------------------------------------

def run_suite(selection: str = "all", seed: int = DEFAULT_SEED) -> list[CheckReport]:
    if selection not in SELECTIONS:
        raise ValueError(f"unknown selection {selection!r}; choose from {SELECTIONS}")
    plan: list[tuple[str, Callable[[], list[CheckReport] | CheckReport]]] = [
        ("rep", check_closed_F),
        ("rep", check_closed_S),
        ("rep", check_kunneth),
        ("rep", check_examples),
        ("rep", check_rep_closed),
        ("rep", check_twisted_symmetry),
        ("rep", check_twisted_closed),
        ("rep", lambda: check_laws(seed)),
        ("stack", check_table_compat),
        ("stack", check_stack_display),
        ("stack", check_twisted_stacks),
        ("k0", check_k0_recurrences),
        ("k0", lambda: check_euler_factorization(seed)),
    ]
    reports: list[CheckReport] = []
    for group, fn in plan:
        if selection not in ("all", group):
            continue
        try:
            result = fn()
        except Exception as exc:  # a crashing check is a failing check
            result = CheckReport(getattr(fn, "__name__", "check"), "fail", f"raised {exc!r}", group)
        reports.extend(result if isinstance(result, list) else [result])
    return reports


def format_table(reports: list[CheckReport]) -> str:
    width = max((len(r.name) for r in reports), default=4)
    lines = [f"{'check':<{width}}  {'group':<5}  status  detail"]
    for r in reports:
        lines.append(f"{r.name:<{width}}  {r.group:<5}  {r.status:<6}  {r.detail}")
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} checks passed")
    return "\n".join(lines)


# -- fault injection --------------------------------------------------------

FAULTS: dict[str, tuple[dict, str, Callable[[int], list[int]], str]] = {
    "unit-stalk-U-range": (
        ca.UNIT_STALK, "U", lambda n: [2 * k + n + 1 for k in range(n)],
        "stalk at 1 of U(n) summed to n-1 instead of n-2",
    ),
    "unit-stalk-E-top": (
        ca.UNIT_STALK, "E", lambda n: [2 * k for k in range(n)] + [2 * n + 1],
        "top exponent of the stalk at 1 of E(n) moved from 2n to 2n+1",
    ),
    "generic-stalk-U-offset": (
        ca.GENERIC_STALK, "U", lambda n: [2 * k + n for k in range(n)],
        "generic stalk of U(n) in degrees 2k+n instead of 2k+n-1",
    ),
}


@contextmanager
def inject_fault(name: str) -> Iterator[str]:
    """Temporarily corrupt one functor table entry; yields the fault description."""
    table, kind, replacement, description = FAULTS[name]
    original = table[kind]
    table[kind] = replacement
    try:
        yield description
    finally:
        table[kind] = original
