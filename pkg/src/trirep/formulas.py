"""Closed-form evaluators for t(a,b,c,d;n) and N(a,b,c,d;m).

The registry is keyed by the sorted coefficient tuple; both t and N are
symmetric in the coefficients, so callers may pass any ordering. Rational
prefactors are applied with :func:`exact_div`, so a formula that would produce
a fraction raises instead of rounding.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from math import isqrt
from typing import Callable, Iterable, Literal

from .arith import (
    c_coeff,
    chi3_divisor_sum,
    decompose,
    divisors,
    exact_div,
    kronecker,
    remove_power,
    s_cap,
    s_m,
    sigma,
    sigma_div,
    twisted_sums,
)
from .errors import DomainError, UnsupportedForm
from .oracle import Form, count_n

Quantity = Literal["t", "N"]
Status = Literal["theorem", "cited-lemma", "conjecture"]


@dataclass(frozen=True)
class FormulaEntry:
    quantity: Quantity
    form: Form
    domain: Callable[[int], bool]
    evaluator: Callable[[int], int]
    source: str
    status: Status = "theorem"
    domain_text: str = "all"

    def __call__(self, n: int) -> int:
        if not self.domain(n):
            raise DomainError(f"{self.quantity}({self.form};{n}) is outside {self.domain_text}")
        return self.evaluator(n)


def _always(n: int) -> bool:
    return n >= 0


def _positive(n: int) -> bool:
    return n >= 1


def _residues(modulus: int, *classes: int) -> Callable[[int], bool]:
    allowed = frozenset(classes)
    return lambda m: m >= 1 and m % modulus in allowed


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


# ---------------------------------------------------------------------------
# t(a,b,c,d;n)
# ---------------------------------------------------------------------------


def t_1111(n: int) -> int:
    return 16 * sigma(2 * n + 1)


def t_1122(n: int) -> int:
    total = sum(d - _sign((d - 1) // 2) for d in divisors(4 * n + 3))
    return 16 * exact_div(total, 4)


def t_1133(n: int, even_constant: int = 16) -> int:
    """``even_constant`` is 16; the published statement prints 4 (see ERRATA)."""
    alpha, _, n1 = decompose(n + 1)
    if n % 2 == 0:
        return even_constant * sigma(n1)
    return 2 ** (alpha + 4) * sigma(n1)


def t_1339(n: int) -> int:
    alpha, _, n1 = decompose(n + 2)
    r = n % 6
    if r in (2, 5):
        return 0
    if r == 1:
        return 16 * sigma(n1)
    if r == 4:
        return 2 ** (alpha + 4) * sigma(n1)
    if r == 3:
        return 8 * sigma(n1)
    return 2 ** (alpha + 3) * sigma(n1)


def _three_adic_branch(m: int) -> int:
    """2 (3^(beta-1) (3/n1) - 1) sum_{d|n1} d (3/d) where m = 3^beta n1, 3 not dividing n1."""
    beta, n1 = remove_power(m, 3)
    if beta < 1:
        raise DomainError(f"{m} is not divisible by 3")
    return 2 * (3 ** (beta - 1) * kronecker(3, n1) - 1) * chi3_divisor_sum(n1)


def t_1399(n: int) -> int:
    m = 4 * n + 11
    r = n % 3
    if r == 2:
        return 0
    if r == 0:
        return exact_div(4 * chi3_divisor_sum(m), 3)
    return _three_adic_branch(m)


def t_1139(n: int) -> int:
    m = 4 * n + 7
    r = n % 3
    if r == 0:
        return -exact_div(8 * chi3_divisor_sum(m), 3)
    if r == 1:
        return exact_div(8 * chi3_divisor_sum(m), 3)
    return _three_adic_branch(m)


def t_1144(n: int) -> int:
    m = 4 * n + 5
    return 2 * (sigma(m) + _sign(n) * s_m(4, m))


def t_1444(n: int) -> int:
    m = 8 * n + 13
    return exact_div(sigma(m) - 3 * s_m(4, m), 2)


def t_1224(n: int) -> int:
    m = 8 * n + 9
    return sigma(m) - s_m(4, m)


def t_1244(n: int) -> int:
    m = 8 * n + 11
    return -sum(d * kronecker(2, d) for d in divisors(m)) - s_m(2, m)


def t_1199(n: int) -> int:
    m = 2 * n + 5
    if n % 3 == 0:
        return exact_div(8 * sigma(m), 3)
    if n % 9 == 2:
        return 16 * sigma_div(m, 9)
    if n % 9 in (5, 8):
        return 0
    return exact_div(8 * (sigma(m) - c_coeff(m)), 3)


def t_1999(n: int) -> int:
    m = 2 * n + 7
    if n % 9 == 1:
        return 16 * sigma_div(m, 9)
    if n % 9 in (2, 4, 5, 7, 8):
        return 0
    return exact_div(4 * (sigma(m) - c_coeff(m)), 3)


def t_1119(n: int) -> int:
    m = 2 * n + 3
    r = n % 3
    if r == 0:
        return 4 * sigma(m) + 12 * sigma_div(m, 9)
    if r == 1:
        return 8 * sigma(m)
    return 4 * (sigma(m) - c_coeff(m))


def t_conjectured_1134(n: int) -> int:
    """Conjectured closed form for t(1,1,3,4;n).

    With 8n + 9 = 3^beta n1, 3 not dividing n1:
    1/2 (3^(beta+1) (3/n1) - 1) sum_{d|n1} d (3/d)
        - sum (-1)^((a-1)/2) a over a, b >= 1, a odd, 4(8n + 9) = a^2 + 3b^2.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    m = 8 * n + 9
    beta, n1 = remove_power(m, 3)
    head = exact_div((3 ** (beta + 1) * kronecker(3, n1) - 1) * chi3_divisor_sum(n1), 2)
    target = 4 * m
    lattice = 0
    a = 1
    while a * a < target:
        rest = target - a * a
        if rest % 3 == 0:
            b2 = rest // 3
            b = _isqrt_exact(b2)
            if b:
                lattice += _sign((a - 1) // 2) * a
        a += 2
    return head - lattice


def _isqrt_exact(v: int) -> int | None:
    r = isqrt(v)
    return r if r * r == v else None


# ---------------------------------------------------------------------------
# N(a,b,c,d;m)
# ---------------------------------------------------------------------------


def n_1111(m: int) -> int:
    return 8 * sum(d for d in divisors(m) if d % 4)


def _abcd(m: int) -> tuple[int, int, int, int]:
    ts = twisted_sums(m)
    return ts.A, ts.B, ts.C, ts.D


def _n_one_three_nine(m: int, unit_scale: int, two_scale: int) -> int:
    """Shared shape of the (1,3,9,9) and (1,1,3,9) formulas.

    For m = 0 mod 3 the value is 2A + 2B - C - D at m/3; otherwise it is
    scale * (2A - 2B/3 + C - D/3) at m with a residue-dependent scale.
    """
    if m % 3 == 0:
        A, B, C, D = _abcd(m // 3)
        return 2 * A + 2 * B - C - D
    scale = unit_scale if m % 3 == 1 else two_scale
    A, B, C, D = _abcd(m)
    return scale * exact_div(6 * A - 2 * B + 3 * C - D, 3)


def n_1399(m: int) -> int:
    return _n_one_three_nine(m, 1, 0)


def n_1139(m: int) -> int:
    return _n_one_three_nine(m, 2, 1)


def n_1144(m: int) -> int:
    return 4 * sigma(m // 2)


def n_1_1_16_16(m: int) -> int:
    h = m // 2
    return 2 * sigma(h) + 2 * kronecker(2, h) * s_m(4, h)


def n_1444(m: int) -> int:
    return 2 * sigma(m)


def n_1_4_16_16(m: int) -> int:
    return exact_div(sigma(m) + (2 + _sign((m - 1) // 4)) * s_m(4, m), 2)


def n_sigma_plus_s4(m: int) -> int:
    return sigma(m) + s_m(4, m)


def n_twice_sigma(m: int) -> int:
    return 2 * sigma(m)


def n_1248(m: int) -> int:
    return sigma(m) + _sign((m - 1) // 4) * s_m(4, m)


def n_1_2_4_16(m: int) -> int:
    return s_cap(m) + s_m(2, m)


def n_1244(m: int) -> int:
    return 2 * s_cap(m)


def n_1199(m: int) -> int:
    r = m % 6
    if r in (2, 4):
        return 4 * sigma(m) - 8 * sigma_div(m, 2)
    if r == 5:
        return exact_div(4 * sigma(m), 3)
    if r == 0:
        return 8 * sigma_div(m, 9) - 32 * sigma_div(m, 36)
    raise DomainError(f"N(1,1,9,9;{m}) has no closed form for m = {r} mod 6")


def n_1999(m: int) -> int:
    r = m % 6
    if r == 3:
        return 8 * sigma_div(m, 9)
    if r == 4:
        return 2 * sigma(m) - 4 * sigma_div(m, 2)
    if r == 0:
        return 8 * sigma_div(m, 9) - 32 * sigma_div(m, 36)
    raise DomainError(f"N(1,9,9,9;{m}) has no closed form for m = {r} mod 6")


def n_1_4_9_36_family(m: int) -> int:
    """Common value of the seven (1,4,9,36)-type forms for 4 | m."""
    r = m % 12
    if r == 0:
        return 8 * sigma_div(m, 36) - 32 * sigma_div(m, 144)
    base = 4 * sigma_div(m, 4) - 16 * sigma_div(m, 16)
    if r == 4:
        return exact_div(base + 8 * c_coeff(m // 4), 3)
    if r == 8:
        return exact_div(base, 3)
    raise DomainError(f"this family needs 4 | m, got {m}")


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


def _t(form, evaluator, source, status: Status = "theorem") -> FormulaEntry:
    return FormulaEntry("t", Form.of(form).canonical(), _always, evaluator, source, status)


def _n(form, evaluator, source, domain=_positive, domain_text="m >= 1") -> FormulaEntry:
    return FormulaEntry("N", Form.of(form).canonical(), domain, evaluator, source, "cited-lemma", domain_text)


T_FORMULAS: dict[Form, FormulaEntry] = {
    e.form: e
    for e in [
        _t((1, 1, 1, 1), t_1111, "Legendre: t' = sigma(2n+1)"),
        _t((1, 1, 2, 2), t_1122, "Williams 2003: t' = 1/4 sum_{d|4n+3} (d - (-1)^((d-1)/2))"),
        _t((1, 1, 3, 3), t_1133, "via N(1,1,3,3) and Liouville's identity (even-n constant corrected)"),
        _t((1, 3, 3, 9), t_1339, "reduction to t(1,1,3,3) by 3-divisibility of coordinates"),
        _t((1, 3, 9, 9), t_1399, "t = 2/5 N(1,3,9,9;8n+22) with the A/B/C/D evaluation"),
        _t((1, 1, 3, 9), t_1139, "t = 2/5 N(1,1,3,9;8n+14) with the A/B/C/D evaluation"),
        _t((1, 1, 4, 4), t_1144, "odd-coordinate inclusion-exclusion over (1,1,4,4)-type N"),
        _t((1, 4, 4, 4), t_1444, "odd-coordinate inclusion-exclusion over (1,4,4,4)-type N"),
        _t((1, 2, 2, 4), t_1224, "odd-coordinate inclusion-exclusion over (1,2,2,4)-type N"),
        _t((1, 2, 4, 4), t_1244, "odd-coordinate inclusion-exclusion over (1,2,4,4)-type N"),
        _t((1, 1, 9, 9), t_1199, "inclusion-exclusion over (1,4,9,36)-type N and c(n)"),
        _t((1, 9, 9, 9), t_1999, "halving relation with t(1,1,9,9;n+1)"),
        _t((1, 1, 1, 9), t_1119, "3-adic splitting of odd four-square representations"),
    ]
}

CONJECTURES: dict[Form, FormulaEntry] = {
    Form(1, 1, 3, 4): _t((1, 1, 3, 4), t_conjectured_1134, "conjectured; checked for n <= 1000", "conjecture"),
}

_ONE_THREE_NINE = "Alaca 2009 (coefficients 1, 3, 9)"
_NINETEEN = "Alaca-Alaca-Lemire-Williams 2007 (nineteen forms)"
_JACOBI_ID = "Alaca-Alaca-Lemire-Williams 2007 (Jacobi's identity)"
_FOUR_36 = "Alaca 2011 (coefficients 1, 4, 9, 36)"

N_FORMULAS: list[FormulaEntry] = [
    _n((1, 1, 1, 1), n_1111, "Jacobi 1828: 8 sum_{d|m, 4 does not divide d} d"),
    _n((1, 3, 9, 9), n_1399, _ONE_THREE_NINE),
    _n((1, 1, 3, 9), n_1139, _ONE_THREE_NINE),
    _n((1, 1, 4, 4), n_1144, _NINETEEN, _residues(4, 2), "m = 2 mod 4"),
    _n((1, 1, 16, 16), n_1_1_16_16, _JACOBI_ID, _residues(8, 2), "m = 2 mod 8"),
    _n((1, 1, 4, 16), n_1_1_16_16, _JACOBI_ID, _residues(8, 2), "m = 2 mod 8"),
    _n((1, 4, 4, 4), n_1444, _NINETEEN, _residues(4, 1), "m = 1 mod 4"),
    _n((1, 4, 16, 16), n_1_4_16_16, _JACOBI_ID, _residues(4, 1), "m = 1 mod 4"),
    _n((1, 4, 4, 16), n_sigma_plus_s4, _JACOBI_ID, _residues(4, 1), "m = 1 mod 4"),
    _n((1, 2, 2, 4), n_twice_sigma, _NINETEEN, _residues(2, 1), "m odd"),
    _n((1, 2, 2, 16), n_sigma_plus_s4, _JACOBI_ID, _residues(8, 1), "m = 1 mod 8"),
    _n((1, 8, 8, 16), n_sigma_plus_s4, _JACOBI_ID, _residues(8, 1), "m = 1 mod 8"),
    _n((1, 2, 8, 16), n_sigma_plus_s4, _JACOBI_ID, _residues(8, 1), "m = 1 mod 8"),
    _n((1, 2, 4, 8), n_1248, _JACOBI_ID, _residues(4, 1), "m = 1 mod 4"),
    _n((1, 4, 8, 8), n_1248, _JACOBI_ID, _residues(4, 1), "m = 1 mod 4"),
    _n((1, 2, 4, 16), n_1_2_4_16, _JACOBI_ID, _residues(8, 1, 3), "m = 1, 3 mod 8"),
    _n((1, 2, 16, 16), n_1_2_4_16, _JACOBI_ID, _residues(8, 1, 3), "m = 1, 3 mod 8"),
    _n((1, 2, 4, 4), n_1244, "Alaca-Alaca-Lemire-Williams 2009", _residues(2, 1), "m odd"),
    _n((1, 1, 9, 9), n_1199, _ONE_THREE_NINE, _residues(6, 0, 2, 4, 5), "m = 0, 2, 4, 5 mod 6"),
    _n((1, 9, 9, 9), n_1999, _ONE_THREE_NINE, _residues(6, 0, 3, 4), "m = 0, 3, 4 mod 6"),
] + [
    _n(f, n_1_4_9_36_family, _FOUR_36, _residues(4, 0), "4 | m")
    for f in [(1, 1, 36, 36), (1, 4, 36, 36), (1, 1, 9, 36), (1, 4, 9, 9), (1, 4, 9, 36), (4, 4, 9, 9), (4, 4, 9, 36)]
]


def supported_forms() -> list[Form]:
    return list(T_FORMULAS)


def lookup_t(form: Iterable[int], include_conjectures: bool = False) -> FormulaEntry:
    key = Form.of(form).canonical()
    if key in T_FORMULAS:
        return T_FORMULAS[key]
    if include_conjectures and key in CONJECTURES:
        return CONJECTURES[key]
    raise UnsupportedForm(Form.of(form))


def t_formula(form: Iterable[int], n: int, include_conjectures: bool = False) -> int:
    """Closed-form value of t(a,b,c,d;n) for a supported form."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return lookup_t(form, include_conjectures)(n)


def n_entries(form: Iterable[int]) -> list[FormulaEntry]:
    key = Form.of(form).canonical()
    return [e for e in N_FORMULAS if e.form == key]


def n_formula(form: Iterable[int], m: int) -> int:
    """Closed-form value of N(a,b,c,d;m) where a registered formula covers m."""
    entries = n_entries(form)
    if not entries:
        raise UnsupportedForm(Form.of(form))
    for e in entries:
        if e.domain(m):
            return e.evaluator(m)
    raise DomainError(f"no registered formula for N({Form.of(form)};{m}); domain is {entries[0].domain_text}")


# ---------------------------------------------------------------------------
# Structural relations
# ---------------------------------------------------------------------------


def capacity_constant(form: Iterable[int]) -> int:
    """16 + 4 i1 (i1 - 1) i2 + 8 i1 i3, where ij counts coefficients equal to j.

    Disagrees with brute force at (1,1,1,1), which gives 24; see
    :func:`capacity_ratio` and ERRATA.
    """
    f = Form.of(form)
    if f.total > 8:
        raise DomainError(f"capacity constant needs a + b + c + d <= 8, got {f.total}")
    i1, i2, i3 = f.count(1), f.count(2), f.count(3)
    return 16 + 4 * i1 * (i1 - 1) * i2 + 8 * i1 * i3


def capacity_ratio(form: Iterable[int], budget: int | None = None) -> int:
    """Brute-force ratio N(...; a+b+c+d) / t'(...; 0), with the 2n+2 correction at sum 8.

    t'(0) = 1 for every form, so this is the N count itself.
    """
    f = Form.of(form)
    if f.total > 8:
        raise DomainError(f"capacity ratio needs a + b + c + d <= 8, got {f.total}")
    value = count_n(f, f.total, budget)
    if f.total == 8:
        value -= count_n(f, 2, budget)
    return value


def inclusion_exclusion_terms(form: Iterable[int]) -> list[tuple[int, Form]]:
    """The 16 signed forms whose N-counts at 8n + a + b + c + d sum to t(form; n).

    Each subset of coordinates is scaled by 4; the sign is (-1)^(subset size).
    """
    f = Form.of(form)
    terms = []
    for mask in product((0, 1), repeat=4):
        scaled = Form(*(k * 4 if s else k for k, s in zip(f, mask)))
        terms.append((_sign(sum(mask)), scaled))
    return terms


def t_inclusion_exclusion(form: Iterable[int], n: int, budget: int | None = None) -> int:
    """t(form; n) as the alternating sum of 16 brute-force N counts."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    f = Form.of(form)
    m = 8 * n + f.total
    return sum(sign * count_n(g, m, budget) for sign, g in inclusion_exclusion_terms(f))


def random_small_forms(count: int, seed: int = 2024, max_coeff: int = 4) -> list[Form]:
    """``count`` distinct forms with coefficients in [1, max_coeff], reproducible from ``seed``."""
    pool = list(product(range(1, max_coeff + 1), repeat=4))
    if count > len(pool):
        raise DomainError(f"only {len(pool)} forms have coefficients <= {max_coeff}")
    return [Form(*f) for f in random.Random(seed).sample(pool, count)]


# ---------------------------------------------------------------------------
# Published statements that brute force contradicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Erratum:
    key: str
    description: str
    published: Callable[[int], int] | int
    corrected: Callable[[int], int] | int
    form: Form
    details: dict = field(default_factory=dict)


ERRATA: dict[str, Erratum] = {
    "t1133-even-branch": Erratum(
        key="t1133-even-branch",
        description="t(1,1,3,3;n) for even n: published 4*sigma(n1), brute force requires 16*sigma(n1)",
        published=lambda n: t_1133(n, even_constant=4),
        corrected=t_1133,
        form=Form(1, 1, 3, 3),
    ),
    "capacity-1111": Erratum(
        key="capacity-1111",
        description="capacity constant C(1,1,1,1): published formula gives 16, brute force ratio is 24",
        published=16,
        corrected=24,
        form=Form(1, 1, 1, 1),
    ),
}
