"""Brute-force representation counters.

These are the ground truth every closed form is checked against, so they use
nothing but direct enumeration of integer points. Two flavours exist:

* scalar counters (``count_n``, ``count_t`` ...) that answer one argument with
  nested Python loops, and
* table builders (``count_n_table`` ...) that enumerate every point below a
  bound once with numpy and histogram the values, for range sweeps.

Both are guarded by a work budget, configurable through ``TRIREP_BUDGET``.
"""

from __future__ import annotations

import os
from math import isqrt
from typing import Iterable, NamedTuple

import numpy as np

from .errors import BudgetExceeded, DomainError, InvariantViolation

DEFAULT_BUDGET = 10**9


def default_budget() -> int:
    raw = os.environ.get("TRIREP_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


class Form(NamedTuple):
    """Coefficients (a, b, c, d) of a diagonal quaternary form."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, value: Iterable[int] | str) -> Form:
        if isinstance(value, str):
            try:
                parts = [int(p) for p in value.replace(" ", "").split(",")]
            except ValueError:
                raise DomainError(f"malformed form {value!r}; expected a,b,c,d") from None
        else:
            parts = [int(p) for p in value]
        if len(parts) != 4:
            raise DomainError(f"a form needs four coefficients, got {len(parts)}")
        if min(parts) < 1:
            raise DomainError(f"form coefficients must be positive, got {parts}")
        return cls(*parts)

    @property
    def total(self) -> int:
        return self.a + self.b + self.c + self.d

    def canonical(self) -> Form:
        return Form(*sorted(self))

    def __str__(self) -> str:
        return ",".join(map(str, self))


def _check_budget(needed: int, budget: int | None) -> None:
    budget = default_budget() if budget is None else budget
    if needed > budget:
        raise BudgetExceeded(needed, budget)


def _square_count(v: int) -> int:
    """Number of integers w with w^2 = v."""
    if v < 0:
        return 0
    r = isqrt(v)
    if r * r != v:
        return 0
    return 1 if r == 0 else 2


# ---------------------------------------------------------------------------
# Scalar counters
# ---------------------------------------------------------------------------


def count_n(form: Iterable[int], m: int, budget: int | None = None) -> int:
    """N(a,b,c,d;m): integer points on a x^2 + b y^2 + c z^2 + d w^2 = m."""
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    # Largest coefficients in the outer loops, smallest resolved last.
    a, b, c, d = sorted(Form.of(form), reverse=True)
    needed = (2 * isqrt(m // a) + 1) * (2 * isqrt(m // b) + 1) * (2 * isqrt(m // c) + 1)
    _check_budget(needed, budget)
    count = 0
    X = isqrt(m // a)
    for x in range(-X, X + 1):
        r1 = m - a * x * x
        Y = isqrt(r1 // b)
        for y in range(-Y, Y + 1):
            r2 = r1 - b * y * y
            Z = isqrt(r2 // c)
            for z in range(-Z, Z + 1):
                r3 = r2 - c * z * z
                if r3 % d == 0:
                    count += _square_count(r3 // d)
    return count


def count_n0(form: Iterable[int], m: int, budget: int | None = None) -> int:
    """N_0(a,b,c,d;m): like ``count_n`` but with every coordinate odd."""
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    a, b, c, d = sorted(Form.of(form), reverse=True)
    needed = (isqrt(m // a) + 1) * (isqrt(m // b) + 1) * (isqrt(m // c) + 1)
    _check_budget(needed, budget)
    # Count positive odd points; each lifts to 16 sign patterns.
    count = 0
    for x in range(1, isqrt(m // a) + 1, 2):
        r1 = m - a * x * x
        for y in range(1, isqrt(r1 // b) + 1, 2):
            r2 = r1 - b * y * y
            for z in range(1, isqrt(r2 // c) + 1, 2):
                r3 = r2 - c * z * z
                if r3 > 0 and r3 % d == 0:
                    w2 = r3 // d
                    w = isqrt(w2)
                    if w * w == w2 and w % 2 == 1:
                        count += 1
    return 16 * count


def _triangular_range(v: int) -> range:
    """Integers x with x(x-1)/2 <= v."""
    k = (1 + isqrt(8 * v + 1)) // 2
    while k * (k - 1) // 2 > v:
        k -= 1
    return range(1 - k, k + 1)


def count_t_direct(form: Iterable[int], n: int, budget: int | None = None) -> int:
    """t(a,b,c,d;n) by enumerating x, y, z, w in Z with weighted x(x-1)/2 parts."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    a, b, c, d = sorted(Form.of(form), reverse=True)
    rx, ry, rz = (_triangular_range(n // k) for k in (a, b, c))
    _check_budget(len(rx) * len(ry) * len(rz), budget)
    count = 0
    for x in rx:
        r1 = n - a * (x * (x - 1) // 2)
        if r1 < 0:
            continue
        for y in _triangular_range(r1 // b):
            r2 = r1 - b * (y * (y - 1) // 2)
            for z in _triangular_range(r2 // c):
                r3 = r2 - c * (z * (z - 1) // 2)
                if r3 % d:
                    continue
                disc = 8 * (r3 // d) + 1
                s = isqrt(disc)
                if s * s == disc:
                    # w(w-1)/2 = r3/d has roots (1 + s)/2 and (1 - s)/2
                    count += len({(1 + s) // 2, (1 - s) // 2})
    return count


def count_t(form: Iterable[int], n: int, budget: int | None = None) -> int:
    """t(a,b,c,d;n) = N_0(a,b,c,d; 8n + a + b + c + d)."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    f = Form.of(form)
    return count_n0(f, 8 * n + f.total, budget)


def count_t_prime(form: Iterable[int], n: int, budget: int | None = None) -> int:
    """t'(a,b,c,d;n), the count over positive integers, as t/16."""
    t = count_t(form, n, budget)
    if t % 16:
        raise InvariantViolation(f"t({Form.of(form)};{n}) = {t} is not a multiple of 16")
    return t // 16


# ---------------------------------------------------------------------------
# Range tables
# ---------------------------------------------------------------------------


def _histogram(axes: list[tuple[np.ndarray, np.ndarray]], M: int, budget: int | None) -> np.ndarray:
    """Count points of a product set by value.

    Each axis is (values, multiplicities) for one coordinate. The first three
    axes are expanded into a dense grid; the last is swept value by value.
    """
    (v1, w1), (v2, w2), (v3, w3), (v4, w4) = axes
    _check_budget(len(v1) * len(v2) * len(v3) * max(len(v4), 1), budget)
    out = np.zeros(M + 1, dtype=np.int64)
    if not (len(v1) and len(v2) and len(v3) and len(v4)):
        return out
    vals = (v1[:, None, None] + v2[None, :, None] + v3[None, None, :]).ravel()
    mult = (w1[:, None, None] * w2[None, :, None] * w3[None, None, :]).ravel()
    keep = vals <= M
    vals, mult = vals[keep], mult[keep]
    for v, w in zip(v4.tolist(), w4.tolist()):
        sel = vals + v <= M
        out += w * np.bincount(vals[sel] + v, weights=mult[sel], minlength=M + 1).astype(np.int64)
    return out


def _square_axis(k: int, M: int, odd: bool = False) -> tuple[np.ndarray, np.ndarray]:
    top = isqrt(M // k)
    xs = np.arange(1 if odd else 0, top + 1, 2 if odd else 1, dtype=np.int64)
    mult = np.where(xs == 0, 1, 2).astype(np.int64)
    return k * xs * xs, mult


def count_n_table(form: Iterable[int], m_max: int, budget: int | None = None) -> np.ndarray:
    """Array of N(form; m) for m = 0 .. m_max."""
    if m_max < 0:
        raise DomainError(f"m_max must be >= 0, got {m_max}")
    f = sorted(Form.of(form), reverse=True)
    return _histogram([_square_axis(k, m_max) for k in f], m_max, budget)


def count_n0_table(form: Iterable[int], m_max: int, budget: int | None = None) -> np.ndarray:
    """Array of N_0(form; m) for m = 0 .. m_max."""
    if m_max < 0:
        raise DomainError(f"m_max must be >= 0, got {m_max}")
    f = sorted(Form.of(form), reverse=True)
    return _histogram([_square_axis(k, m_max, odd=True) for k in f], m_max, budget)


def count_t_table(form: Iterable[int], n_max: int, budget: int | None = None) -> np.ndarray:
    """Array of t(form; n) for n = 0 .. n_max, read off N_0 at 8n + a + b + c + d."""
    f = Form.of(form)
    n0 = count_n0_table(f, 8 * n_max + f.total, budget)
    return n0[f.total :: 8][: n_max + 1].copy()


def count_t_direct_table(form: Iterable[int], n_max: int, budget: int | None = None) -> np.ndarray:
    """Array of t(form; n) for n = 0 .. n_max by enumerating triangular parts over Z."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    axes = []
    for k in sorted(Form.of(form), reverse=True):
        r = _triangular_range(n_max // k)
        xs = np.arange(r.start, r.stop, dtype=np.int64)
        axes.append((k * (xs * (xs - 1) // 2), np.ones_like(xs)))
    return _histogram(axes, n_max, budget)
