"""Truncated integer power series in q.

A :class:`Series` holds the exact coefficients of q^0 .. q^T; anything above
the truncation order T is unknown. Constructors cover the two theta functions

    phi(q) = sum_{n in Z} q^(n^2),     psi(q) = sum_{n >= 0} q^(n(n+1)/2),

and the eta-type products E_k = prod_{n >= 1} (1 - q^(kn)).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

from .arith import INT64_MAX, check_int64
from .errors import DomainError, InvariantViolation


@dataclass(frozen=True)
class Series:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise DomainError("a series needs at least the constant coefficient")
        for c in self.coeffs:
            check_int64(c)

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> Series:
        return cls(tuple(int(c) for c in coeffs))

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        if not 0 <= i <= self.truncation:
            raise IndexError(f"coefficient {i} is beyond truncation {self.truncation}")
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> Series:
        if order > self.truncation:
            raise DomainError(f"cannot extend truncation {self.truncation} to {order}")
        return Series(self.coeffs[: order + 1])

    def __add__(self, other: Series) -> Series:
        t = min(self.truncation, other.truncation)
        return Series.of(a + b for a, b in zip(self.coeffs[: t + 1], other.coeffs))

    def __sub__(self, other: Series) -> Series:
        t = min(self.truncation, other.truncation)
        return Series.of(a - b for a, b in zip(self.coeffs[: t + 1], other.coeffs))

    def __mul__(self, other: Series | int) -> Series:
        if isinstance(other, int):
            return Series.of(other * c for c in self.coeffs)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Series:
        if e < 0:
            raise DomainError("negative powers need series division, which is not supported")
        out = one(self.truncation)
        for _ in range(e):
            out = mul(out, self)
        return out

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def one(T: int) -> Series:
    return Series((1,) + (0,) * T)


def _check_order(T: int) -> None:
    if T < 0:
        raise DomainError(f"truncation order must be >= 0, got {T}")


def _check_step(k: int) -> None:
    if k < 1:
        raise DomainError(f"q-power k must be >= 1, got {k}")


def phi(k: int, T: int) -> Series:
    """phi(q^k) to order T."""
    _check_step(k)
    _check_order(T)
    c = [0] * (T + 1)
    c[0] = 1
    for j in range(1, isqrt(T // k) + 1):
        c[k * j * j] = 2
    return Series(tuple(c))


def psi(k: int, T: int) -> Series:
    """psi(q^k) to order T."""
    _check_step(k)
    _check_order(T)
    c = [0] * (T + 1)
    j = 0
    while k * j * (j + 1) // 2 <= T:
        c[k * j * (j + 1) // 2] = 1
        j += 1
    return Series(tuple(c))


def eta_pow(k: int, e: int, T: int) -> Series:
    """E_k^e = prod_{n >= 1} (1 - q^(kn))^e to order T."""
    _check_step(k)
    _check_order(T)
    if e < 1:
        raise DomainError(f"eta exponent must be >= 1, got {e}")
    c = np.zeros(T + 1, dtype=np.int64)
    c[0] = 1
    # Multiply by each (1 - q^s); factors with s > T are 1 at this order.
    for s in range(k, T + 1, k):
        for _ in range(e):
            if np.abs(c).max() > INT64_MAX // 2:
                raise OverflowError("eta power coefficients leave 64-bit range")
            c[s:] = c[s:] - c[: T + 1 - s]
    return Series.of(c.tolist())


def mul(s1: Series, s2: Series) -> Series:
    """Cauchy product truncated at the smaller of the two orders."""
    t = min(s1.truncation, s2.truncation)
    a = s1.coeffs[: t + 1]
    b = s2.coeffs[: t + 1]
    bound = max(map(abs, a)) * max(map(abs, b)) * (t + 1)
    if bound > INT64_MAX:
        # Exact fallback; still refuses results that leave 64-bit range.
        out = [0] * (t + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(t + 1 - i):
                    out[i + j] += ai * b[j]
        return Series.of(out)
    prod = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    return Series.of(prod[: t + 1].tolist())


def product(factors: Sequence[Series]) -> Series:
    out = factors[0]
    for f in factors[1:]:
        out = mul(out, f)
    return out


def shift(s: Series, k: int) -> Series:
    """Multiply by q^k, keeping the truncation order."""
    if k < 0:
        raise DomainError("shift needs k >= 0")
    t = s.truncation
    return Series.of(((0,) * k + s.coeffs)[: t + 1])


def extract(s: Series, stride: int, offset: int) -> Series:
    """Series whose j-th coefficient is the (stride*j + offset)-th of ``s``."""
    if stride < 1:
        raise DomainError(f"stride must be >= 1, got {stride}")
    if offset < 0 or offset > s.truncation:
        raise DomainError(f"offset {offset} outside 0..{s.truncation}")
    return Series(s.coeffs[offset::stride])


def divide_exact(s: Series, k: int) -> Series:
    """Divide every coefficient by k, which must divide each one."""
    out = []
    for i, c in enumerate(s.coeffs):
        q, r = divmod(c, k)
        if r:
            raise InvariantViolation(f"coefficient {i} = {c} is not divisible by {k}")
        out.append(q)
    return Series(tuple(out))


def first_difference(s1: Series, s2: Series) -> int | None:
    """Index of the first coefficient where the series differ, up to the common order."""
    for i, (a, b) in enumerate(zip(s1.coeffs, s2.coeffs)):
        if a != b:
            return i
    return None


def gen_t_prime(form: Sequence[int], T: int) -> Series:
    """psi(q^a) psi(q^b) psi(q^c) psi(q^d): generating function of t'."""
    return product([psi(k, T) for k in form])


def gen_n(form: Sequence[int], T: int) -> Series:
    """phi(q^a) phi(q^b) phi(q^c) phi(q^d): generating function of N."""
    return product([phi(k, T) for k in form])
