"""Exact integer arithmetic: factorization, divisor sums, Kronecker symbols.

Everything here is a pure function of its arguments. The smallest-prime-factor
sieve is built lazily on first use and is read-only afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator

import numpy as np

from .errors import DomainError, InvariantViolation

INT64_MAX = 2**63 - 1
SIEVE_LIMIT = 1 << 20


def check_int64(value: int) -> int:
    """Raise OverflowError unless ``value`` fits a signed 64-bit integer."""
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise OverflowError(f"{value} does not fit in a signed 64-bit integer")
    return value


def exact_div(num: int, den: int) -> int:
    """``num // den``, raising InvariantViolation when the division is not exact."""
    q, r = divmod(num, den)
    if r:
        raise InvariantViolation(f"{num} is not divisible by {den}")
    return q


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)


@lru_cache(maxsize=1)
def _spf_sieve() -> list[int]:
    spf = np.arange(SIEVE_LIMIT, dtype=np.int64)
    for p in range(2, isqrt(SIEVE_LIMIT - 1) + 1):
        if spf[p] == p:
            tail = spf[p * p :: p]
            tail[tail == np.arange(p * p, SIEVE_LIMIT, p)] = p
    return spf.tolist()


def factorize(n: int) -> Factorization:
    """Prime factorization of a positive integer, primes ascending."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    check_int64(n)
    factors: list[tuple[int, int]] = []
    m = n
    if m < SIEVE_LIMIT:
        spf = _spf_sieve()
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        return Factorization(n, tuple(factors))

    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def divisors(n: int) -> list[int]:
    return factorize(n).divisors()


def decompose(n: int) -> tuple[int, int, int]:
    """Split ``n = 2**alpha * 3**beta * n1`` with gcd(n1, 6) = 1."""
    if n < 1:
        raise DomainError(f"decompose needs n >= 1, got {n}")
    alpha = beta = 0
    while n % 2 == 0:
        n //= 2
        alpha += 1
    while n % 3 == 0:
        n //= 3
        beta += 1
    return alpha, beta, n


def remove_power(n: int, p: int) -> tuple[int, int]:
    """Return (e, m) with n = p**e * m and p not dividing m."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


# ---------------------------------------------------------------------------
# Divisor sums
# ---------------------------------------------------------------------------


def sigma(x: int) -> int:
    """Sum of the positive divisors of x; 0 when x <= 0."""
    if x <= 0:
        return 0
    total = 1
    for p, e in factorize(x):
        total *= (p ** (e + 1) - 1) // (p - 1)
    return check_int64(total)


def sigma_div(n: int, q: int) -> int:
    """sigma(n/q), taken as 0 when q does not divide n."""
    if q < 1:
        raise DomainError(f"sigma_div needs q >= 1, got {q}")
    if n % q:
        return 0
    return sigma(n // q)


def kronecker(a: int, m: int) -> int:
    """The Kronecker symbol (a/m), defined for every pair of integers."""
    if m == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if m < 0:
        m = -m
        if a < 0:
            result = -1
    if m % 2 == 0:
        if a % 2 == 0:
            return 0
        v, m = remove_power(m, 2)
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # m is now odd and positive: Jacobi symbol
    a %= m
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


@dataclass(frozen=True)
class TwistedSums:
    A: int
    B: int
    C: int
    D: int


def twisted_sums(n: int) -> TwistedSums:
    """The four character-twisted divisor sums A, B, C, D of n.

    A(n) = sum d (12 / (n/d))          B(n) = sum d (-3/d) (-4 / (n/d))
    C(n) = sum d (-3 / (n/d)) (-4/d)   D(n) = sum d (12/d)
    """
    if n < 1:
        raise DomainError(f"twisted_sums needs n >= 1, got {n}")
    A = B = C = D = 0
    for d in divisors(n):
        e = n // d
        A += d * kronecker(12, e)
        B += d * kronecker(-3, d) * kronecker(-4, e)
        C += d * kronecker(-3, e) * kronecker(-4, d)
        D += d * kronecker(12, d)
    return TwistedSums(A, B, C, D)


def chi3_divisor_sum(m: int) -> int:
    """sum over d | m of d * (3/d)."""
    return sum(d * kronecker(3, d) for d in divisors(m))


def reduced_a(m: int) -> int:
    """A(m) for m prime to 6, computed as (3/m) * sum_{d|m} d (3/d)."""
    if m < 1 or m % 2 == 0 or m % 3 == 0:
        raise DomainError(f"reduced_a needs gcd(m, 6) = 1, got {m}")
    return kronecker(3, m) * chi3_divisor_sum(m)


# ---------------------------------------------------------------------------
# Lattice sums
# ---------------------------------------------------------------------------


def _square_root(v: int) -> int | None:
    if v < 0:
        return None
    r = isqrt(v)
    return r if r * r == v else None


def s_m(m: int, n: int) -> int:
    """Sum of r over all (r, s) in Z^2 with n = r^2 + m s^2 and r = 1 mod 4."""
    if m not in (2, 4):
        raise DomainError(f"s_m needs m in {{2, 4}}, got {m}")
    if n < 1 or n % 2 == 0:
        raise DomainError(f"s_m needs a positive odd n, got {n}")
    total = 0
    s = 0
    while m * s * s <= n:
        r = _square_root(n - m * s * s)
        if r is not None:
            s_count = 1 if s == 0 else 2
            for rr in {r, -r}:
                if rr % 4 == 1:
                    total += rr * s_count
        s += 1
    return total


def s_cap(n: int) -> int:
    """sum over d | n of (n/d) * (2/d), for odd n."""
    if n < 1 or n % 2 == 0:
        raise DomainError(f"s_cap needs a positive odd n, got {n}")
    return sum((n // d) * kronecker(2, d) for d in divisors(n))


def c_coeff(n: int) -> int:
    """Coefficient of q^n in q * prod (1 - q^(6k))^4, from its lattice-sum form.

    c(n) = 1/3 * sum (-1)^a a over 4n = a^2 + 3b^2 with a = 2 (mod 3) and
    b = a + 2 (mod 4).
    """
    if n < 1:
        raise DomainError(f"c_coeff needs n >= 1, got {n}")
    target = 4 * n
    total = 0
    b = 0
    while 3 * b * b <= target:
        a = _square_root(target - 3 * b * b)
        if a is not None:
            for bb in {b, -b}:
                for aa in {a, -a}:
                    if aa % 3 == 2 and (bb - aa - 2) % 4 == 0:
                        total += -aa if aa % 2 else aa
        b += 1
    return exact_div(total, 3)
