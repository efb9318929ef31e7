"""
Elementary arithmetic helpers shared by the core modules.

Thin wrappers over sympy's number theory plus a couple of numpy sieves
sized for the coefficient ranges used here.
"""

import math
import logging
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
import sympy

from core.errors import DomainError

logger = logging.getLogger(__name__)


def require_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
        raise DomainError(f"{p!r} is not a prime")
    return p


@lru_cache(maxsize=4096)
def totient(n: int) -> int:
    return int(sympy.totient(n))


@lru_cache(maxsize=4096)
def mobius(n: int) -> int:
    return int(sympy.mobius(n))


@lru_cache(maxsize=4096)
def divisors(n: int) -> Tuple[int, ...]:
    return tuple(int(d) for d in sympy.divisors(n))


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def lcm_list(values: List[int]) -> int:
    result = 1
    for v in values:
        result = result * v // math.gcd(result, v)
    return result


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """Return (p, l) with n = p**l, or None when n is not a prime power."""
    if n < 2:
        return None
    factors = sympy.factorint(n)
    if len(factors) != 1:
        return None
    (p, l), = factors.items()
    return int(p), int(l)


def legendre(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion; p an odd prime."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def smallest_prime_factor_sieve(n_max: int) -> np.ndarray:
    """spf[n] = least prime dividing n for 2 <= n <= n_max; spf[0] = spf[1] = 0."""
    spf = np.zeros(n_max + 1, dtype=np.int64)
    if n_max < 2:
        return spf
    for p in sympy.sieve.primerange(2, math.isqrt(n_max) + 1):
        block = spf[p * p::p]
        block[block == 0] = p
    rest = np.nonzero(spf == 0)[0]
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def prime_power_base(n_max: int) -> np.ndarray:
    """base[n] = p if n = p**l with l >= 1, else 0."""
    base = np.zeros(n_max + 1, dtype=np.int64)
    for p in sympy.sieve.primerange(2, n_max + 1):
        q = p
        while q <= n_max:
            base[q] = p
            q *= p
    return base


def weierstrass_discriminant(a1: int, a2: int, a3: int, a4: int, a6: int) -> int:
    """Discriminant of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""
    b2 = a1 ** 2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 ** 2 + 4 * a6
    b8 = a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2
    return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6
