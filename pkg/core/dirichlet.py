"""
Dirichlet series coefficients

DirichletCoeffs stores a(1..N) as an int64 numpy array with index 0 unused,
so that coeffs[n] is a(n). Products of Dirichlet series are Dirichlet
convolutions truncated at N.
"""

import math
import logging
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np

from core.arith import mobius
from core.errors import DomainError

logger = logging.getLogger(__name__)


class DirichletCoeffs:
    """Coefficients a(1), ..., a(N) of sum a(n) n^-s."""

    def __init__(self, coeffs: Iterable[int], name: str = ""):
        array = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=np.int64)
        if array.ndim != 1 or array.size < 2:
            raise DomainError("coefficient array must be one-dimensional with a(1) present")
        self.coeffs = array.copy()
        self.coeffs[0] = 0
        self.name = name

    @property
    def N(self) -> int:
        return self.coeffs.size - 1

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise DomainError(f"index {n} outside 1..{self.N}")
        return int(self.coeffs[n])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirichletCoeffs):
            return NotImplemented
        return self.N == other.N and bool(np.array_equal(self.coeffs, other.coeffs))

    def __repr__(self) -> str:
        head = ", ".join(str(int(v)) for v in self.coeffs[1:min(self.N, 8) + 1])
        return f"DirichletCoeffs({self.name or 'a'}: {head}{', ...' if self.N > 8 else ''}; N={self.N})"

    def values(self) -> List[int]:
        return [int(v) for v in self.coeffs[1:]]

    @classmethod
    def from_function(cls, fn: Callable[[int], int], N: int, name: str = "") -> "DirichletCoeffs":
        return cls([0] + [int(fn(n)) for n in range(1, N + 1)], name)

    @classmethod
    def unit(cls, N: int) -> "DirichletCoeffs":
        """The identity for convolution (the series 1)."""
        coeffs = np.zeros(N + 1, dtype=np.int64)
        coeffs[1] = 1
        return cls(coeffs, "1")

    def truncate(self, N: int) -> "DirichletCoeffs":
        if N > self.N:
            raise DomainError(f"cannot extend coefficients from {self.N} to {N}")
        return DirichletCoeffs(self.coeffs[:N + 1], self.name)

    def __add__(self, other: "DirichletCoeffs") -> "DirichletCoeffs":
        N = min(self.N, other.N)
        return DirichletCoeffs(self.coeffs[:N + 1] + other.coeffs[:N + 1])

    def __sub__(self, other: "DirichletCoeffs") -> "DirichletCoeffs":
        N = min(self.N, other.N)
        return DirichletCoeffs(self.coeffs[:N + 1] - other.coeffs[:N + 1])

    def convolve(self, other: "DirichletCoeffs") -> "DirichletCoeffs":
        """(a * b)(n) = sum_{de = n} a(d) b(e) for n <= min(N_a, N_b)."""
        N = min(self.N, other.N)
        result = np.zeros(N + 1, dtype=np.int64)
        b = other.coeffs
        for d in range(1, N + 1):
            ad = self.coeffs[d]
            if ad == 0:
                continue
            # multiples d*e for e = 1..N//d
            result[d::d] += ad * b[1:N // d + 1]
        return DirichletCoeffs(result)

    def inverse(self) -> "DirichletCoeffs":
        """Dirichlet inverse; integral only when a(1) = +-1."""
        a1 = int(self.coeffs[1])
        if a1 not in (1, -1):
            raise DomainError(f"integral Dirichlet inverse needs a(1) = +-1, got {a1}")
        N = self.N
        inv = np.zeros(N + 1, dtype=np.int64)
        inv[1] = a1
        for n in range(2, N + 1):
            total = 0
            for d in range(2, n + 1):
                if n % d == 0:
                    total += int(self.coeffs[d]) * int(inv[n // d])
            inv[n] = -a1 * total
        return DirichletCoeffs(inv)

    def is_multiplicative(self, pairs: Optional[Iterable[Tuple[int, int]]] = None) -> bool:
        """a(1) = 1 and a(mn) = a(m) a(n) on the given coprime pairs (all pairs when omitted)."""
        if self.coeffs[1] != 1:
            return False
        if pairs is None:
            pairs = ((m, n) for m in range(2, self.N + 1) for n in range(m + 1, self.N // m + 1))
        for m, n in pairs:
            if math.gcd(m, n) != 1 or m * n > self.N:
                continue
            if self.coeffs[m * n] != self.coeffs[m] * self.coeffs[n]:
                logger.debug(f"multiplicativity fails at ({m}, {n})")
                return False
        return True

    def first_mismatch(self, other: "DirichletCoeffs") -> Optional[int]:
        """Smallest n with differing coefficients, or None."""
        N = min(self.N, other.N)
        diff = np.nonzero(self.coeffs[1:N + 1] != other.coeffs[1:N + 1])[0]
        return int(diff[0]) + 1 if diff.size else None


def zeta_2s_minus_1_inverse(N: int) -> DirichletCoeffs:
    """Coefficients of 1/zeta(2s - 1): mu(m) m at n = m^2."""
    coeffs = np.zeros(N + 1, dtype=np.int64)
    m = 1
    while m * m <= N:
        coeffs[m * m] = mobius(m) * m
        m += 1
    return DirichletCoeffs(coeffs, "1/zeta(2s-1)")


def euler_factor_inverse(primes: Iterable[int], N: int) -> DirichletCoeffs:
    """Coefficients of prod_p 1/(1 - p^(1-2s)): multiplicative, p^j at n = p^(2j)."""
    coeffs = np.zeros(N + 1, dtype=np.int64)
    coeffs[1] = 1
    for p in sorted(set(primes)):
        current = np.nonzero(coeffs)[0]
        for n in current:
            value = int(coeffs[n])
            q, weight = n * p * p, p
            while q <= N:
                coeffs[q] += value * weight
                q *= p * p
                weight *= p
    return DirichletCoeffs(coeffs, "1/M(s)")
