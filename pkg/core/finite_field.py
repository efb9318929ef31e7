"""
Finite field module for char1

Builds F_q = F_p[T]/(f) for the lexicographically least monic irreducible f
of degree l, with discrete-log tables for a chosen primitive element.
Elements are encoded as integers 0..q-1 whose base-p digits are the
polynomial coefficients, constant term first.
"""

import math
import logging
import threading
from typing import Dict, List, Tuple

from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem

import config
from core.arith import require_prime
from core.errors import DomainError, InternalConsistencyError, ResourceError

logger = logging.getLogger(__name__)


class FiniteField:
    """F_{p^l} with log/antilog tables."""

    def __init__(self, p: int, ell: int):
        require_prime(p)
        if ell < 1:
            raise DomainError(f"extension degree must be >= 1, got {ell}")
        self.p = p
        self.ell = ell
        self.q = p ** ell
        if self.q > config.FIELD_MAX_ORDER:
            raise ResourceError(f"field order {self.q} exceeds {config.FIELD_MAX_ORDER}")
        self.modulus = self._least_irreducible()

        base = self._first_primitive()
        self._antilog = [1] * (self.q - 1)
        for e in range(1, self.q - 1):
            self._antilog[e] = self.mul_poly(self._antilog[e - 1], base)
        self._log = {x: e for e, x in enumerate(self._antilog)}
        if len(self._log) != self.q - 1:
            raise InternalConsistencyError(f"F_{self.q}: element {base} is not primitive")
        self._base = base
        if self.q == 2:
            self.primitive_elements = [1]
        else:
            self.primitive_elements = sorted(
                self._antilog[u] for u in range(1, self.q - 1) if math.gcd(u, self.q - 1) == 1)
        logger.info(f"Built F_{self.q} with modulus {self.modulus} and "
                    f"{len(self.primitive_elements)} primitive elements")

    # Encoding

    def to_poly(self, x: int) -> List[int]:
        """Dense coefficient list, highest degree first (sympy galoistools layout)."""
        digits = []
        while x:
            digits.append(x % self.p)
            x //= self.p
        return list(reversed(digits)) or []

    def from_poly(self, coeffs: List[int]) -> int:
        value = 0
        for c in coeffs:
            value = value * self.p + int(c) % self.p
        return value

    def _least_irreducible(self) -> List[int]:
        for tail in range(self.p ** self.ell):
            digits = []
            t = tail
            for _ in range(self.ell):
                digits.append(t % self.p)
                t //= self.p
            candidate = [1] + list(reversed(digits))
            if gf_irreducible_p(candidate, self.p, ZZ):
                return candidate
        raise InternalConsistencyError(f"no irreducible polynomial of degree {self.ell} mod {self.p}")

    def _is_primitive(self, x: int) -> bool:
        if x == 0:
            return False
        order = self.q - 1
        poly = self.to_poly(x)
        one = [1]
        for r in factorint(order):
            if gf_pow_mod(poly, order // r, self.modulus, self.p, ZZ) == one:
                return False
        return True

    def _first_primitive(self) -> int:
        for x in range(1, self.q):
            if self._is_primitive(x):
                return x
        raise InternalConsistencyError(f"F_{self.q} has no primitive element")

    # Arithmetic

    def add(self, x: int, y: int) -> int:
        result, scale = 0, 1
        while x or y:
            result += ((x % self.p + y % self.p) % self.p) * scale
            x //= self.p
            y //= self.p
            scale *= self.p
        return result

    def mul_poly(self, x: int, y: int) -> int:
        product = gf_rem(gf_mul(self.to_poly(x), self.to_poly(y), self.p, ZZ), self.modulus, self.p, ZZ)
        return self.from_poly(product)

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._antilog[(self._log[x] + self._log[y]) % (self.q - 1)]

    def log(self, x: int, generator: int) -> int:
        """Discrete log of x to the given primitive element."""
        if x == 0:
            raise DomainError("log of 0 is undefined")
        if self.q == 2:
            return 0
        u_inv = pow(self._log[generator], -1, self.q - 1)
        return (self._log[x] * u_inv) % (self.q - 1)

    def power(self, generator: int, e: int) -> int:
        if self.q == 2:
            return 1
        return self._antilog[(self._log[generator] * e) % (self.q - 1)]

    def primitive_element(self, choice: int) -> int:
        if not 0 <= choice < len(self.primitive_elements):
            raise DomainError(f"F_{self.q} has {len(self.primitive_elements)} primitive elements, "
                              f"no index {choice}")
        return self.primitive_elements[choice]


# Global instances
_fields: Dict[Tuple[int, int], FiniteField] = {}
_fields_lock = threading.Lock()


def get_finite_field(p: int, ell: int) -> FiniteField:
    """Cached F_{p^l}."""
    with _fields_lock:
        key = (p, ell)
        if key not in _fields:
            _fields[key] = FiniteField(p, ell)
        return _fields[key]
