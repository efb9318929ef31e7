"""
Polynomials with exponents in Z[1/p]

A FracExpPoly is a finite sum of c * x^(k/p^N) with integer coefficients.
Exponents are stored as integer numerators over the common denominator
p^N; two polynomials compare equal when they define the same sum,
whatever their stored denominators.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple, Union

import config
from core.errors import DomainError, InternalConsistencyError

logger = logging.getLogger(__name__)

Exponent = Union[int, Fraction]


def p_adic_denominator_exp(value: Fraction, p: int) -> int:
    """m with denominator(value) = p^m, or DomainError if it is not a power of p."""
    den = Fraction(value).denominator
    m = 0
    while den % p == 0:
        den //= p
        m += 1
    if den != 1:
        raise DomainError(f"exponent {value} is not in Z[1/{p}]")
    return m


class FracExpPoly:
    """Sparse polynomial in one variable with exponents k/p^N, k >= 0."""

    __slots__ = ("p", "denom_exp", "terms")

    def __init__(self, p: int, denom_exp: int = 0, terms: Optional[Dict[int, int]] = None):
        if denom_exp < 0:
            raise DomainError(f"denominator exponent must be >= 0, got {denom_exp}")
        if denom_exp > config.WITT_MAX_DENOM_EXP:
            raise DomainError(f"exponent denominators beyond {p}^{config.WITT_MAX_DENOM_EXP} are not supported")
        self.p = p
        self.denom_exp = denom_exp
        self.terms: Dict[int, int] = {}
        for k, c in (terms or {}).items():
            if k < 0:
                raise DomainError(f"negative exponent {k}/{p}^{denom_exp}")
            if c:
                self.terms[k] = int(c)

    # Constructors

    @classmethod
    def zero(cls, p: int) -> "FracExpPoly":
        return cls(p)

    @classmethod
    def constant(cls, p: int, c: int) -> "FracExpPoly":
        return cls(p, 0, {0: c})

    @classmethod
    def monomial(cls, p: int, exponent: Exponent, coeff: int = 1) -> "FracExpPoly":
        """coeff * x^exponent."""
        exponent = Fraction(exponent)
        if exponent < 0:
            raise DomainError(f"negative exponent {exponent}")
        m = p_adic_denominator_exp(exponent, p)
        return cls(p, m, {int(exponent * p ** m): coeff})

    # Representation

    @property
    def denominator(self) -> int:
        return self.p ** self.denom_exp

    def exponent(self, k: int) -> Fraction:
        return Fraction(k, self.denominator)

    def items(self) -> Iterator[Tuple[Fraction, int]]:
        """(exponent, coefficient) pairs in increasing exponent order."""
        for k in sorted(self.terms):
            yield self.exponent(k), self.terms[k]

    def as_dict(self) -> Dict[Fraction, int]:
        return dict(self.items())

    def coefficient(self, exponent: Exponent) -> int:
        scaled = Fraction(exponent) * self.denominator
        if scaled.denominator != 1:
            return 0
        return self.terms.get(int(scaled), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> Fraction:
        if not self.terms:
            raise DomainError("degree of the zero polynomial")
        return self.exponent(max(self.terms))

    def rescale(self, denom_exp: int) -> "FracExpPoly":
        """The same polynomial stored over p^denom_exp (denom_exp >= current)."""
        if denom_exp < self.denom_exp:
            raise DomainError(f"cannot lower denominator exponent {self.denom_exp} to {denom_exp}")
        shift = self.p ** (denom_exp - self.denom_exp)
        return FracExpPoly(self.p, denom_exp, {k * shift: c for k, c in self.terms.items()})

    def normalized(self) -> "FracExpPoly":
        """Smallest denominator exponent representing the same polynomial."""
        n = self.denom_exp
        terms = dict(self.terms)
        while n > 0 and all(k % self.p == 0 for k in terms):
            terms = {k // self.p: c for k, c in terms.items()}
            n -= 1
        return FracExpPoly(self.p, n, terms)

    def _aligned(self, other: "FracExpPoly") -> Tuple["FracExpPoly", "FracExpPoly"]:
        if self.p != other.p:
            raise DomainError(f"mixing exponents over {self.p} and {other.p}")
        n = max(self.denom_exp, other.denom_exp)
        return self.rescale(n), other.rescale(n)

    # Ring operations

    def __add__(self, other: "FracExpPoly") -> "FracExpPoly":
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for k, c in b.terms.items():
            terms[k] = terms.get(k, 0) + c
        return FracExpPoly(self.p, a.denom_exp, terms)

    def __neg__(self) -> "FracExpPoly":
        return FracExpPoly(self.p, self.denom_exp, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "FracExpPoly") -> "FracExpPoly":
        return self + (-other)

    def __mul__(self, other: Union["FracExpPoly", int]) -> "FracExpPoly":
        if isinstance(other, int):
            return self.scale(other)
        a, b = self._aligned(other)
        terms: Dict[int, int] = {}
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                terms[k1 + k2] = terms.get(k1 + k2, 0) + c1 * c2
        return FracExpPoly(self.p, a.denom_exp, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FracExpPoly":
        if e < 0:
            raise DomainError("negative powers are not polynomials")
        if self.is_monomial():
            (k, c), = self.terms.items()
            return FracExpPoly(self.p, self.denom_exp, {k * e: c ** e})
        result = FracExpPoly.constant(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> "FracExpPoly":
        return FracExpPoly(self.p, self.denom_exp, {k: v * c for k, v in self.terms.items()})

    def exact_div(self, d: int) -> "FracExpPoly":
        """Divide every coefficient by d; inexact division is a consistency failure."""
        terms = {}
        for k, c in self.terms.items():
            q, r = divmod(c, d)
            if r:
                raise InternalConsistencyError(
                    f"coefficient {c} of x^{self.exponent(k)} is not divisible by {d}")
            terms[k] = q
        return FracExpPoly(self.p, self.denom_exp, terms)

    def mod_p(self) -> "FracExpPoly":
        """Coefficients reduced to 0..p-1."""
        return FracExpPoly(self.p, self.denom_exp, {k: c % self.p for k, c in self.terms.items()})

    def root(self, n: int = 1) -> "FracExpPoly":
        """Divide every exponent by p^n (the inverse Frobenius in characteristic p)."""
        return FracExpPoly(self.p, self.denom_exp + n, self.terms).normalized()

    def frobenius(self, n: int = 1) -> "FracExpPoly":
        """Multiply every exponent by p^n."""
        shift = self.p ** n
        return FracExpPoly(self.p, self.denom_exp, {k * shift: c for k, c in self.terms.items()}).normalized()

    # Comparison

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = FracExpPoly.constant(self.p, other)
        if not isinstance(other, FracExpPoly):
            return NotImplemented
        return self.p == other.p and self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash((self.p, tuple(self.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts: List[str] = []
        for e, c in self.items():
            if e == 0:
                parts.append(str(c))
                continue
            mono = "x" if e == 1 else f"x^({e})"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)
