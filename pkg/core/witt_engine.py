"""
Witt vector module for char1

This module provides:
- Truncated p-typical Witt vectors over Z[x^(1/p^N)] with ghost-based addition
- Extraction of the universal coefficients w(p^n, k) mod p
- The map w_p(alpha) and the deformed addition x +' y built from it
- An independent oracle computing x +' y through Teichmuller lifts
"""

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import config
from core.arith import require_prime
from core.errors import DomainError, InternalConsistencyError, ValidationError
from core.fracexp import FracExpPoly, p_adic_denominator_exp
from core.storage import read_csv_rows

# Initialize logger
logger = logging.getLogger(__name__)


class WittVec:
    """(a_0, ..., a_N) in W_{N+1}(Z[x^(1/p^M)])."""

    def __init__(self, p: int, components: Sequence[FracExpPoly]):
        if not components:
            raise DomainError("a Witt vector needs at least one component")
        for c in components:
            if c.p != p:
                raise DomainError(f"component over {c.p} in a {p}-typical Witt vector")
        self.p = p
        self.components: Tuple[FracExpPoly, ...] = tuple(components)

    @property
    def length(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> FracExpPoly:
        return self.components[i]

    def __add__(self, other: "WittVec") -> "WittVec":
        return witt_add(self, other)

    def mod_p(self) -> Tuple[FracExpPoly, ...]:
        """Components reduced mod p, i.e. the image in W(F_p[x^(1/p^M)])."""
        return tuple(c.mod_p() for c in self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WittVec):
            return NotImplemented
        return self.p == other.p and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.p, self.components))

    def __repr__(self) -> str:
        return f"WittVec(p={self.p}, {list(self.components)!r})"

    @classmethod
    def zero(cls, p: int, length: int) -> "WittVec":
        return cls(p, [FracExpPoly.zero(p)] * length)

    @classmethod
    def from_integer(cls, p: int, value: int, length: int) -> "WittVec":
        """Witt components of a non-negative integer, computed from its ghost vector."""
        if value < 0:
            raise DomainError("only non-negative integers are supported")
        constant = FracExpPoly.constant(p, value)
        return unghost(p, [constant] * length)


def ghost(v: WittVec) -> List[FracExpPoly]:
    """gh_i = sum_{j <= i} p^j a_j^(p^(i-j))."""
    p = v.p
    result = []
    for i in range(v.length):
        total = FracExpPoly.zero(p)
        for j in range(i + 1):
            total = total + (v[j] ** (p ** (i - j))).scale(p ** j)
        result.append(total)
    return result


def unghost(p: int, ghosts: Sequence[FracExpPoly]) -> WittVec:
    """
    Invert the ghost map by successive exact division by p.

    Raises:
        InternalConsistencyError: if a division is inexact, i.e. the input
            is not the ghost vector of an integral Witt vector
    """
    components: List[FracExpPoly] = []
    for i, gh in enumerate(ghosts):
        rest = gh
        for j, a in enumerate(components):
            rest = rest - (a ** (p ** (i - j))).scale(p ** j)
        components.append(rest.exact_div(p ** i))
    return WittVec(p, components)


def _check_compatible(a: WittVec, b: WittVec) -> None:
    if a.p != b.p:
        raise DomainError(f"adding {a.p}-typical and {b.p}-typical Witt vectors")
    if a.length != b.length:
        raise DomainError(f"adding Witt vectors of lengths {a.length} and {b.length}")


def witt_add(a: WittVec, b: WittVec) -> WittVec:
    """Sum of two Witt vectors computed ghostwise."""
    _check_compatible(a, b)
    return unghost(a.p, [x + y for x, y in zip(ghost(a), ghost(b))])


def witt_sum(vectors: Sequence[WittVec]) -> WittVec:
    """n-fold Witt sum, ghost components added once."""
    if not vectors:
        raise DomainError("empty Witt sum")
    first = vectors[0]
    totals = ghost(first)
    for v in vectors[1:]:
        _check_compatible(first, v)
        totals = [x + y for x, y in zip(totals, ghost(v))]
    return unghost(first.p, totals)


def teichmuller(monomial: FracExpPoly, length: int) -> WittVec:
    """tau(m) = (m, 0, ..., 0)."""
    if not monomial.is_monomial():
        raise DomainError(f"Teichmuller lift needs a single monomial, got {monomial!r}")
    if length < 1:
        raise DomainError(f"length must be >= 1, got {length}")
    zero = FracExpPoly.zero(monomial.p)
    return WittVec(monomial.p, [monomial] + [zero] * (length - 1))


# Truncated series over F_p

@dataclass(frozen=True)
class TruncatedSeries:
    """sum_n coeffs[n] T^n mod T^(N+1) with coefficients in F_p."""

    p: int
    coeffs: Tuple[int, ...]

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if n == 0 else ("T" if n == 1 else f"T^{n}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(parts) or "0"

    @classmethod
    def parse(cls, text: str, p: int, precision: int) -> "TruncatedSeries":
        """Read a series printed as e.g. ``3T^2+2T^3``, ``T``, ``1`` or ``0``."""
        coeffs = [0] * (precision + 1)
        text = text.replace(" ", "")
        if text == "0":
            return cls(p, tuple(coeffs))
        for term in text.split("+"):
            try:
                if "T" in term:
                    head, _, tail = term.partition("T")
                    c = int(head) if head else 1
                    n = int(tail[1:]) if tail.startswith("^") else 1
                    if tail and not tail.startswith("^"):
                        raise ValueError(term)
                else:
                    c, n = int(term), 0
            except ValueError as e:
                raise ValidationError(f"unreadable series term {term!r} in {text!r}") from e
            if n > precision:
                raise ValidationError(f"term {term!r} exceeds precision T^{precision}")
            coeffs[n] = (coeffs[n] + c) % p
        return cls(p, tuple(coeffs))


# Universal coefficient table

@dataclass(frozen=True)
class WCoeffTable:
    """w(p^n, k) mod p for 1 <= n <= N and 0 < k < p^n."""

    p: int
    N: int
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def w(self, n: int, k: int) -> int:
        if n == 0:
            return 1 if k in (0, 1) else 0
        return self.entries.get((n, k), 0)

    def alphas(self) -> List[Fraction]:
        """All alpha = k/p^N in [0, 1], in increasing order."""
        den = self.p ** self.N
        return [Fraction(k, den) for k in range(den + 1)]


def witt_coeffs(p: int, N: int) -> WCoeffTable:
    """
    Compute w(p^n, k) from the components of tau(x) + tau(1).

    Args:
        p: prime in config.WITT_PRIMES
        N: truncation level, 1 <= N <= config.WITT_MAX_N

    Returns:
        WCoeffTable with the non-zero coefficients

    Raises:
        InternalConsistencyError: if a component is supported outside
            the exponents k/p^n with 0 < k < p^n, or s_0 != x + 1
    """
    require_prime(p)
    if p not in config.WITT_PRIMES:
        raise DomainError(f"Witt tables are computed for p in {config.WITT_PRIMES}, got {p}")
    if not 1 <= N <= config.WITT_MAX_N:
        raise DomainError(f"N must lie in 1..{config.WITT_MAX_N}, got {N}")

    x = FracExpPoly.monomial(p, 1)
    one = FracExpPoly.constant(p, 1)
    total = witt_add(teichmuller(x, N + 1), teichmuller(one, N + 1))
    if total[0] != x + one:
        raise InternalConsistencyError(f"s_0 = {total[0]!r}, expected x + 1")

    entries: Dict[Tuple[int, int], int] = {}
    for n in range(1, N + 1):
        component = total[n].mod_p().root(n)
        for exponent, c in component.items():
            k = exponent * p ** n
            if k.denominator != 1 or not 0 < k < p ** n:
                raise InternalConsistencyError(f"s_{n} has unexpected support x^({exponent}) for p={p}")
            entries[(n, int(k))] = c
    logger.info(f"Computed w(p^n, k) for p={p}, N={N}: {len(entries)} non-zero coefficients")
    return WCoeffTable(p, N, entries)


# Global instances
_tables: Dict[Tuple[int, int], WCoeffTable] = {}
_tables_lock = threading.Lock()


def get_witt_table(p: int, N: int) -> WCoeffTable:
    """Cached witt_coeffs(p, N)."""
    with _tables_lock:
        if (p, N) not in _tables:
            _tables[(p, N)] = witt_coeffs(p, N)
        return _tables[(p, N)]


def wp_map(table: WCoeffTable, alpha: Fraction) -> TruncatedSeries:
    """
    w_p(alpha) = sum over alpha = a/p^n of w(p^n, a) T^n, modulo T^(N+1).

    Raises:
        DomainError: if alpha is outside [0, 1] or its denominator exceeds p^N
    """
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    m = p_adic_denominator_exp(alpha, table.p)
    if m > table.N:
        raise DomainError(f"denominator of {alpha} exceeds {table.p}^{table.N}")
    coeffs = [0] * (table.N + 1)
    if alpha in (0, 1):
        coeffs[0] = 1
        return TruncatedSeries(table.p, tuple(coeffs))
    for n in range(max(m, 1), table.N + 1):
        coeffs[n] = table.w(n, int(alpha * table.p ** n)) % table.p
    return TruncatedSeries(table.p, tuple(coeffs))


def table_symmetry_defects(table: WCoeffTable) -> List[Fraction]:
    """alpha with w_p(alpha) != w_p(1 - alpha)."""
    return [a for a in table.alphas() if wp_map(table, a) != wp_map(table, 1 - a)]


def load_table_fixture(path: str, p: int, precision: int) -> Dict[Fraction, TruncatedSeries]:
    """Read a ``alpha_num,alpha_den,series`` CSV into {alpha: series}."""
    fixture = {}
    for row in read_csv_rows(path):
        try:
            alpha = Fraction(int(row["alpha_num"]), int(row["alpha_den"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise ValidationError(f"bad fixture row {row}: {e}") from e
        fixture[alpha] = TruncatedSeries.parse(row["series"], p, precision)
    logger.info(f"Loaded {len(fixture)} fixture rows from {path}")
    return fixture


def compare_with_fixture(table: WCoeffTable,
                         fixture: Dict[Fraction, TruncatedSeries]) -> List[Tuple[Fraction, str, str]]:
    """(alpha, expected, computed) for every fixture row that disagrees."""
    mismatches = []
    for alpha, expected in sorted(fixture.items()):
        got = wp_map(table, alpha)
        if got != expected:
            mismatches.append((alpha, str(expected), str(got)))
    return mismatches


# Deformed addition

def _lift(exponent: Optional[Fraction], p: int) -> FracExpPoly:
    if exponent is None:
        return FracExpPoly.zero(p)
    return FracExpPoly.monomial(p, Fraction(exponent))


def deformed_add(x_exp: Optional[Fraction], y_exp: Optional[Fraction],
                 table: WCoeffTable) -> List[FracExpPoly]:
    """
    x +' y = sum_alpha w_p(alpha) x^alpha y^(1 - alpha) for x = t^x_exp, y = t^y_exp.

    None stands for the zero element. Returns the coefficients of T^0..T^N,
    each a polynomial in t with coefficients in F_p.
    """
    p = table.p
    for e in (x_exp, y_exp):
        if e is not None:
            if Fraction(e) < 0:
                raise DomainError(f"negative exponent {e}")
            if p_adic_denominator_exp(Fraction(e), p) + table.N > config.WITT_MAX_DENOM_EXP:
                raise DomainError(f"exponent {e} needs denominators beyond {p}^{config.WITT_MAX_DENOM_EXP}")
    result = [FracExpPoly.zero(p) for _ in range(table.N + 1)]
    for alpha in table.alphas():
        if x_exp is None and alpha != 0:
            continue
        if y_exp is None and alpha != 1:
            continue
        exponent = alpha * Fraction(x_exp or 0) + (1 - alpha) * Fraction(y_exp or 0)
        series = wp_map(table, alpha)
        for n, c in enumerate(series.coeffs):
            if c:
                result[n] = result[n] + FracExpPoly.monomial(p, exponent, c)
    return [r.mod_p() for r in result]


def oracle_add(x_exp: Optional[Fraction], y_exp: Optional[Fraction], p: int, N: int) -> List[FracExpPoly]:
    """tau^-1(tau(x) + tau(y)): component n reduced mod p and rooted p^n times."""
    x, y = _lift(x_exp, p), _lift(y_exp, p)
    length = N + 1
    tx = teichmuller(x, length) if not x.is_zero() else WittVec.zero(p, length)
    ty = teichmuller(y, length) if not y.is_zero() else WittVec.zero(p, length)
    total = witt_add(tx, ty)
    return [total[n].mod_p().root(n) for n in range(length)]
