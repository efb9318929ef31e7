"""
Semirings of characteristic one module for char1

This module provides:
- the finite prime semirings B(n, i) and table-backed finite semirings
- the characteristic of a finite semiring
- the semifield R_+^max with its Frobenius automorphisms
- the entropy function c(s) and the free-energy supremum
- the rho-deformed pointwise addition (f^(1/T) + g^(1/T))^T
"""

import math
import logging
import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import factorint
from sympy.utilities.iterables import partitions

import config
from core.errors import DomainError, ValidationError

# Initialize logger
logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class PrimeSemiring:
    """The semiring B(n, i) on {0, ..., n-1}.

    Sums and products below n are ordinary; larger values wrap into
    [i, n-1] modulo m = n - i.
    """

    n: int
    i: int

    def __post_init__(self):
        if self.n < 2 or not 1 <= self.i <= self.n - 1:
            raise DomainError(f"B(n, i) needs n >= 2 and 1 <= i <= n-1, got ({self.n}, {self.i})")

    @property
    def m(self) -> int:
        return self.n - self.i

    @property
    def elements(self) -> range:
        return range(self.n)

    def _check(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise DomainError(f"{x} is not an element of B({self.n}, {self.i})")

    def reduce(self, value: int) -> int:
        if value < self.n:
            return value
        # unique l in [i, n-1] congruent to value mod m
        return self.i + (value - self.i) % self.m

    def add(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        return self.reduce(x + y)

    def mul(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        return self.reduce(x * y)

    def to_finite(self) -> "FiniteSemiring":
        add = tuple(tuple(self.add(x, y) for y in self.elements) for x in self.elements)
        mul = tuple(tuple(self.mul(x, y) for y in self.elements) for x in self.elements)
        return FiniteSemiring(add, mul, zero=0, one=1 % self.n, name=f"B({self.n},{self.i})")


def bni_ops(n: int, i: int) -> PrimeSemiring:
    """Return the prime semiring B(n, i)."""
    return PrimeSemiring(n, i)


class FiniteSemiring:
    """
    Commutative semiring on {0, ..., size-1} given by addition and
    multiplication tables.
    """

    def __init__(self, add_table: Sequence[Sequence[int]], mul_table: Sequence[Sequence[int]],
                 zero: int = 0, one: int = 1, name: str = ""):
        self.add_table: Table = tuple(tuple(int(v) for v in row) for row in add_table)
        self.mul_table: Table = tuple(tuple(int(v) for v in row) for row in mul_table)
        self.size = len(self.add_table)
        self.zero = zero
        self.one = one
        self.name = name or f"semiring[{self.size}]"
        for table in (self.add_table, self.mul_table):
            if len(table) != self.size or any(len(row) != self.size for row in table):
                raise ValidationError(f"{self.name}: tables must be {self.size}x{self.size}")
            if any(not 0 <= v < self.size for row in table for v in row):
                raise ValidationError(f"{self.name}: table entry out of range")

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def mul(self, x: int, y: int) -> int:
        return self.mul_table[x][y]

    def axiom_failures(self) -> List[str]:
        """Return a description of every violated semiring axiom (empty when valid)."""
        failures = []
        a, m, els = self.add_table, self.mul_table, range(self.size)
        for name, t in (("addition", a), ("multiplication", m)):
            for x, y in itertools.combinations(els, 2):
                if t[x][y] != t[y][x]:
                    failures.append(f"{name} not commutative at ({x}, {y})")
                    break
            for x, y, z in itertools.product(els, repeat=3):
                if t[t[x][y]][z] != t[x][t[y][z]]:
                    failures.append(f"{name} not associative at ({x}, {y}, {z})")
                    break
        for x in els:
            if a[self.zero][x] != x:
                failures.append(f"zero is not additively neutral at {x}")
                break
        for x in els:
            if m[self.one][x] != x:
                failures.append(f"one is not multiplicatively neutral at {x}")
                break
        for x in els:
            if m[self.zero][x] != self.zero:
                failures.append(f"zero is not absorbing at {x}")
                break
        for x, y, z in itertools.product(els, repeat=3):
            if m[x][a[y][z]] != a[m[x][y]][m[x][z]]:
                failures.append(f"not distributive at ({x}, {y}, {z})")
                break
        return failures

    def check_axioms(self) -> None:
        failures = self.axiom_failures()
        if failures:
            raise ValidationError(f"{self.name}: " + "; ".join(failures))

    @property
    def is_idempotent(self) -> bool:
        return self.add(self.one, self.one) == self.one

    @classmethod
    def boolean(cls) -> "FiniteSemiring":
        return cls(((0, 1), (1, 1)), ((0, 0), (0, 1)), name="B")

    @classmethod
    def integers_mod(cls, n: int) -> "FiniteSemiring":
        add = [[(x + y) % n for y in range(n)] for x in range(n)]
        mul = [[(x * y) % n for y in range(n)] for x in range(n)]
        return cls(add, mul, zero=0, one=1 % n, name=f"Z/{n}")


@dataclass(frozen=True)
class Positive:
    n: int


@dataclass(frozen=True)
class Combinatorial:
    n: int
    i: int


Characteristic = Union[Positive, Combinatorial]


def characteristic_of(R: FiniteSemiring) -> Characteristic:
    """
    Characteristic of a finite semiring, read off the sequence k -> k*1.

    Args:
        R: finite semiring given by tables

    Returns:
        Positive(n) when n*1 = 0 first, otherwise Combinatorial(n, i) for
        the least n with n*1 = i*1, 1 <= i <= n-1

    Raises:
        ValidationError: if either table is not associative
    """
    for name, t in (("addition", R.add_table), ("multiplication", R.mul_table)):
        for x, y, z in itertools.product(range(R.size), repeat=3):
            if t[t[x][y]][z] != t[x][t[y][z]]:
                raise ValidationError(f"{R.name}: {name} not associative at ({x}, {y}, {z})")

    seen: Dict[int, int] = {R.zero: 0}
    value = R.zero
    for k in range(1, R.size + 2):
        value = R.add(value, R.one)
        if value in seen:
            first = seen[value]
            return Positive(k) if first == 0 else Combinatorial(k, first)
        seen[value] = k
    raise ValidationError(f"{R.name}: sequence k*1 did not repeat")


def sup_semilattice_order(add_table: Sequence[Sequence[int]]) -> List[List[bool]]:
    """
    Order a <= b iff a + b = b for an idempotent commutative addition.

    Checks that the relation is a partial order and that a + b is the least
    upper bound of {a, b}.

    Returns:
        leq matrix with leq[a][b] = (a <= b)
    """
    size = len(add_table)
    els = range(size)
    if any(add_table[a][a] != a for a in els):
        raise ValidationError("addition is not idempotent")
    leq = [[add_table[a][b] == b for b in els] for a in els]
    for a, b in itertools.product(els, repeat=2):
        if leq[a][b] and leq[b][a] and a != b:
            raise ValidationError(f"order not antisymmetric at ({a}, {b})")
    for a, b, c in itertools.product(els, repeat=3):
        if leq[a][b] and leq[b][c] and not leq[a][c]:
            raise ValidationError(f"order not transitive at ({a}, {b}, {c})")
    for a, b in itertools.product(els, repeat=2):
        j = add_table[a][b]
        if not (leq[a][j] and leq[b][j]):
            raise ValidationError(f"{j} is not an upper bound of ({a}, {b})")
        if any(leq[a][u] and leq[b][u] and not leq[j][u] for u in els):
            raise ValidationError(f"{j} is not the least upper bound of ({a}, {b})")
    return leq


def is_multiplicatively_cancellative(R: FiniteSemiring) -> bool:
    """Multiplication by every non-zero element is injective."""
    for x in range(R.size):
        if x == R.zero:
            continue
        row = R.mul_table[x]
        if len(set(row)) != R.size:
            return False
    return True


def frobenius_is_injective_endomorphism(R: FiniteSemiring, n: int) -> bool:
    """x -> x^n is an injective semiring endomorphism of R."""
    def power(x: int) -> int:
        result = R.one
        for _ in range(n):
            result = R.mul(result, x)
        return result

    image = [power(x) for x in range(R.size)]
    if len(set(image)) != R.size:
        return False
    for x, y in itertools.product(range(R.size), repeat=2):
        if image[R.add(x, y)] != R.add(image[x], image[y]):
            return False
        if image[R.mul(x, y)] != R.mul(image[x], image[y]):
            return False
    return True


def _abelian_group_tables(order: int) -> List[List[List[int]]]:
    """Multiplication tables (identity at index 0) of every abelian group of the given order."""
    per_prime = []
    for p, e in factorint(order).items():
        shapes = []
        for part in partitions(e):
            shapes.append([p ** k for k, mult in part.items() for _ in range(mult)])
        per_prime.append(shapes)
    tables = []
    for combo in itertools.product(*per_prime) if per_prime else [()]:
        moduli = [q for shape in combo for q in shape]
        elements = list(itertools.product(*[range(q) for q in moduli]))
        index = {el: k for k, el in enumerate(elements)}
        table = [[index[tuple((u + v) % q for u, v, q in zip(a, b, moduli))]
                  for b in elements] for a in elements]
        tables.append(table)
    return tables


def enumerate_idempotent_semifields(max_size: int = config.SEMIFIELD_MAX_SIZE) -> List[FiniteSemiring]:
    """
    All commutative semifields with idempotent addition on at most max_size
    elements, one per multiplicative group structure and addition.

    Distributivity forces a + b = a * (1 + b/a), so only the values 1 + x
    for x outside {0, 1} are free.
    """
    if max_size > config.SEMIFIELD_MAX_SIZE:
        logger.warning(f"Semifield enumeration capped at {config.SEMIFIELD_MAX_SIZE}")
        max_size = config.SEMIFIELD_MAX_SIZE

    found = []
    for size in range(2, max_size + 1):
        for group in _abelian_group_tables(size - 1):
            # semiring element k >= 1 is group element k-1; 0 is the zero
            def gmul(a: int, b: int) -> int:
                if a == 0 or b == 0:
                    return 0
                return group[a - 1][b - 1] + 1

            inverse = {a: next(b for b in range(1, size) if gmul(a, b) == 1) for a in range(1, size)}
            mul = [[gmul(a, b) for b in range(size)] for a in range(size)]
            free = list(range(2, size))
            for choice in itertools.product(range(size), repeat=len(free)):
                one_plus = {0: 1, 1: 1}
                one_plus.update(zip(free, choice))
                add = [[0] * size for _ in range(size)]
                for a in range(size):
                    for b in range(size):
                        if a == 0:
                            add[a][b] = b
                        else:
                            add[a][b] = gmul(a, one_plus[gmul(inverse[a], b)])
                candidate = FiniteSemiring(add, mul, name=f"candidate[{size}]")
                if not candidate.axiom_failures():
                    found.append(candidate)
    logger.info(f"Found {len(found)} idempotent semifields of size <= {max_size}")
    return found


@dataclass(frozen=True)
class RMaxElement:
    """Element of R_+^max: addition is max, multiplication is ordinary."""

    value: float

    def __post_init__(self):
        if not self.value >= 0:
            raise DomainError(f"R_+^max elements are non-negative, got {self.value}")

    def __add__(self, other: "RMaxElement") -> "RMaxElement":
        return RMaxElement(max(self.value, other.value))

    def __mul__(self, other: "RMaxElement") -> "RMaxElement":
        return RMaxElement(self.value * other.value)


def rmax_frobenius(x: RMaxElement, lam: float) -> RMaxElement:
    """theta_lambda(x) = x**lambda, an automorphism of R_+^max for lambda > 0."""
    if not lam > 0:
        raise DomainError(f"Frobenius exponent must be positive, got {lam}")
    return RMaxElement(x.value ** lam)


def rmax_theta_product(x: RMaxElement, lam: float, mu: float) -> Tuple[RMaxElement, RMaxElement]:
    """Both sides of theta_lambda(x) * theta_mu(x) = theta_(lambda+mu)(x)."""
    return rmax_frobenius(x, lam) * rmax_frobenius(x, mu), rmax_frobenius(x, lam + mu)


class EntropyKernel:
    """The entropy S(s) = -s log s - (1-s) log(1-s) and c(s) = exp(S(s))."""

    @staticmethod
    def gamma(x: float) -> float:
        return 1.0 if x == 0 else x ** x

    @staticmethod
    def S(s: float) -> float:
        if not 0.0 <= s <= 1.0:
            raise DomainError(f"entropy argument must lie in [0, 1], got {s}")
        total = 0.0
        for t in (s, 1.0 - s):
            if t > 0:
                total -= t * math.log(t)
        return total

    def c(self, s: float) -> float:
        return math.exp(self.S(s))

    def c_n(self, weights: Sequence[float]) -> float:
        """c_n(s_1, ..., s_n) = prod gamma(s_j)^-1 on the simplex."""
        if any(w < 0 for w in weights) or not math.isclose(sum(weights), 1.0, abs_tol=1e-12):
            raise DomainError("weights must be a probability vector")
        result = 1.0
        for w in weights:
            result /= self.gamma(w)
        return result


_kernel = EntropyKernel()


def get_entropy_kernel() -> EntropyKernel:
    return _kernel


def entropy_c(s: float) -> float:
    """c(s) = s^-s (1-s)^-(1-s), equal to 1 at both endpoints."""
    return _kernel.c(s)


def entropy_simplex(weights: Sequence[float]) -> float:
    return _kernel.c_n(weights)


def entropy_functional_residual(u: float, v: float) -> float:
    """|c(u) c(v)^u - c(uv) c(w)^(1-uv)| with w = u(1-v)/(1-uv)."""
    w = u * (1 - v) / (1 - u * v)
    return abs(entropy_c(u) * entropy_c(v) ** u - entropy_c(u * v) * entropy_c(w) ** (1 - u * v))


def free_energy_sup(x: float, y: float, grid: Optional[int] = None,
                    temperature: float = 1.0) -> Tuple[float, float]:
    """
    Maximize exp(T*S(s)) x^s y^(1-s) over s in [0, 1].

    A grid scan brackets the maximum and golden-section search refines it.
    At T = 1 the value is x + y, reached at s = x/(x+y).

    Args:
        x: positive real
        y: positive real
        grid: number of grid points (defaults to CHAR1_ENTROPY_GRID)
        temperature: T >= 0; T = 0 gives max(x, y)

    Returns:
        (value, argmax)
    """
    if not (x > 0 and y > 0):
        raise DomainError(f"free energy needs positive inputs, got ({x}, {y})")
    if temperature < 0:
        raise DomainError(f"temperature must be non-negative, got {temperature}")
    grid = grid or config.ENTROPY_GRID
    lx, ly = math.log(x), math.log(y)

    def objective(s: float) -> float:
        return temperature * _kernel.S(s) + s * lx + (1.0 - s) * ly

    points = np.linspace(0.0, 1.0, grid)
    values = [objective(float(s)) for s in points]
    k = int(np.argmax(values))
    lo = float(points[max(k - 1, 0)])
    hi = float(points[min(k + 1, grid - 1)])

    ratio = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - ratio * (b - a)
    d = a + ratio * (b - a)
    fc, fd = objective(c), objective(d)
    for _ in range(config.GOLDEN_ITERATIONS):
        if b - a < 1e-15:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - ratio * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + ratio * (b - a)
            fd = objective(d)

    candidates = [(objective(s), s) for s in (a, b, (a + b) / 2.0, float(points[k]))]
    best_value, best_s = max(candidates)
    return math.exp(best_value), best_s


def rho_add(f, g, T) -> np.ndarray:
    """
    Pointwise (f^(1/T) + g^(1/T))^T, with max(f, g) where T = 0.

    Args:
        f: samples in (0, 1]
        g: samples in (0, 1]
        T: temperature samples, non-negative (scalar or array)

    Returns:
        numpy array of the deformed sum
    """
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    T = np.broadcast_to(np.asarray(T, dtype=float), np.broadcast(f, g).shape)
    for name, arr in (("f", f), ("g", g)):
        if np.any(arr <= 0) or np.any(arr > 1):
            raise DomainError(f"{name} must take values in (0, 1]")
    if np.any(T < 0):
        raise DomainError("temperature must be non-negative")

    hot = T > 0
    safe_T = np.where(hot, T, 1.0)
    log_sum = np.logaddexp(np.log(f) / safe_T, np.log(g) / safe_T)
    deformed = np.exp(safe_T * log_sum)
    return np.where(hot, deformed, np.maximum(f, g))
