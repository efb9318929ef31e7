"""
Finite pointed monoids module for char1

This module provides:
- table-backed commutative monoids with absorbing 0 and unit 1
- ideals, radicals, prime ideals and the spectrum with its basic opens
- localization by congruence closure and residue fields
- homomorphism counts Hom(Z/m, Z/n) and F_1^n point counts of scheme data
"""

import cmath
import math
import logging
import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import factorint

import config
from core.arith import divisors, mobius, totient
from core.errors import DomainError, InternalConsistencyError, ResourceError, ValidationError

# Initialize logger
logger = logging.getLogger(__name__)

Ideal = FrozenSet[int]


class PointedMonoid:
    """
    Finite commutative monoid with an absorbing element, given by its
    multiplication table on the indices 0..size-1.
    """

    def __init__(self, table: Sequence[Sequence[int]], zero: int, one: int,
                 labels: Optional[Sequence[str]] = None, name: str = ""):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.size = len(self.table)
        self.zero = zero
        self.one = one
        self.labels = tuple(labels) if labels else tuple(str(k) for k in range(self.size))
        self.name = name or f"monoid[{self.size}]"
        if self.size > config.MONOID_MAX_SIZE:
            raise ResourceError(f"{self.name}: {self.size} elements exceeds {config.MONOID_MAX_SIZE}")
        self._validate()

    def _validate(self) -> None:
        t, els = self.table, range(self.size)
        if any(len(row) != self.size for row in t):
            raise ValidationError(f"{self.name}: table is not square")
        if any(not 0 <= v < self.size for row in t for v in row):
            raise ValidationError(f"{self.name}: table entry out of range")
        for x, y in itertools.combinations(els, 2):
            if t[x][y] != t[y][x]:
                raise ValidationError(f"{self.name}: not commutative at ({x}, {y})")
        for x, y, z in itertools.product(els, repeat=3):
            if t[t[x][y]][z] != t[x][t[y][z]]:
                raise ValidationError(f"{self.name}: not associative at ({x}, {y}, {z})")
        for x in els:
            if t[self.zero][x] != self.zero:
                raise ValidationError(f"{self.name}: zero not absorbing at {x}")
            if t[self.one][x] != x:
                raise ValidationError(f"{self.name}: one not neutral at {x}")

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def is_trivial(self) -> bool:
        return self.zero == self.one

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def power(self, x: int, k: int) -> int:
        result = self.one
        for _ in range(k):
            result = self.table[result][x]
        return result

    def powers(self, x: int) -> List[int]:
        """Distinct powers x^0, x^1, ... in order of first appearance."""
        seen, result, value = set(), [], self.one
        while value not in seen:
            seen.add(value)
            result.append(value)
            value = self.table[value][x]
        return result

    def positive_powers(self, x: int) -> FrozenSet[int]:
        """{x^k : k >= 1}."""
        powers = self.powers(x)
        return frozenset(powers[1:]) | {self.table[powers[-1]][x]}

    def is_unit(self, x: int) -> bool:
        return self.one in self.table[x]

    def units(self) -> List[int]:
        return [x for x in self.elements if self.is_unit(x)]

    def is_nilpotent(self, x: int) -> bool:
        return self.zero in self.powers(x)

    def divisors_of(self, z: int) -> FrozenSet[int]:
        return frozenset(x for x in self.elements if z in self.table[x])

    # Constructors

    @classmethod
    def f1n(cls, n: int) -> "PointedMonoid":
        """F_1^n = Z/n with a zero adjoined; index 0 is zero, index k is g^(k-1)."""
        if n < 1:
            raise DomainError(f"F_1^n needs n >= 1, got {n}")
        size = n + 1

        def mul(a: int, b: int) -> int:
            if a == 0 or b == 0:
                return 0
            return (a - 1 + b - 1) % n + 1

        table = [[mul(a, b) for b in range(size)] for a in range(size)]
        labels = ["0"] + [f"g^{e}" for e in range(n)]
        return cls(table, zero=0, one=1, labels=labels, name=f"F1^{n}")

    @classmethod
    def truncated(cls, k: int) -> "PointedMonoid":
        """{1, t, ..., t^(k-1), 0} with t^k = 0; index j >= 1 is t^(j-1)."""
        if k < 1:
            raise DomainError(f"truncation order must be >= 1, got {k}")

        def mul(a: int, b: int) -> int:
            if a == 0 or b == 0:
                return 0
            e = (a - 1) + (b - 1)
            return 0 if e >= k else e + 1

        table = [[mul(a, b) for b in range(k + 1)] for a in range(k + 1)]
        labels = ["0"] + [f"t^{e}" for e in range(k)]
        return cls(table, zero=0, one=1, labels=labels, name=f"trunc[t^{k}=0]")

    @classmethod
    def idempotent_tail(cls, k: int) -> "PointedMonoid":
        """{1, t, ..., t^(k-1), 0} with t^k = t^(k-1)."""
        if k < 2:
            raise DomainError(f"idempotent tail needs k >= 2, got {k}")

        def mul(a: int, b: int) -> int:
            if a == 0 or b == 0:
                return 0
            return min((a - 1) + (b - 1), k - 1) + 1

        table = [[mul(a, b) for b in range(k + 1)] for a in range(k + 1)]
        labels = ["0"] + [f"t^{e}" for e in range(k)]
        return cls(table, zero=0, one=1, labels=labels, name=f"tail[t^{k}=t^{k - 1}]")

    @classmethod
    def smash(cls, left: "PointedMonoid", right: "PointedMonoid") -> "PointedMonoid":
        """Pairs of non-zero elements with every pair involving a zero collapsed to 0."""
        left_nz = [x for x in left.elements if x != left.zero]
        right_nz = [y for y in right.elements if y != right.zero]
        pairs = [(x, y) for x in left_nz for y in right_nz]
        index = {pair: k + 1 for k, pair in enumerate(pairs)}

        def mul(a: int, b: int) -> int:
            if a == 0 or b == 0:
                return 0
            (x1, y1), (x2, y2) = pairs[a - 1], pairs[b - 1]
            x, y = left.mul(x1, x2), right.mul(y1, y2)
            if x == left.zero or y == right.zero:
                return 0
            return index[(x, y)]

        size = len(pairs) + 1
        table = [[mul(a, b) for b in range(size)] for a in range(size)]
        labels = ["0"] + [f"({left.labels[x]},{right.labels[y]})" for x, y in pairs]
        return cls(table, zero=0, one=index[(left.one, right.one)], labels=labels,
                   name=f"{left.name}^{right.name}")

    @classmethod
    def trivial(cls) -> "PointedMonoid":
        return cls([[0]], zero=0, one=0, labels=["0=1"], name="trivial")


def tower_map(n: int, m: int) -> List[int]:
    """
    The inclusion F_1^n -> F_1^m for n | m, g_n -> g_m^(m/n), as an index map.

    Raises:
        DomainError: if n does not divide m
        InternalConsistencyError: if the map is not a monoid morphism
    """
    if n < 1 or m % n:
        raise DomainError(f"F1^{n} embeds in F1^{m} only when {n} divides {m}")
    source, target = PointedMonoid.f1n(n), PointedMonoid.f1n(m)
    step = m // n
    image = [0] + [(e * step) % m + 1 for e in range(n)]
    for a, b in itertools.product(source.elements, repeat=2):
        if image[source.mul(a, b)] != target.mul(image[a], image[b]):
            raise InternalConsistencyError(f"tower map F1^{n} -> F1^{m} not multiplicative")
    return image


# Ideals and primes

def is_ideal(M: PointedMonoid, subset: Iterable[int]) -> bool:
    s = set(subset)
    if M.zero not in s:
        return False
    return all(M.mul(x, y) in s for x in s for y in M.elements)


def is_prime(M: PointedMonoid, subset: Iterable[int]) -> bool:
    s = set(subset)
    if not is_ideal(M, s) or len(s) == M.size:
        return False
    complement = [x for x in M.elements if x not in s]
    return all(M.mul(x, y) not in s for x in complement for y in complement)


def ideals(M: PointedMonoid) -> List[Ideal]:
    """Every ideal of M (including M itself), built as unions of principal ideals."""
    if M.size > 16:
        raise ResourceError(f"ideal enumeration limited to 16 elements, {M.name} has {M.size}")
    principal = [frozenset(M.mul(x, y) for y in M.elements) for x in M.elements]
    found = {frozenset([M.zero])}
    for r in range(1, M.size + 1):
        for gens in itertools.combinations(M.elements, r):
            found.add(frozenset().union(*(principal[g] for g in gens)) | {M.zero})
    return sorted(found, key=lambda i: (len(i), sorted(i)))


def maximal_prime(M: PointedMonoid) -> Ideal:
    """The non-units of M."""
    return frozenset(x for x in M.elements if not M.is_unit(x))


def prime_ideals(M: PointedMonoid) -> List[Ideal]:
    """
    All prime ideals of M sorted by inclusion (then by content).

    The complement of a prime is a filter, and a filter of a finite monoid
    is the set of divisors of the powers of one element (the product of its
    members), so the primes are the complements of those divisor sets for
    non-nilpotent generators.
    """
    if M.is_trivial:
        return []
    divisors_of = {z: M.divisors_of(z) for z in M.elements}
    primes = set()
    for f in M.elements:
        powers = M.powers(f)
        if M.zero in powers:
            continue
        face = frozenset().union(*(divisors_of[z] for z in powers))
        candidate = frozenset(M.elements) - face
        if not is_prime(M, candidate):
            raise InternalConsistencyError(f"{M.name}: complement of filter of {f} is not prime")
        primes.add(candidate)
    result = sorted(primes, key=lambda i: (len(i), sorted(i)))
    if maximal_prime(M) not in primes:
        raise InternalConsistencyError(f"{M.name}: maximal prime missing from spectrum")
    logger.debug(f"{M.name}: {len(result)} prime ideals")
    return result


def prime_ideals_exhaustive(M: PointedMonoid) -> List[Ideal]:
    """Primes by testing every subset containing 0; only for small monoids."""
    if M.size > 16:
        raise ResourceError(f"exhaustive prime search limited to 16 elements, {M.name} has {M.size}")
    others = [x for x in M.elements if x != M.zero]
    found = []
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            candidate = frozenset(extra) | {M.zero}
            if is_prime(M, candidate):
                found.append(candidate)
    return sorted(found, key=lambda i: (len(i), sorted(i)))


def radical(M: PointedMonoid, ideal: Iterable[int]) -> Ideal:
    """{x : x^k lies in the ideal for some k >= 1}."""
    s = set(ideal)
    return frozenset(x for x in M.elements if M.positive_powers(x) & s)


def primes_containing(M: PointedMonoid, ideal: Iterable[int]) -> List[Ideal]:
    s = frozenset(ideal)
    return [p for p in prime_ideals(M) if s <= p]


def basic_open(M: PointedMonoid, f: int) -> FrozenSet[Ideal]:
    """D(f): the primes not containing f."""
    return frozenset(p for p in prime_ideals(M) if f not in p)


def is_cover(M: PointedMonoid, fs: Iterable[int]) -> bool:
    spectrum = frozenset(prime_ideals(M))
    covered = frozenset().union(*(basic_open(M, f) for f in fs)) if fs else frozenset()
    return covered == spectrum


def cover_has_whole_member(M: PointedMonoid, fs: Iterable[int]) -> bool:
    spectrum = frozenset(prime_ideals(M))
    return any(basic_open(M, f) == spectrum for f in fs)


# Localization

def multiplicative_closure(M: PointedMonoid, generators: Iterable[int]) -> FrozenSet[int]:
    closure = {M.one}
    frontier = list(closure)
    gens = list(generators)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = M.mul(x, g)
            if y not in closure:
                closure.add(y)
                frontier.append(y)
    return frozenset(closure)


@dataclass
class Localization:
    """M_S together with the canonical map M -> M_S."""

    monoid: PointedMonoid
    canonical_map: List[int]
    classes: List[List[Tuple[int, int]]] = field(repr=False)


def localize_at(M: PointedMonoid, S: Iterable[int]) -> Localization:
    """
    Localize M at the multiplicative subset generated by S.

    Pairs (m, s) and (m', s') are identified when t m s' = t m' s for some t
    in S. For finite S it suffices to test t = e, the idempotent power of
    the product of all members of S.
    """
    closed = sorted(multiplicative_closure(M, S))
    if M.zero in closed:
        logger.warning(f"{M.name}: localizing at a set containing 0 gives the trivial monoid")
        trivial = PointedMonoid.trivial()
        return Localization(trivial, [0] * M.size, [[(m, s) for m in M.elements for s in closed]])

    z = M.one
    for s in closed:
        z = M.mul(z, s)
    e = next(p for p in M.positive_powers(z) if M.mul(p, p) == p)

    reps: List[Tuple[int, int]] = []
    members: List[List[Tuple[int, int]]] = []
    class_of: Dict[Tuple[int, int], int] = {}
    for m in M.elements:
        for s in closed:
            for k, (m2, s2) in enumerate(reps):
                if M.mul(e, M.mul(m, s2)) == M.mul(e, M.mul(m2, s)):
                    class_of[(m, s)] = k
                    members[k].append((m, s))
                    break
            else:
                class_of[(m, s)] = len(reps)
                reps.append((m, s))
                members.append([(m, s)])

    size = len(reps)
    table = [[class_of[(M.mul(m1, m2), M.mul(s1, s2))] for (m2, s2) in reps] for (m1, s1) in reps]
    labels = [M.labels[m] if s == M.one else f"{M.labels[m]}/{M.labels[s]}" for m, s in reps]
    localized = PointedMonoid(table, zero=class_of[(M.zero, M.one)], one=class_of[(M.one, M.one)],
                              labels=labels, name=f"{M.name}_S")
    canonical = [class_of[(m, M.one)] for m in M.elements]
    logger.debug(f"{M.name}: localization has {size} classes")
    return Localization(localized, canonical, members)


def localize(M: PointedMonoid, f: int) -> PointedMonoid:
    """M_f, the localization at {f^n : n >= 0}."""
    if M.is_nilpotent(f):
        logger.warning(f"{M.name}: {M.labels[f]} is nilpotent, M_f collapses to the zero monoid")
    return localize_at(M, [f]).monoid


def residue_field(M: PointedMonoid, prime: Iterable[int]) -> PointedMonoid:
    """Units of the localization at the complement of the prime, with 0 adjoined."""
    p = frozenset(prime)
    if not is_prime(M, p):
        raise DomainError(f"{sorted(p)} is not a prime ideal of {M.name}")
    local = localize_at(M, [x for x in M.elements if x not in p]).monoid
    keep = [local.zero] + [u for u in local.units() if u != local.zero]
    index = {x: k for k, x in enumerate(keep)}
    table = [[index[local.mul(a, b)] for b in keep] for a in keep]
    return PointedMonoid(table, zero=0, one=index[local.one],
                         labels=[local.labels[x] for x in keep], name=f"kappa({M.name})")


# Spec as homomorphisms to F_1

def spec_as_homs_to_F1(M: PointedMonoid) -> List[Tuple[Ideal, Tuple[int, ...]]]:
    """
    For each prime p the morphism M -> {0, 1} vanishing exactly on p.

    Raises:
        InternalConsistencyError: if a map fails to be a unital morphism or
            its kernel differs from the prime it came from
    """
    result = []
    for p in prime_ideals(M):
        phi = tuple(0 if x in p else 1 for x in M.elements)
        if phi[M.one] != 1 or phi[M.zero] != 0:
            raise InternalConsistencyError(f"{M.name}: phi for {sorted(p)} not unital")
        for x, y in itertools.product(M.elements, repeat=2):
            if phi[M.mul(x, y)] != phi[x] * phi[y]:
                raise InternalConsistencyError(f"{M.name}: phi for {sorted(p)} not multiplicative at ({x}, {y})")
        kernel = frozenset(x for x in M.elements if phi[x] == 0)
        if kernel != p:
            raise InternalConsistencyError(f"{M.name}: kernel of phi differs from {sorted(p)}")
        result.append((p, phi))
    return result


def homs_to_F1_exhaustive(M: PointedMonoid) -> List[Tuple[int, ...]]:
    """Every unital morphism M -> {0, 1} sending 0 to 0, by enumeration."""
    if M.size > 16:
        raise ResourceError(f"hom enumeration limited to 16 elements, {M.name} has {M.size}")
    found = []
    for values in itertools.product((0, 1), repeat=M.size):
        if values[M.one] != 1 or values[M.zero] != 0:
            continue
        if all(values[M.mul(x, y)] == values[x] * values[y]
               for x, y in itertools.product(M.elements, repeat=2)):
            found.append(values)
    return found


# Cyclic hom counts and the Fourier form of gcd

def hom_count_cyclic(m: int, n: int) -> int:
    """#Hom(Z/m, Z/n) = gcd(m, n), enumerated as a cross-check when m*n is small."""
    if m < 1 or n < 1:
        raise DomainError(f"cyclic orders must be positive, got ({m}, {n})")
    value = math.gcd(m, n)
    if m * n <= config.HOM_ENUMERATION_LIMIT:
        # images x of the generator must satisfy m*x = 0 in Z/n
        enumerated = sum(1 for x in range(n) if (m * x) % n == 0)
        if enumerated != value:
            raise InternalConsistencyError(f"Hom(Z/{m}, Z/{n}): enumerated {enumerated}, gcd {value}")
    return value


def gcd_fourier(n: int, m: int) -> complex:
    """sum over d | m of (phi(d)/d) * sum_k exp(2 pi i n k / d)."""
    total = 0j
    for d in divisors(m):
        inner = sum(cmath.exp(2j * math.pi * n * k / d) for k in range(d))
        total += totient(d) / d * inner
    return total


# Abelian groups and scheme data

@dataclass(frozen=True)
class FinAbGroup:
    """Z^rank x Z/m_1 x ... x Z/m_r with m_1 | m_2 | ... | m_r, all m_j > 1."""

    invariant_factors: Tuple[int, ...] = ()
    rank: int = 0

    def __post_init__(self):
        if self.rank < 0:
            raise DomainError(f"rank must be non-negative, got {self.rank}")
        factors = self.invariant_factors
        if any(m < 2 for m in factors):
            raise DomainError(f"invariant factors must exceed 1: {factors}")
        if any(factors[k + 1] % factors[k] for k in range(len(factors) - 1)):
            raise DomainError(f"invariant factors must form a divisor chain: {factors}")

    @classmethod
    def from_orders(cls, orders: Iterable[int], rank: int = 0) -> "FinAbGroup":
        """Normalize a product of cyclic groups of the given orders."""
        exponents: Dict[int, List[int]] = {}
        for m in orders:
            if m < 1:
                raise DomainError(f"cyclic order must be positive, got {m}")
            for p, e in factorint(m).items():
                exponents.setdefault(int(p), []).append(int(e))
        length = max((len(v) for v in exponents.values()), default=0)
        factors = [1] * length
        for p, es in exponents.items():
            es = sorted(es)
            es = [0] * (length - len(es)) + es
            for k, e in enumerate(es):
                factors[k] *= p ** e
        return cls(tuple(f for f in factors if f > 1), rank)

    @property
    def torsion_order(self) -> int:
        return math.prod(self.invariant_factors)

    def count_dividing(self, d: int) -> int:
        """Elements of the torsion part whose order divides d."""
        return math.prod(math.gcd(d, m) for m in self.invariant_factors)

    def count_of_order(self, d: int) -> int:
        return sum(mobius(d // e) * self.count_dividing(e) for e in divisors(d))


@dataclass(frozen=True)
class SchemeData:
    """Point data of a Noetherian F_1-scheme: (rank n(x), torsion of O_x^*) per point."""

    points: Tuple[Tuple[int, FinAbGroup], ...]

    def __post_init__(self):
        for rank, torsion in self.points:
            if rank < 0:
                raise DomainError(f"negative rank {rank}")
            if torsion.rank:
                raise DomainError("torsion entries carry no free part; use the point rank")

    @classmethod
    def from_json(cls, data: dict) -> "SchemeData":
        if not isinstance(data, dict) or not isinstance(data.get("points"), list):
            raise ValidationError("scheme data needs a 'points' list")
        points = []
        for k, entry in enumerate(data["points"]):
            try:
                rank = int(entry["rank"])
                torsion = FinAbGroup.from_orders([int(m) for m in entry.get("torsion", [])])
            except (KeyError, TypeError, ValueError, DomainError) as e:
                raise ValidationError(f"point {k}: {e}") from e
            points.append((rank, torsion))
        return cls(tuple(points))

    def to_json(self) -> dict:
        return {"points": [{"rank": r, "torsion": list(h.invariant_factors)} for r, h in self.points]}

    @property
    def max_rank(self) -> int:
        return max((r for r, _ in self.points), default=0)

    def disjoint_union(self, other: "SchemeData") -> "SchemeData":
        return SchemeData(self.points + other.points)

    def torus_shift(self) -> "SchemeData":
        """Product with G_m: one more free generator at every point."""
        return SchemeData(tuple((r + 1, h) for r, h in self.points))


def count_points_F1n(X: SchemeData, n: int) -> int:
    """#X(F_1^n) = sum_x n^n(x) prod_j gcd(n, m_j(x))."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return sum(n ** rank * torsion.count_dividing(n) for rank, torsion in X.points)
