"""
Additive structures module for char1

Addition laws on K = H u {0}, H cyclic of order n, are encoded by maps
s: K -> K with s(0) = 1 commuting with every conjugate x s(x^-1 .). This
module searches for such maps, builds them from finite fields, derives the
addition table they define and inspects the graphs of p = 2 symmetries.

Indices: 0 is the zero element and index k >= 1 is g^(k-1) for a fixed
generator g of H, so index 1 is the unit.
"""

import math
import logging
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import config
from core import get_worker_pool
from core.arith import prime_power, totient
from core.errors import DomainError, InternalConsistencyError, PreconditionError, ResourceError
from core.finite_field import get_finite_field
from core.storage import write_csv_rows

# Initialize logger
logger = logging.getLogger(__name__)


class CyclicWithZero:
    """Index arithmetic on F_1^n = Z/n u {0}."""

    def __init__(self, n: int):
        if n < 1:
            raise DomainError(f"group order must be >= 1, got {n}")
        self.n = n

    @property
    def elements(self) -> range:
        return range(self.n + 1)

    @property
    def units(self) -> range:
        return range(1, self.n + 1)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return (a + b - 2) % self.n + 1

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("0 has no inverse")
        return (-(a - 1)) % self.n + 1

    def power_index(self, e: int) -> int:
        return e % self.n + 1


@dataclass(frozen=True)
class SymmetryMap:
    """s on F_1^n given by its values on the indices 0..n."""

    n: int
    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.n + 1:
            raise DomainError(f"symmetry on F1^{self.n} needs {self.n + 1} values, got {len(self.values)}")
        if any(not 0 <= v <= self.n for v in self.values):
            raise DomainError(f"symmetry values out of range: {self.values}")

    def __call__(self, x: int) -> int:
        return self.values[x]

    @property
    def is_normalized(self) -> bool:
        return self.values[0] == 1

    @property
    def is_bijective(self) -> bool:
        return len(set(self.values)) == self.n + 1

    @property
    def is_retraction(self) -> bool:
        return all(self.values[v] == v for v in self.values)

    @property
    def is_involution(self) -> bool:
        return all(self.values[self.values[x]] == x for x in range(self.n + 1))

    def compose(self, other: "SymmetryMap") -> "SymmetryMap":
        """self o other."""
        return SymmetryMap(self.n, tuple(self.values[other.values[x]] for x in range(self.n + 1)))

    def power(self, k: int) -> "SymmetryMap":
        result = SymmetryMap(self.n, tuple(range(self.n + 1)))
        for _ in range(k):
            result = self.compose(result)
        return result

    def inverse_image(self, y: int) -> List[int]:
        return [x for x, v in enumerate(self.values) if v == y]


def commutation_witness(sym: SymmetryMap) -> Optional[Tuple[int, int, int, int]]:
    """First (x, y, lhs, rhs) with s(x s(y/x)) != x s(s(y)/x), or None."""
    ar = CyclicWithZero(sym.n)
    s = sym.values
    for x in ar.units:
        xi = ar.inv(x)
        for y in ar.elements:
            lhs = s[ar.mul(x, s[ar.mul(y, xi)])]
            rhs = ar.mul(x, s[ar.mul(s[y], xi)])
            if lhs != rhs:
                return x, y, lhs, rhs
    return None


# Brute-force search with constraint propagation

def _propagate(s: List[Optional[int]], ar: CyclicWithZero) -> bool:
    """
    Close s under the equations s(x u) = x s(v/x) with u = s(y/x), v = s(y).
    Returns False on a contradiction; fills forced values in place.
    """
    changed = True
    while changed:
        changed = False
        for x in ar.units:
            xi = ar.inv(x)
            for y in ar.elements:
                u = s[ar.mul(y, xi)]
                a = ar.mul(x, u) if u is not None else None
                left = s[a] if a is not None else None
                v = s[y]
                b = ar.mul(v, xi) if v is not None else None
                r = s[b] if b is not None else None
                right = ar.mul(x, r) if r is not None else None
                if left is not None and right is not None:
                    if left != right:
                        return False
                elif left is not None and b is not None:
                    s[b] = ar.mul(xi, left)
                    changed = True
                elif right is not None and a is not None:
                    s[a] = right
                    changed = True
    return True


def _next_variable(s: List[Optional[int]]) -> int:
    """Follow the orbit of 0 under s; fall back to the least unassigned index."""
    x, seen = 0, set()
    while s[x] is not None and x not in seen:
        seen.add(x)
        x = s[x]
        if s[x] is None:
            return x
    return s.index(None)


def _search_branch(s: List[Optional[int]], ar: CyclicWithZero) -> List[Tuple[int, ...]]:
    s = list(s)
    if not _propagate(s, ar):
        return []
    if None not in s:
        return [tuple(s)]
    k = _next_variable(s)
    found = []
    for value in ar.elements:
        branch = list(s)
        branch[k] = value
        found.extend(_search_branch(branch, ar))
    return found


def _search_brute(n: int) -> List[SymmetryMap]:
    if n > config.BRUTE_SEARCH_MAX_N:
        raise ResourceError(f"brute search limited to n <= {config.BRUTE_SEARCH_MAX_N}, got {n}")
    ar = CyclicWithZero(n)
    root: List[Optional[int]] = [None] * (n + 1)
    root[0] = 1
    if not _propagate(root, ar):
        return []
    if None not in root:
        candidates = [tuple(root)]
    else:
        k = _next_variable(root)
        branches = []
        for value in ar.elements:
            branch = list(root)
            branch[k] = value
            branches.append(branch)
        results = get_worker_pool().map(lambda b: _search_branch(b, ar), branches)
        candidates = [c for chunk in results for c in chunk]
    maps = sorted({SymmetryMap(n, c) for c in candidates}, key=lambda m: m.values)
    for sym in maps:
        if commutation_witness(sym) is not None:
            raise InternalConsistencyError(f"search returned a non-commuting map {sym.values}")
    return maps


def boolean_retraction() -> SymmetryMap:
    """The idempotent map on F_1 = {0, 1} with s(0) = s(1) = 1, giving the Boolean semifield."""
    return SymmetryMap(1, (1, 1))


def build_field_symmetry(p: int, ell: int, generator_choice: int = 0) -> SymmetryMap:
    """
    s(x) = j^-1(j(x) + 1) where j sends g^e to gamma^e for a primitive
    element gamma of F_{p^l}.

    Args:
        p: prime
        ell: extension degree
        generator_choice: index of gamma among the primitive elements, sorted
            by their integer encoding

    Returns:
        SymmetryMap on F_1^(p^l - 1)
    """
    field = get_finite_field(p, ell)
    gamma = field.primitive_element(generator_choice)
    n = field.q - 1

    def j(a: int) -> int:
        return 0 if a == 0 else field.power(gamma, a - 1)

    def j_inv(x: int) -> int:
        return 0 if x == 0 else field.log(x, gamma) + 1

    values = tuple(j_inv(field.add(j(a), 1)) for a in range(n + 1))
    sym = SymmetryMap(n, values)
    if sym.power(p).values != tuple(range(n + 1)):
        raise InternalConsistencyError(f"s^{p} is not the identity for F_{field.q}")
    return sym


def _search_constructive(n: int) -> List[SymmetryMap]:
    pp = prime_power(n + 1)
    if pp is None:
        return []
    p, ell = pp
    if (n + 1) > config.FIELD_MAX_ORDER:
        raise ResourceError(f"field order {n + 1} exceeds {config.FIELD_MAX_ORDER}")
    field = get_finite_field(p, ell)
    maps = {build_field_symmetry(p, ell, k) for k in range(len(field.primitive_elements))}
    if n == 1:
        maps.add(boolean_retraction())
    return sorted(maps, key=lambda m: m.values)


def search_A(n: int, mode: str = "brute") -> List[SymmetryMap]:
    """
    All s on F_1^n with s(0) = 1 commuting with their conjugates.

    Args:
        n: order of the cyclic group
        mode: "brute" (propagation search, n <= 10) or "constructive"
            (finite-field construction, empty unless n+1 is a prime power)

    Returns:
        the maps sorted by their value tuples
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if mode == "brute":
        maps = _search_brute(n)
    elif mode == "constructive":
        maps = _search_constructive(n)
    else:
        raise DomainError(f"unknown search mode {mode!r}")
    logger.info(f"A(F1^{n}) [{mode}]: {len(maps)} structures")
    return maps


def expected_count(n: int) -> int:
    """phi(p^l - 1)/l when n + 1 = p^l, 2 for n = 1, else 0."""
    if n == 1:
        return 2
    pp = prime_power(n + 1)
    if pp is None:
        return 0
    p, ell = pp
    return totient(n) // ell


# Derived addition

@dataclass(frozen=True)
class DerivedAddition:
    """Addition table on F_1^n built from a symmetry."""

    n: int
    table: Tuple[Tuple[int, ...], ...]

    def add(self, x: int, y: int) -> int:
        return self.table[x][y]


def _law(sym: SymmetryMap, ar: CyclicWithZero, x: int, y: int) -> int:
    if x == 0:
        return y
    s0 = sym(0)
    return ar.mul(ar.inv(s0), ar.mul(x, sym(ar.mul(s0, ar.mul(y, ar.inv(x))))))


def addition_from_symmetry(sym: SymmetryMap) -> DerivedAddition:
    """
    x + y = y if x = 0, else s(0)^-1 x s(s(0) y x^-1).

    Raises:
        PreconditionError: s(0) = 0, a commutation failure (witness attached),
            or s neither bijective nor idempotent
        InternalConsistencyError: if the resulting law fails an axiom
    """
    if sym(0) == 0:
        raise PreconditionError("s(0) must be non-zero", witness=(0, sym(0)))
    witness = commutation_witness(sym)
    if witness is not None:
        raise PreconditionError(f"s does not commute with its conjugates at x={witness[0]}, y={witness[1]}",
                                witness=witness)
    bijective, retraction = sym.is_bijective, sym.is_retraction
    if not (bijective or retraction):
        raise PreconditionError("s must be bijective or satisfy s o s = s", witness=sym.values)

    ar = CyclicWithZero(sym.n)
    table = tuple(tuple(_law(sym, ar, x, y) for y in ar.elements) for x in ar.elements)
    result = DerivedAddition(sym.n, table)

    for x, y in itertools.product(ar.elements, repeat=2):
        if table[x][y] != table[y][x]:
            raise InternalConsistencyError(f"derived addition not commutative at ({x}, {y})")
    for x, y, z in itertools.product(ar.elements, repeat=3):
        if table[table[x][y]][z] != table[x][table[y][z]]:
            raise InternalConsistencyError(f"derived addition not associative at ({x}, {y}, {z})")
        if ar.mul(x, table[y][z]) != table[ar.mul(x, y)][ar.mul(x, z)]:
            raise InternalConsistencyError(f"derived addition not distributive at ({x}, {y}, {z})")
    if bijective:
        theta = ar.mul(ar.inv(sym(0)), sym.inverse_image(0)[0])
        for x in ar.elements:
            if table[x][ar.mul(theta, x)] != 0:
                raise InternalConsistencyError(f"theta*{x} is not the additive inverse of {x}")
    else:
        if table[1][1] != 1:
            raise InternalConsistencyError("retraction case must give 1 + 1 = 1")
    return result


def addition_from_retraction(retraction: Callable[[Fraction], Fraction],
                             grid: Iterable[Fraction]) -> Dict[Tuple[Fraction, Fraction], Fraction]:
    """
    The same law for a retraction of the positive rationals sampled on a grid:
    x + y = s(0)^-1 x s(s(0) y / x).

    Raises:
        PreconditionError: if s(0) = 0 or s o s != s on the sampled values
    """
    points = [Fraction(v) for v in grid]
    s0 = Fraction(retraction(Fraction(0)))
    if s0 == 0:
        raise PreconditionError("s(0) must be non-zero", witness=(Fraction(0), s0))
    for v in points:
        once = Fraction(retraction(v))
        if Fraction(retraction(once)) != once:
            raise PreconditionError(f"s o s != s at {v}", witness=v)
    table = {}
    for x in points:
        for y in points:
            if x == 0:
                table[(x, y)] = y
            else:
                table[(x, y)] = x * Fraction(retraction(s0 * y / x)) / s0
    return table


def field_axioms_report(sym: SymmetryMap) -> Dict[str, object]:
    """Exhaustive field-axiom check for the law derived from a bijective s."""
    report = {"success": True, "errors": [], "warnings": [], "info": []}
    ar = CyclicWithZero(sym.n)
    try:
        add = addition_from_symmetry(sym)
    except (PreconditionError, InternalConsistencyError) as e:
        report["success"] = False
        report["errors"].append(str(e))
        return report
    els = list(ar.elements)
    for x in els:
        if add.add(0, x) != x:
            report["errors"].append(f"0 is not neutral for {x}")
        if not any(add.add(x, y) == 0 for y in els):
            report["errors"].append(f"{x} has no additive inverse")
    for x in ar.units:
        if not any(ar.mul(x, y) == 1 for y in ar.units):
            report["errors"].append(f"{x} has no multiplicative inverse")
    for x, y, z in itertools.product(els, repeat=3):
        if ar.mul(x, add.add(y, z)) != add.add(ar.mul(x, y), ar.mul(x, z)):
            report["errors"].append(f"distributivity fails at ({x}, {y}, {z})")
            break
    order = sym.n + 1
    if prime_power(order) is None:
        report["errors"].append(f"order {order} is not a prime power")
    else:
        p = prime_power(order)[0]
        for x in els:
            total = 0
            for _ in range(p):
                total = add.add(total, x)
            if total != 0:
                report["errors"].append(f"{p}*{x} != 0")
                break
        report["info"].append(f"characteristic {p}, order {order}")
    report["success"] = not report["errors"]
    return report


# Conjugation, rotations and graphs

def conjugating_automorphism(s1: SymmetryMap, s2: SymmetryMap) -> Optional[int]:
    """
    A unit u mod n with s2 = a_u s1 a_u^-1, a_u(g^e) = g^(ue), or None.
    """
    if s1.n != s2.n:
        return None
    n = s1.n

    def alpha(u: int, a: int) -> int:
        return 0 if a == 0 else ((a - 1) * u) % n + 1

    for u in range(1, n + 1):
        if math.gcd(u, n) != 1:
            continue
        if all(s2(alpha(u, x)) == alpha(u, s1(x)) for x in range(n + 1)):
            return u
    return None


def rotation_conjugate(sym: SymmetryMap, r: int) -> SymmetryMap:
    """R s R^-1 for the rotation R(x) = r x, r a unit index."""
    ar = CyclicWithZero(sym.n)
    if r == 0:
        raise DomainError("rotation must be a group element")
    ri = ar.inv(r)
    return SymmetryMap(sym.n, tuple(ar.mul(r, sym(ar.mul(ri, x))) for x in ar.elements))


def maps_commute(s1: SymmetryMap, s2: SymmetryMap) -> bool:
    return s1.compose(s2).values == s2.compose(s1).values


def quadrilateral_check(sym: SymmetryMap, rotation: int) -> Tuple[bool, List[int]]:
    """
    Decompose the union of the graphs of s and R s R^-1 into components.

    Returns:
        (every component has at most 4 vertices, sorted component sizes)

    Raises:
        PreconditionError: if s is not an involution
    """
    if not sym.is_involution:
        bad = next(x for x in range(sym.n + 1) if sym(sym(x)) != x)
        raise PreconditionError(f"s is not an involution at {bad}", witness=bad)
    rotated = rotation_conjugate(sym, rotation)

    parent = list(range(sym.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(sym.n + 1):
        for y in (sym(x), rotated(x)):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

    sizes: Dict[int, int] = {}
    for x in range(sym.n + 1):
        root = find(x)
        sizes[root] = sizes.get(root, 0) + 1
    lengths = sorted(sizes.values())
    return all(k <= 4 for k in lengths), lengths


def export_edges(sym: SymmetryMap, path: str, header_line: Optional[str] = None) -> int:
    """Write the edge list (x, s(x)) of G_s as CSV."""
    return write_csv_rows(path, ("x", "s(x)"), ((x, sym(x)) for x in range(sym.n + 1)), header_line)
