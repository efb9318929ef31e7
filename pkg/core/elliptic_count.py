"""
Elliptic curve module for char1

This module provides:
- Weierstrass models over Q with their standard invariants
- Point counting mod p and reduction-type classification
- The coefficients a(n) of the 11a newform from its eta-product expansion
- The multiplicative function t(n) with N(q, E) = q + 1 - t(q)
- The Dirichlet-series identity t = a * (1/zeta(2s-1)) * (1/M)
- The catalog of singularities of the discrete zeta of E
"""

import math
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from sympy import factorint

import config
from core import get_worker_pool
from core.arith import legendre, require_prime, smallest_prime_factor_sieve, valuation, weierstrass_discriminant
from core.dirichlet import DirichletCoeffs, euler_factor_inverse, zeta_2s_minus_1_inverse
from core.data_validation import validate_curve_data
from core.errors import DomainError, ResourceError, ValidationError
from core.storage import load_json_file

# Initialize logger
logger = logging.getLogger(__name__)


class ReductionType(Enum):
    GOOD = "good"
    SPLIT = "split multiplicative"
    NONSPLIT = "non-split multiplicative"
    ADDITIVE = "additive"


@dataclass(frozen=True)
class CurveModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, assumed minimal at every prime."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    label: str = ""

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValidationError(f"singular Weierstrass model {self.coefficients}")

    @classmethod
    def from_list(cls, a: Sequence[int], label: str = "") -> "CurveModel":
        if len(a) != 5:
            raise ValidationError(f"curve needs [a1, a2, a3, a4, a6], got {list(a)}")
        return cls(*(int(v) for v in a), label=label)

    @property
    def coefficients(self) -> Tuple[int, int, int, int, int]:
        return self.a1, self.a2, self.a3, self.a4, self.a6

    @property
    def b2(self) -> int:
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self) -> int:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> int:
        return self.a3 ** 2 + 4 * self.a6

    @property
    def c4(self) -> int:
        return self.b2 ** 2 - 24 * self.b4

    @property
    def discriminant(self) -> int:
        return weierstrass_discriminant(*self.coefficients)

    @property
    def bad_primes(self) -> List[int]:
        return sorted(int(p) for p in factorint(abs(self.discriminant)))


def load_curve(path: str) -> CurveModel:
    """Read ``{"a": [a1, a2, a3, a4, a6]}``."""
    data = load_json_file(path)
    ok, errors = validate_curve_data(data)
    if not ok:
        raise ValidationError(f"invalid curve file {path}: " + "; ".join(errors))
    label = data.get("label", "")
    return CurveModel.from_list(data["a"], label=label)


def curve_11a() -> CurveModel:
    return CurveModel(0, -1, 1, -10, -20, label="11a")


def _check_prime(p: int) -> None:
    require_prime(p)
    if p > config.POINT_COUNT_MAX_P:
        raise ResourceError(f"p = {p} exceeds {config.POINT_COUNT_MAX_P}")


def _count_by_enumeration(E: CurveModel, p: int) -> int:
    a1, a2, a3, a4, a6 = (c % p for c in E.coefficients)
    count = 1
    for x in range(p):
        rhs = (x ** 3 + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - rhs) % p == 0:
                count += 1
    return count


def count_points_modp(E: CurveModel, p: int) -> int:
    """
    #E(F_p), the point at infinity and any singular point included.

    For p >= 5 the completed square 4y'^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 is
    summed with Legendre symbols; p = 2, 3 are enumerated directly.
    """
    _check_prime(p)
    if p < 5:
        return _count_by_enumeration(E, p)
    xs = np.arange(p, dtype=np.int64)
    rhs = (4 * (xs * xs % p) * xs + (E.b2 % p) * (xs * xs % p) + (2 * E.b4 % p) * xs + E.b6 % p) % p
    squares = np.full(p, -1, dtype=np.int64)
    squares[(xs * xs) % p] = 1
    squares[0] = 0
    return int(p + 1 + squares[rhs].sum())


def _singular_x(poly: Sequence[int], p: int) -> Optional[int]:
    """A double root mod p of x^3 + A2 x^2 + A4 x + A6."""
    A2, A4, A6 = poly
    for x in range(p):
        value = (x ** 3 + A2 * x * x + A4 * x + A6) % p
        deriv = (3 * x * x + 2 * A2 * x + A4) % p
        if value == 0 and deriv == 0:
            return x
    return None


def _warn_if_not_minimal(E: CurveModel, p: int) -> None:
    if valuation(E.discriminant, p) >= 12 and (E.c4 == 0 or valuation(E.c4, p) >= 4):
        logger.warning(f"model {E.coefficients} may not be minimal at p={p}; reduction type assumes minimality")


def reduction_type(E: CurveModel, p: int) -> ReductionType:
    """
    Good, split or non-split multiplicative, or additive reduction at p.

    At a bad p >= 3 the model is moved to y^2 = f(x) with f having a double
    root x0; writing f = (x - x0)^2 (x - x0 - beta') the tangent cone is
    y^2 = -beta (x - x0)^2 with beta = -(3 x0 + A2): beta = 0 is a cusp,
    otherwise the node splits iff -beta is a square. At p = 2 the tangent
    cone Y^2 + a1 XY - (3 x0 + a2) X^2 is split iff it factors over F_2.
    """
    _check_prime(p)
    if E.discriminant % p:
        return ReductionType.GOOD
    _warn_if_not_minimal(E, p)
    a1, a2, a3, a4, a6 = E.coefficients

    if p == 2:
        for x0 in range(2):
            for y0 in range(2):
                f = (y0 * y0 + a1 * x0 * y0 + a3 * y0 - (x0 ** 3 + a2 * x0 * x0 + a4 * x0 + a6)) % 2
                fx = (a1 * y0 - (3 * x0 * x0 + 2 * a2 * x0 + a4)) % 2
                fy = (2 * y0 + a1 * x0 + a3) % 2
                if f == 0 and fx == 0 and fy == 0:
                    if a1 % 2 == 0:
                        return ReductionType.ADDITIVE
                    # Y^2 + XY + c X^2 splits over F_2 iff c is even
                    return ReductionType.SPLIT if (3 * x0 + a2) % 2 == 0 else ReductionType.NONSPLIT
        raise DomainError(f"no singular point found mod 2 for {E.coefficients}")

    inv2 = pow(2, -1, p)
    inv4 = inv2 * inv2 % p
    A2 = (a2 + a1 * a1 * inv4) % p
    A4 = (a4 + a1 * a3 * inv2) % p
    A6 = (a6 + a3 * a3 * inv4) % p
    x0 = _singular_x((A2, A4, A6), p)
    if x0 is None:
        raise DomainError(f"no singular point found mod {p} for {E.coefficients}")
    beta = (-(3 * x0 + A2)) % p
    if beta == 0:
        return ReductionType.ADDITIVE
    return ReductionType.SPLIT if legendre(-beta, p) == 1 else ReductionType.NONSPLIT


# Modular coefficients of 11a

def _pentagonal_series(N: int, step: int = 1) -> np.ndarray:
    """prod_n (1 - q^(step n)) mod q^(N+1) by Euler's pentagonal number theorem."""
    series = np.zeros(N + 1, dtype=np.int64)
    k = 0
    while True:
        done = True
        for m in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2) if k else (0,):
            e = m * step
            if e <= N:
                series[e] = -1 if k % 2 else 1
                done = False
        if done and k:
            break
        k += 1
    return series


def _mul_series(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated product of two power series, b sparse."""
    N = a.size - 1
    result = np.zeros(N + 1, dtype=np.int64)
    for e in np.nonzero(b)[0]:
        result[e:] += b[e] * a[:N + 1 - e]
    return result


def eta_coeffs(N: int) -> DirichletCoeffs:
    """a(n) for n <= N from q prod (1 - q^n)^2 (1 - q^(11n))^2."""
    if not 1 <= N <= config.ETA_MAX_N:
        raise ResourceError(f"N must lie in 1..{config.ETA_MAX_N}, got {N}")
    P = _pentagonal_series(N)
    P11 = _pentagonal_series(N, 11)
    series = _mul_series(_mul_series(_mul_series(P, P), P11), P11)
    coeffs = np.zeros(N + 1, dtype=np.int64)
    coeffs[1:] = series[:N]
    logger.info(f"Expanded the 11a eta product through q^{N}")
    return DirichletCoeffs(coeffs, "a")


def t_coeffs(N: int, a_primes: Dict[int, int], types: Dict[int, ReductionType]) -> DirichletCoeffs:
    """
    The multiplicative t(n), n <= N.

    Args:
        N: coefficient range
        a_primes: a(p) for every good prime p <= N
        types: reduction type for every bad prime (absent primes are good)

    Raises:
        DomainError: if a(p) is missing for a good prime p <= N
    """
    spf = smallest_prime_factor_sieve(N)
    t = np.zeros(N + 1, dtype=np.int64)
    t[1] = 1
    local: Dict[int, List[int]] = {}

    def local_values(p: int) -> List[int]:
        if p in local:
            return local[p]
        kind = types.get(p, ReductionType.GOOD)
        values = [1]
        q = p
        while q <= N:
            ell = len(values)
            if kind is ReductionType.GOOD:
                if p not in a_primes:
                    raise DomainError(f"a({p}) missing")
                # power sums of the Frobenius roots start from 2 at l = 0
                prev2 = 2 if ell == 2 else (values[ell - 2] if ell > 2 else 0)
                values.append(a_primes[p] * values[ell - 1] - p * prev2)
            elif kind is ReductionType.SPLIT:
                values.append(1)
            elif kind is ReductionType.NONSPLIT:
                values.append((-1) ** ell)
            else:
                values.append(0)
            q *= p
        local[p] = values
        return values

    for n in range(2, N + 1):
        p = int(spf[n])
        m, ell = n, 0
        while m % p == 0:
            m //= p
            ell += 1
        t[n] = t[m] * local_values(p)[ell]
    return DirichletCoeffs(t, "t")


def good_prime_traces(E: CurveModel, N: int) -> Dict[int, int]:
    """a(p) = p + 1 - #E(F_p) for the good primes p <= N, counted in parallel."""
    spf = smallest_prime_factor_sieve(N)
    primes = [int(p) for p in range(2, N + 1) if spf[p] == p and E.discriminant % p]
    counts = list(get_worker_pool().map(lambda p: count_points_modp(E, p), primes))
    return {p: p + 1 - c for p, c in zip(primes, counts)}


def reduction_types(E: CurveModel) -> Dict[int, ReductionType]:
    return {p: reduction_type(E, p) for p in E.bad_primes}


def t_coeffs_for_curve(E: CurveModel, N: int, a: Optional[DirichletCoeffs] = None) -> DirichletCoeffs:
    """t(n) for a curve; a(p) from the supplied coefficients or from point counts."""
    types = reduction_types(E)
    if a is not None:
        spf = smallest_prime_factor_sieve(N)
        a_primes = {p: a[p] for p in range(2, N + 1) if spf[p] == p and p not in types}
    else:
        a_primes = good_prime_traces(E, N)
    return t_coeffs(N, a_primes, types)


def points_over_prime_power(E: CurveModel, p: int, ell: int, t: Optional[DirichletCoeffs] = None) -> int:
    """N(p^l, E) = p^l + 1 - t(p^l), never by enumerating F_{p^l}."""
    if ell < 1:
        raise DomainError(f"extension degree must be >= 1, got {ell}")
    q = p ** ell
    if t is not None and t.N >= q:
        return q + 1 - t[q]
    kind = reduction_type(E, p)
    a_p = p + 1 - count_points_modp(E, p) if kind is ReductionType.GOOD else None
    return q + 1 - _local_t(p, ell, a_p, kind)


def _local_t(p: int, ell: int, a_p: Optional[int], kind: ReductionType) -> int:
    if kind is ReductionType.SPLIT:
        return 1
    if kind is ReductionType.NONSPLIT:
        return (-1) ** ell
    if kind is ReductionType.ADDITIVE:
        return 0 if ell else 1
    prev, cur = 2, a_p
    if ell == 0:
        return 1
    # alpha^l + conj(alpha)^l via the trace recurrence
    for _ in range(ell - 1):
        prev, cur = cur, a_p * cur - p * prev
    return cur


def counting_coeffs(t: DirichletCoeffs) -> DirichletCoeffs:
    """N(n) = n + 1 - t(n)."""
    n = np.arange(t.N + 1, dtype=np.int64)
    return DirichletCoeffs(n + 1 - t.coeffs, "N")


def hasse_violations(t: DirichletCoeffs, N: Optional[int] = None,
                     bad_primes: Sequence[int] = ()) -> List[int]:
    """Prime powers q <= N at good primes with |t(q)| > 2 sqrt(q)."""
    N = t.N if N is None else min(N, t.N)
    spf = smallest_prime_factor_sieve(N)
    violations = []
    for q in range(2, N + 1):
        p = int(spf[q])
        if p in bad_primes:
            continue
        m = q
        while m % p == 0:
            m //= p
        if m == 1 and t[q] * t[q] > 4 * q:
            violations.append(q)
    return violations


# Dirichlet identity

@dataclass
class IdentityReport:
    success: bool
    N: int
    first_failure: Optional[int] = None
    local_failures: Dict[int, str] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)


def _local_series(values: DirichletCoeffs, p: int, order: int) -> List[int]:
    series = []
    q = 1
    for _ in range(order + 1):
        if q > values.N:
            break
        series.append(values[q])
        q *= p
    return series


def dirichlet_identity_check(E: CurveModel, N: int, a: Optional[DirichletCoeffs] = None,
                             local_order: int = 8) -> IdentityReport:
    """
    Check t = a * (1/zeta(2s - 1)) * (1/M(s)) through n <= N, and the local
    identities (1 - p x^2) sum a(p^n) x^n = sum t(p^n) x^n at good p.

    Args:
        E: curve
        N: coefficient range
        a: the a(n) of the attached newform (defaults to the 11a eta product
            when E is 11a, otherwise a(n) built from point counts)
        local_order: truncation order of the local identities
    """
    types = reduction_types(E)
    if a is None:
        if E.coefficients == curve_11a().coefficients:
            a = eta_coeffs(N)
        else:
            a = _a_from_points(E, N, types)
    t = t_coeffs_for_curve(E, N, a)
    rhs = a.convolve(zeta_2s_minus_1_inverse(N)).convolve(euler_factor_inverse(types, N))
    mismatch = t.first_mismatch(rhs)
    report = IdentityReport(success=mismatch is None, N=N, first_failure=mismatch)
    if mismatch is not None:
        report.errors.append(f"t({mismatch}) = {t[mismatch]} but the convolution gives {rhs[mismatch]}")

    # local identities at primes whose square is in range
    spf = smallest_prime_factor_sieve(N)
    for p in (int(q) for q in range(2, N + 1) if spf[q] == q):
        if p * p > N:
            break
        a_loc = _local_series(a, p, local_order)
        t_loc = _local_series(t, p, local_order)
        if p in types:
            expected = [_local_t(p, ell, None, types[p]) for ell in range(len(t_loc))]
            if t_loc != expected or a_loc != expected:
                report.local_failures[p] = f"bad prime {p}: t={t_loc}, a={a_loc}, expected {expected}"
            continue
        lhs = [a_loc[n] - (p * a_loc[n - 2] if n >= 2 else 0) for n in range(len(a_loc))]
        if lhs != t_loc:
            report.local_failures[p] = f"(1 - {p}x^2) a-series {lhs} != t-series {t_loc}"
    if report.local_failures:
        report.success = False
        report.errors.extend(report.local_failures.values())
    logger.info(f"Dirichlet identity through {N}: {'holds' if report.success else 'fails'}")
    return report


def _a_from_points(E: CurveModel, N: int, types: Dict[int, ReductionType]) -> DirichletCoeffs:
    """a(n) of L(s, E) from point counts: a(p^l) = a(p) a(p^(l-1)) - p a(p^(l-2)), bad p: a(p^l) = a(p)^l."""
    spf = smallest_prime_factor_sieve(N)
    traces = good_prime_traces(E, N)
    bad_a = {ReductionType.SPLIT: 1, ReductionType.NONSPLIT: -1, ReductionType.ADDITIVE: 0}
    coeffs = np.zeros(N + 1, dtype=np.int64)
    coeffs[1] = 1
    for n in range(2, N + 1):
        p = int(spf[n])
        m, ell = n, 0
        while m % p == 0:
            m //= p
            ell += 1
        if p in types:
            local = bad_a[types[p]] ** ell
        else:
            prev, cur = 1, traces[p]
            for _ in range(ell - 1):
                prev, cur = cur, traces[p] * cur - p * prev
            local = cur
        coeffs[n] = coeffs[m] * local
    return DirichletCoeffs(coeffs, "a")


def discrete_identity_defect(t: DirichletCoeffs) -> Optional[int]:
    """
    First n where sum N(n) n^(-s-1) and zeta(s+1) + zeta(s) - R(s+1) disagree.

    Both sides are sum_n c(n) n^(-s-1); on the right c(n) = 1 + n - t(n).
    """
    left = counting_coeffs(t)
    ones = DirichletCoeffs(np.ones(t.N + 1, dtype=np.int64))
    identity = DirichletCoeffs(np.arange(t.N + 1, dtype=np.int64))
    right = ones + identity - t
    return left.first_mismatch(right)


# Singularities

@dataclass(frozen=True)
class Singularity:
    location: complex
    source: str
    order: Optional[int]
    conditional: bool = False

    def to_json(self) -> dict:
        return {"re": self.location.real, "im": self.location.imag, "source": self.source,
                "order": self.order, "conditional": self.conditional}


def singularity_catalog(E: CurveModel, window: Tuple[float, float, float, float],
                        include_zero_points: bool = False) -> List[Singularity]:
    """
    Closed-form singularities of zeta_E^disc inside re_min <= Re <= re_max, im_min <= Im <= im_max.

    Args:
        E: curve (only its bad primes matter)
        window: (re_min, re_max, im_min, im_max)
        include_zero_points: also list -1/4 + i gamma/2 for the zeta zeros gamma in the
            window, each flagged conditional

    Returns:
        singularities sorted by (Re, Im); the Re = -1/4 line is one conditional item
    """
    re_min, re_max, im_min, im_max = window
    if not (re_min <= re_max and im_min <= im_max):
        raise DomainError(f"empty window {window}")

    def inside(z: complex) -> bool:
        return re_min <= z.real <= re_max and im_min <= z.imag <= im_max

    found: List[Singularity] = []
    for z, source in ((0j, "pole of zeta(s+1)"), (1 + 0j, "pole of zeta(s)")):
        if inside(z):
            found.append(Singularity(z, source, 1))

    n = 1
    while -n - 0.5 >= re_min:
        z = complex(-n - 0.5, 0)
        if inside(z):
            found.append(Singularity(z, "trivial zero of zeta(2s+1)", 1))
        n += 1

    bad = E.bad_primes
    if inside(complex(-0.5, 0)) and bad:
        found.append(Singularity(complex(-0.5, 0), "zeros of M(s+1) at " + ",".join(map(str, bad)), len(bad)))
    for p in bad:
        spacing = math.pi / math.log(p)
        k = 1
        while k * spacing <= max(abs(im_min), abs(im_max)):
            for sign in (1, -1):
                z = complex(-0.5, sign * k * spacing)
                if inside(z):
                    found.append(Singularity(z, f"zero of 1 - {p}^(-2s-1)", 1))
            k += 1

    if re_min <= -0.25 <= re_max:
        found.append(Singularity(complex(-0.25, 0), "line Re(s) = -1/4 from zeros of zeta(2s+1) (assumes RH)",
                                 None, conditional=True))
        if include_zero_points:
            k = 1
            while True:
                gamma = float(mpmath.zetazero(k).imag)
                if gamma / 2 > max(abs(im_min), abs(im_max)):
                    break
                for sign in (1, -1):
                    z = complex(-0.25, sign * gamma / 2)
                    if inside(z):
                        found.append(Singularity(z, f"zeta zero #{k} (assumes RH)", 1, conditional=True))
                k += 1
    return sorted(found, key=lambda s: (s.location.real, s.location.imag, s.conditional))
