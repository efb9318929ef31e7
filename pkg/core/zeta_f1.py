"""
Zeta module for char1

This module provides:
- Cyclic subgroup counts gamma(H, d) and the canonical entire extension N(z)
  of the counting function of a Noetherian F_1-scheme
- The constituents xi_d through their logarithmic derivatives and ratios
- The exact exponents alpha_j of the monomial factors (s - j)^alpha_j
- Integral and discrete logarithmic derivatives of the zeta function
- The von Mangoldt counting profile N(n) = n Lambda(n)
"""

import cmath
import math
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np

import config
from core.arith import divisors, lcm_list, prime_power_base, totient
from core.errors import AccuracyError, DomainError, ResourceError
from core.monoid_spec import FinAbGroup, SchemeData, count_points_F1n
from core.special import f_signed

# Initialize logger
logger = logging.getLogger(__name__)

MAX_TORSION_ORDER = 10 ** 6
GAUSS_NODES = 20
QUADRATURE_PERIODS_SPAN = 2000


def cyclic_subgroup_counts(H: FinAbGroup) -> Dict[int, int]:
    """
    gamma(H, d) = (#elements of order d) / phi(d) for every d with gamma > 0.

    Raises:
        ResourceError: if |H| exceeds 10^6
    """
    if H.torsion_order > MAX_TORSION_ORDER:
        raise ResourceError(f"|H| = {H.torsion_order} exceeds {MAX_TORSION_ORDER}")
    exponent = H.invariant_factors[-1] if H.invariant_factors else 1
    counts = {}
    for d in divisors(exponent):
        elements = H.count_of_order(d)
        if elements:
            counts[d] = elements // totient(d)
    return counts


def epsilon(H: FinAbGroup) -> Fraction:
    """sum_d phi(d) gamma(H, d) / d."""
    return sum((Fraction(totient(d) * g, d) for d, g in cyclic_subgroup_counts(H).items()), Fraction(0))


# Canonical extension of the counting function

@dataclass(frozen=True)
class CanonicalCountingFn:
    """(z - 1)^rank * sum_d gamma_d (phi(d)/d) (sum_{|k| < d/2} e^(2 pi i (z-1) k/d) + eps_d cos(pi (z-1)))."""

    rank: int
    cyclic_terms: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_point(cls, rank: int, H: FinAbGroup) -> "CanonicalCountingFn":
        return cls(rank, tuple(sorted(cyclic_subgroup_counts(H).items())))

    @property
    def max_frequency(self) -> Fraction:
        """Largest |k|/d among the exponentials, the cosine counted as 1/2."""
        freq = Fraction(0)
        for d, _ in self.cyclic_terms:
            freq = max(freq, Fraction(1, 2) if d % 2 == 0 else Fraction(d - 1, 2 * d))
        return freq

    def on_grid(self, z: np.ndarray) -> np.ndarray:
        """Vectorized evaluation over an array of points."""
        w = np.asarray(z, dtype=np.complex128) - 1
        total = np.zeros_like(w)
        for d, g in self.cyclic_terms:
            ks = np.arange(-((d - 1) // 2), (d - 1) // 2 + 1)
            inner = np.exp(2j * np.pi * np.multiply.outer(w, ks) / d).sum(axis=-1)
            if d % 2 == 0:
                inner = inner + np.cos(np.pi * w)
            total = total + g * totient(d) / d * inner
        return w ** self.rank * total if self.rank else total

    def __call__(self, z: complex) -> complex:
        w = complex(z) - 1
        total = 0j
        for d, g in self.cyclic_terms:
            inner = sum(cmath.exp(2j * math.pi * w * k / d) for k in range(-((d - 1) // 2), (d - 1) // 2 + 1))
            if d % 2 == 0:
                inner += cmath.cos(math.pi * w)
            total += g * totient(d) / d * inner
        return w ** self.rank * total if self.rank else total


def canonical_extension(X: SchemeData) -> List[CanonicalCountingFn]:
    return [CanonicalCountingFn.from_point(rank, H) for rank, H in X.points]


def canonical_extension_eval(X: SchemeData, z: complex) -> complex:
    """N(z) = sum over points of (z-1)^n(x) N(z, O_x^*)."""
    return sum((fn(z) for fn in canonical_extension(X)), 0j)


def extension_residual(X: SchemeData, n_max: int) -> float:
    """max_{n <= n_max} |N(n + 1) - #X(F_1^n)|."""
    fns = canonical_extension(X)
    worst = 0.0
    for n in range(1, n_max + 1):
        value = sum((fn(n + 1) for fn in fns), 0j)
        worst = max(worst, abs(value - count_points_F1n(X, n)))
    return worst


def counting_grid(X: SchemeData, zs: Iterable[complex]) -> List[Tuple[complex, float, float]]:
    """Rows (z, Re N(z), Im N(z)) for plotting."""
    zs = np.asarray(list(zs), dtype=np.complex128)
    values = sum((fn.on_grid(zs) for fn in canonical_extension(X)), np.zeros_like(zs))
    return [(complex(z), float(v.real), float(v.imag)) for z, v in zip(zs, values)]


# Constituents xi_d

def xi_logderiv(d: int, s: complex) -> complex:
    """
    d/ds log xi_d(s) = -(phi(d)/d) (1/s + sum_{0 < |k| <= d/2} e^(-2 pi i k/d) f(s, 2 pi k/d)),
    the k = +-d/2 terms halved.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    s = complex(s)
    if s == 0:
        raise DomainError("xi_d has a pole at s = 0")
    total = 1 / s
    for k in range(1, d // 2 + 1):
        weight = 0.5 if 2 * k == d else 1.0
        a = 2 * math.pi * k / d
        total += weight * (cmath.exp(-2j * math.pi * k / d) * f_signed(s, a)
                           + cmath.exp(2j * math.pi * k / d) * f_signed(s, -a))
    return -totient(d) / d * total


def xi_quadrature(d: int, s: complex) -> complex:
    """
    -int_1^oo N_d(u) u^(-s-1) du by Gauss-Legendre panels on unit cells.

    N_d is sampled directly. The constant part is integrated exactly, the
    mean-zero remainder numerically over whole periods up to u ~ 2000,
    and what is left past that point by two integrations by parts against
    periodic primitives.

    Raises:
        DomainError: if d < 1 or Re(s) <= 0
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    s = complex(s)
    if s.real <= 0:
        raise DomainError(f"quadrature needs Re(s) > 0, got s = {s}")
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_NODES)
    x, w = (nodes + 1) / 2, weights / 2
    one_period = 1.0 + np.arange(d)[:, None] + x[None, :]
    values = CanonicalCountingFn(0, ((d, 1),)).on_grid(one_period).real
    mean = float(np.sum(values * w)) / d
    g = values - mean

    # periodic primitives G1, G2 of g with mean zero, read off at whole periods
    span = 1 + d - one_period
    c1 = float(np.sum(span * g * w)) / d
    c2 = float(np.sum(span ** 2 * g * w)) / (2 * d) - c1 * d / 2

    periods = max(1, math.ceil(QUADRATURE_PERIODS_SPAN / d))
    u = one_period[None, :, :] + d * np.arange(periods)[:, None, None]
    body = complex(np.sum(g[None, :, :] * w * np.exp(-(s + 1) * np.log(u))))
    M = 1.0 + periods * d
    tail = c1 * M ** (-s - 1) + (s + 1) * c2 * M ** (-s - 2)
    return -(mean / s + body + tail)


# Exponents

@dataclass(frozen=True)
class ExponentVector:
    """alpha_0, ..., alpha_n with zeta_X(s) = e^h(s) prod_j (s - j)^alpha_j."""

    alphas: Tuple[Fraction, ...]

    def __getitem__(self, j: int) -> Fraction:
        return self.alphas[j] if j < len(self.alphas) else Fraction(0)

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        n = max(len(self.alphas), len(other.alphas))
        return ExponentVector(tuple(self[j] + other[j] for j in range(n)))

    def to_json(self) -> Dict[str, str]:
        return {str(j): (str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}")
                for j, a in enumerate(self.alphas)}

    def monomial_logderiv(self, s: complex) -> complex:
        """sum_j alpha_j / (s - j)."""
        return sum((float(a) / (complex(s) - j) for j, a in enumerate(self.alphas) if a), 0j)


def alpha_exponents(X: SchemeData) -> ExponentVector:
    """alpha_j = (-1)^(j+1) sum_x (-1)^n(x) C(n(x), j) eps(O_x^* torsion), exactly."""
    alphas = [Fraction(0)] * (X.max_rank + 1)
    eps_cache: Dict[FinAbGroup, Fraction] = {}
    for rank, H in X.points:
        if H not in eps_cache:
            eps_cache[H] = epsilon(H)
        for j in range(rank + 1):
            alphas[j] += (-1) ** (j + 1) * (-1) ** rank * math.comb(rank, j) * eps_cache[H]
    return ExponentVector(tuple(alphas))


def torus_shifted_exponents(alpha: ExponentVector) -> ExponentVector:
    """Exponents of X x G_m from those of X: beta_j = alpha_(j-1) - alpha_j."""
    n = len(alpha.alphas) + 1
    return ExponentVector(tuple((alpha[j - 1] if j else Fraction(0)) - alpha[j] for j in range(n)))


def scheme_from_polynomial(coeffs: Sequence[int]) -> SchemeData:
    """
    Torsion-free scheme data with count sum_k a_k q^k: c_r = sum_k a_k C(k, r) points of rank r.

    Raises:
        DomainError: if some c_r is negative
    """
    trivial = FinAbGroup()
    points = []
    for r in range(len(coeffs)):
        c_r = sum(a * math.comb(k, r) for k, a in enumerate(coeffs))
        if c_r < 0:
            raise DomainError(f"polynomial {list(coeffs)} needs {c_r} points of rank {r}")
        points.extend([(r, trivial)] * c_r)
    return SchemeData(tuple(points))


# Logarithmic derivatives

@dataclass(frozen=True)
class LogDerivEvaluator:
    """
    A counting source with an evaluation mode.

    kind is "scheme" (SchemeData), "sampler" (callable N(u) on [1, oo)) or
    "sequence" (N(1..n_max) with |N(n)| <= C n^k beyond n_max).
    """

    kind: str
    mode: str
    scheme: Optional[SchemeData] = None
    sampler: Optional[Callable[[float], float]] = None
    sequence: Tuple[int, ...] = ()
    growth_exp: float = 0.0
    growth_const: float = 1.0
    tolerance: float = field(default_factory=lambda: config.DEFAULT_TOLERANCE)

    def __post_init__(self):
        if self.mode not in ("integral", "discrete"):
            raise DomainError(f"mode must be integral or discrete, got {self.mode!r}")
        if self.kind == "sequence" and self.mode != "discrete":
            raise DomainError("an arithmetic sequence only supports the discrete mode")
        if self.kind == "sampler" and self.mode != "integral":
            raise DomainError("a sampler only supports the integral mode")

    @classmethod
    def from_scheme(cls, X: SchemeData, mode: str = "integral") -> "LogDerivEvaluator":
        return cls("scheme", mode, scheme=X, growth_exp=float(X.max_rank))

    @classmethod
    def from_sampler(cls, fn: Callable[[float], float], growth_exp: float) -> "LogDerivEvaluator":
        return cls("sampler", "integral", sampler=fn, growth_exp=growth_exp)

    @classmethod
    def from_sequence(cls, values: Sequence[int], growth_exp: float, growth_const: float,
                      tolerance: Optional[float] = None) -> "LogDerivEvaluator":
        return cls("sequence", "discrete", sequence=tuple(int(v) for v in values),
                   growth_exp=growth_exp, growth_const=growth_const,
                   tolerance=config.DEFAULT_TOLERANCE if tolerance is None else tolerance)

    def poles(self) -> List[int]:
        if self.kind == "scheme":
            return list(range(self.scheme.max_rank + 1))
        return []

    def tail_bound(self, s: complex) -> float:
        """C n_max^(k - sigma) / (sigma - k) for the sequence source."""
        sigma = complex(s).real
        if sigma <= self.growth_exp:
            raise DomainError(f"Re(s) = {sigma} inside the divergence region Re(s) <= {self.growth_exp}")
        n_max = len(self.sequence)
        return self.growth_const * n_max ** (self.growth_exp - sigma) / (sigma - self.growth_exp)


def _periodic_part(H: FinAbGroup) -> Tuple[int, List[int]]:
    """Period L and values P(r) = #Hom(H, Z/(r-1)) for r = 1..L, with gcd(0, m) = m."""
    L = lcm_list(list(H.invariant_factors)) if H.invariant_factors else 1
    return L, [H.count_dividing(r - 1) if r > 1 else H.torsion_order for r in range(1, L + 1)]


def _scheme_integral(X: SchemeData, s: complex) -> complex:
    total = 0j
    for rank, H in X.points:
        gammas = cyclic_subgroup_counts(H)
        for j in range(rank + 1):
            sign = math.comb(rank, j) * (-1) ** (rank - j)
            total += sign * sum(g * xi_logderiv(d, s - j) for d, g in gammas.items())
    return total


def _scheme_discrete(X: SchemeData, s: complex) -> complex:
    """-sum_n N(n) n^(-s-1) through Hurwitz zeta values."""
    total = mpmath.mpc(0)
    with mpmath.workdps(config.MP_DPS):
        s_mp = mpmath.mpc(s)
        for rank, H in X.points:
            L, values = _periodic_part(H)
            for j in range(rank + 1):
                sign = math.comb(rank, j) * (-1) ** (rank - j)
                hurwitz = sum(P * mpmath.zeta(s_mp + 1 - j, mpmath.mpf(r) / L)
                              for r, P in enumerate(values, start=1) if P)
                total += sign * mpmath.power(L, j - s_mp - 1) * hurwitz
        return -complex(total)


@dataclass(frozen=True)
class LogDerivValue:
    """A log-derivative value with an absolute bound on its truncation or quadrature error."""

    value: complex
    error_bound: float


def zeta_logderiv_bounded(ev: LogDerivEvaluator, s: complex) -> LogDerivValue:
    """
    d/ds log zeta at s together with a bound on the error of the value.

    Integral mode: -int_1^oo N(u) u^(-s-1) du. Discrete mode:
    -sum_{n >= 1} N(n) n^(-s-1). Scheme sources are continued to every s
    off the poles s = j and are exact to working precision (bound 0).
    Samplers report the quadrature error estimate. Sequences are truncated
    at n_max and report the tail bound C n_max^(k - sigma) / (sigma - k).

    Raises:
        DomainError: at a pole, or inside the divergence region
        AccuracyError: if the sequence tail bound exceeds the tolerance
    """
    s = complex(s)
    if s in ev.poles():
        raise DomainError(f"s = {s} is a pole")
    if ev.kind == "scheme":
        value = _scheme_integral(ev.scheme, s) if ev.mode == "integral" else _scheme_discrete(ev.scheme, s)
        return LogDerivValue(value, 0.0)
    if ev.kind == "sampler":
        if s.real <= ev.growth_exp:
            raise DomainError(f"Re(s) = {s.real} inside the divergence region Re(s) <= {ev.growth_exp}")
        with mpmath.workdps(config.MP_DPS):
            value, error = mpmath.quad(lambda u: ev.sampler(u) * mpmath.power(u, -mpmath.mpc(s) - 1),
                                       [1, mpmath.inf], error=True)
        return LogDerivValue(-complex(value), float(error))
    bound = ev.tail_bound(s)
    if bound > ev.tolerance:
        raise AccuracyError(f"tail bound {bound:.3g} at s={s} exceeds tolerance {ev.tolerance}")
    ns = np.arange(1, len(ev.sequence) + 1, dtype=np.float64)
    values = np.asarray(ev.sequence, dtype=np.float64)
    return LogDerivValue(-complex(np.sum(values * np.exp(-(s + 1) * np.log(ns)))), bound)


def zeta_logderiv(ev: LogDerivEvaluator, s: complex) -> complex:
    """d/ds log zeta at s; see zeta_logderiv_bounded for the error bound."""
    return zeta_logderiv_bounded(ev, s).value


def _segment_distance(point: complex, start: complex, end: complex) -> float:
    direction = end - start
    if direction == 0:
        return abs(point - start)
    t = ((point - start) * direction.conjugate()).real / abs(direction) ** 2
    t = min(1.0, max(0.0, t))
    return abs(point - (start + t * direction))


def _path_exponential(fn: Callable[[complex], complex], s: complex, s0: complex,
                      poles: Sequence[complex]) -> complex:
    for pole in poles:
        if _segment_distance(pole, s0, s) < 1e-9:
            raise DomainError(f"straight path from {s0} to {s} meets the pole {pole}")
    delta = s - s0
    with mpmath.workdps(config.MP_DPS):
        integral = mpmath.quad(lambda t: mpmath.mpc(fn(s0 + float(t) * delta)) * delta, [0, 0.5, 1])
        return complex(mpmath.exp(integral))


def zeta_ratio(ev: LogDerivEvaluator, s: complex, s0: complex = config.ZETA_ANCHOR) -> complex:
    """zeta(s)/zeta(s0) = exp(int_{s0}^{s} log-derivative) along the straight segment."""
    return _path_exponential(lambda w: zeta_logderiv(ev, w), complex(s), complex(s0), ev.poles())


def xi_ratio(d: int, s: complex, s0: complex = config.ZETA_ANCHOR) -> complex:
    """xi_d(s)/xi_d(s0) along the straight segment."""
    return _path_exponential(lambda w: xi_logderiv(d, w), complex(s), complex(s0), [0])


def residue(fn: Callable[[complex], complex], center: complex = 0, radius: float = 0.1,
            samples: int = 64) -> complex:
    """(1 / 2 pi i) contour integral of fn over |s - center| = radius (trapezoid rule)."""
    thetas = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    points = center + radius * np.exp(1j * thetas)
    values = np.array([fn(complex(z)) for z in points])
    return complex(np.mean(values * (points - center)))


# von Mangoldt profile

@dataclass(frozen=True)
class MangoldtProfile:
    """N(n) = n Lambda(n) stored symbolically as base primes: base[n] = p if n = p^l else 0."""

    n_max: int
    base: np.ndarray = field(repr=False, compare=False)

    def entry(self, n: int) -> Tuple[int, int]:
        """(n, p) meaning N(n) = n log p; p = 0 when N(n) = 0."""
        if not 1 <= n <= self.n_max:
            raise DomainError(f"n outside 1..{self.n_max}")
        return n, int(self.base[n])

    def value(self, n: int) -> float:
        _, p = self.entry(n)
        return n * math.log(p) if p else 0.0

    def idealized_counts(self, n_max: Optional[int] = None) -> List[Tuple[int, int, int]]:
        """(n, n + 1, p) for every n with n + 1 = p^l: #X(F_1^n) = (n + 1) log p."""
        top = min(self.n_max - 1, n_max or self.n_max - 1)
        return [(n, n + 1, int(self.base[n + 1])) for n in range(1, top + 1) if self.base[n + 1]]


def mangoldt_profile(n_max: int) -> MangoldtProfile:
    if not 1 <= n_max <= config.MANGOLDT_MAX_N:
        raise ResourceError(f"n_max must lie in 1..{config.MANGOLDT_MAX_N}, got {n_max}")
    profile = MangoldtProfile(n_max, prime_power_base(n_max))
    logger.info(f"Mangoldt profile through {n_max}: {int(np.count_nonzero(profile.base))} prime powers")
    return profile


def mangoldt_partial_sum(profile: MangoldtProfile, s: complex) -> complex:
    """sum_{n <= n_max} Lambda(n) n^-s."""
    ns = np.nonzero(profile.base)[0]
    lam = np.log(profile.base[ns].astype(np.float64))
    return complex(np.sum(lam * np.exp(-complex(s) * np.log(ns.astype(np.float64)))))


def mangoldt_oracle(s: complex) -> complex:
    """-zeta'(s)/zeta(s) from mpmath's zeta and its derivative."""
    with mpmath.workdps(config.MP_DPS):
        return complex(-mpmath.zeta(s, 1, 1) / mpmath.zeta(s))
