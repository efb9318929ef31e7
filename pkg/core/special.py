"""
Special functions for char1

The entire function

    f(s, a) = e^(-i pi s / 2) a^s Gamma(-s) + sum_{n >= 0} (i a)^n / (n! (s - n))

which equals the oscillatory integral int_1^oo e^(i a u) u^(-s-1) du for
Re(s) > 0, together with an independent quadrature evaluation of that
integral. All evaluation is done with mpmath at config.MP_DPS digits.
"""

import logging
from typing import Optional, Union

import mpmath

import config
from core.errors import AccuracyError, DomainError

logger = logging.getLogger(__name__)

Number = Union[int, float, complex]


def _series(s, a, terms: Optional[int], skip: Optional[int] = None):
    """sum (i a)^n / (n! (s - n)), stopping at the requested precision or term count."""
    ia = mpmath.mpc(0, a)
    term = mpmath.mpc(1)
    total = mpmath.mpc(0)
    eps = mpmath.mpf(10) ** (-mpmath.mp.dps)
    limit = terms if terms is not None else config.F_ENTIRE_MAX_TERMS
    for n in range(limit):
        if n != skip:
            total += term / (s - n)
        # terms decrease once n > a; stop when the next ones are negligible
        if terms is None and n > abs(a) and abs(term) < eps * max(abs(total), 1):
            return total, True
        term = term * ia / (n + 1)
    # bound the remainder by a geometric tail of the next term
    ratio = abs(a) / (limit + 1)
    tail = abs(term) / (1 - ratio) if ratio < 1 else mpmath.inf
    return total, tail


def f_entire(s: Number, a: float, terms: Optional[int] = None,
             tolerance: Optional[float] = None) -> complex:
    """
    Evaluate f(s, a) for a > 0.

    Within config.NEAR_INTEGER_RADIUS of a non-negative integer the pole of
    Gamma(-s) and the matching series term cancel; the exact limit is used at
    integers and the working precision is raised nearby.

    Args:
        s: complex argument
        a: positive frequency
        terms: fixed number of series terms; by default sum to working precision
        tolerance: bound required on the truncated tail when terms is given

    Returns:
        f(s, a) as a Python complex

    Raises:
        DomainError: if a <= 0
        AccuracyError: if the series tail cannot be brought below tolerance
    """
    if a <= 0:
        raise DomainError(f"f(s, a) requires a > 0, got a={a}")
    tolerance = config.DEFAULT_TOLERANCE if tolerance is None else tolerance
    s = mpmath.mpc(s)
    nearest = int(mpmath.nint(s.real))
    distance = abs(s - nearest)
    near = nearest >= 0 and distance < config.NEAR_INTEGER_RADIUS
    extra = 0
    if near and distance > 0:
        extra = int(-mpmath.log10(distance)) * 2 + 10

    with mpmath.workdps(config.MP_DPS + extra):
        a_mp = mpmath.mpf(a)
        if near and distance == 0:
            N = nearest
            series, status = _series(mpmath.mpf(N), a_mp, terms, skip=N)
            ia_N = mpmath.power(mpmath.mpc(0, a_mp), N) / mpmath.factorial(N)
            value = -ia_N * (mpmath.log(a_mp) - mpmath.mpc(0, mpmath.pi / 2) - mpmath.digamma(N + 1)) + series
        else:
            series, status = _series(s, a_mp, terms)
            gamma_part = mpmath.exp(-1j * mpmath.pi * s / 2) * mpmath.power(a_mp, s) * mpmath.gamma(-s)
            value = gamma_part + series

        if status is not True:
            if terms is None or status > tolerance:
                raise AccuracyError(f"f({complex(s)}, {a}) series tail {mpmath.nstr(status, 3)} "
                                    f"exceeds tolerance {tolerance}")
        return complex(value)


def f_signed(s: Number, a: float) -> complex:
    """f(s, a) for any real a != 0, using f(s, -a) = conj(f(conj(s), a))."""
    if a > 0:
        return f_entire(s, a)
    if a < 0:
        return f_entire(complex(s).conjugate(), -a).conjugate()
    raise DomainError("f(s, 0) is not entire (pole at s = 0)")


def recursion_residual(s: Number, a: float) -> float:
    """|a f(s, a) + i (s + 1) f(s + 1, a) - i e^(i a)|."""
    s = complex(s)
    lhs = a * f_entire(s, a) + 1j * (s + 1) * f_entire(s + 1, a)
    rhs = 1j * complex(mpmath.exp(1j * a))
    return abs(lhs - rhs)


def f_quadrature(s: Number, a: float) -> complex:
    """
    int_1^oo e^(i a u) u^(-s-1) du by oscillatory quadrature.

    The integral converges for Re(s) > 0. For Re(s) < 2 it is evaluated at
    s + m with Re(s + m) >= 2 and walked back with
    f(s) = (i e^(i a) - i (s + 1) f(s + 1)) / a.
    """
    if a == 0:
        raise DomainError("quadrature of f needs a != 0")
    if a < 0:
        return f_quadrature(complex(s).conjugate(), -a).conjugate()
    s = complex(s)
    if s.real <= 0:
        raise DomainError(f"quadrature oracle needs Re(s) > 0, got {s}")
    shift = 0
    while s.real + shift < 2:
        shift += 1
    with mpmath.workdps(config.MP_DPS):
        target = mpmath.mpc(s) + shift
        value = mpmath.quadosc(lambda u: mpmath.exp(1j * a * u) * mpmath.power(u, -target - 1),
                               [1, mpmath.inf], omega=a)
        e_ia = mpmath.exp(1j * mpmath.mpf(a))
        for k in range(shift, 0, -1):
            sk = mpmath.mpc(s) + k - 1
            value = (1j * e_ia - 1j * (sk + 1) * value) / a
        return complex(value)
