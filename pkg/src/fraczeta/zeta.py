"""High-precision real-argument zeta values via Euler-Maclaurin summation.

The evaluator computes, at a configurable decimal working precision,

    zeta(s) = sum_{n=1}^{N-1} n^(-s)
            + N^(1-s)/(s-1)
            + N^(-s)/2
            + sum_{k=1}^{K} B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)

with exact-rational Bernoulli numbers and an observable truncation bound:
``error_bound`` is the magnitude the k = K+1 correction term would have.
A real Gamma function (Stirling series after argument shifting) and the
s <-> 1-s functional-equation residual complete the engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import DomainError, InputError, PoleError

DEFAULT_PRECISION_DIGITS = 50
MAX_CORRECTION_K = 30

# Internal guard digits so the last reported digit is trustworthy.
_GUARD = 10

_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli_numbers(upto: int) -> list[Fraction]:
    """Exact B_0..B_upto via the defining recurrence; cached across calls."""
    while len(_bernoulli_cache) <= upto:
        m = len(_bernoulli_cache)
        acc = Fraction(0)
        for j, bj in enumerate(_bernoulli_cache):
            acc += math.comb(m + 1, j) * bj
        _bernoulli_cache.append(-acc / (m + 1))
    return _bernoulli_cache[: upto + 1]


def _to_exact(s) -> Fraction:
    """Exact rational view of an argument given as int/float/str/Fraction."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, float):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, mp.mpf):
        if not mp.isfinite(s):
            raise InputError(f"non-finite argument {s}")
        sign, man, exp, _ = s._mpf_
        exact = Fraction(man) * Fraction(2) ** exp
        return -exact if sign else exact
    raise InputError(f"cannot interpret {s!r} as a real argument")


def _frac_to_mpf(x: Fraction) -> mp.mpf:
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)


@dataclass(frozen=True)
class ZetaValue:
    """One Euler-Maclaurin evaluation with its truncation provenance."""

    s: Fraction
    value: mp.mpf
    terms_N: int
    correction_K: int
    error_bound: mp.mpf
    precision_digits: int

    def value_str(self) -> str:
        return mp.nstr(self.value, self.precision_digits)


def _correction_term(s_mp: mp.mpf, n_mp: mp.mpf, k: int, rising: mp.mpf) -> mp.mpf:
    b2k = bernoulli_numbers(2 * k)[2 * k]
    coeff = _frac_to_mpf(b2k) / mp.factorial(2 * k)
    return coeff * rising * mp.power(n_mp, -s_mp - 2 * k + 1)


def zeta_euler_maclaurin(
    s,
    terms_N: int = 10_000,
    correction_K: int = 10,
    precision_digits: int = DEFAULT_PRECISION_DIGITS,
) -> ZetaValue:
    """Evaluate zeta(s) for real s > 0, s != 1.

    ``terms_N`` is the partial-sum cutoff, ``correction_K`` the number of
    Bernoulli correction terms, ``precision_digits`` the working decimal
    precision the result is carried at.
    """
    s_exact = _to_exact(s)
    if s_exact == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s_exact <= 0:
        raise DomainError(
            f"s = {s_exact} is out of range; evaluate via the functional "
            "equation for arguments <= 0"
        )
    if terms_N < 2:
        raise InputError(f"terms_N must be >= 2, got {terms_N}")
    if not (1 <= correction_K <= MAX_CORRECTION_K):
        raise InputError(
            f"correction_K must be in 1..{MAX_CORRECTION_K}, got {correction_K}"
        )
    if precision_digits < 20:
        raise InputError(f"precision_digits must be >= 20, got {precision_digits}")

    with mp.workdps(precision_digits + _GUARD):
        s_mp = _frac_to_mpf(s_exact)
        n_mp = mp.mpf(terms_N)
        total = mp.mpf(0)
        for n in range(1, terms_N):
            total += mp.power(n, -s_mp)
        total += mp.power(n_mp, 1 - s_mp) / (s_mp - 1)
        total += mp.power(n_mp, -s_mp) / 2
        rising = s_mp
        for k in range(1, correction_K + 1):
            total += _correction_term(s_mp, n_mp, k, rising)
            rising *= (s_mp + 2 * k - 1) * (s_mp + 2 * k)
        bound = abs(_correction_term(s_mp, n_mp, correction_K + 1, rising))
    with mp.workdps(precision_digits):
        value = +total
        bound = +bound
    return ZetaValue(
        s=s_exact,
        value=value,
        terms_N=terms_N,
        correction_K=correction_K,
        error_bound=bound,
        precision_digits=precision_digits,
    )


def gamma_real(x, precision_digits: int = DEFAULT_PRECISION_DIGITS) -> mp.mpf:
    """Gamma(x) for real x > 0 by Stirling's series after shifting.

    The argument is raised by the recurrence Gamma(x) = Gamma(x+m)/poch
    until the Stirling tail with at most 30 Bernoulli terms is below the
    target precision, so accuracy tracks ``precision_digits``.
    """
    x_exact = _to_exact(x)
    if x_exact <= 0:
        raise DomainError(f"gamma_real needs x > 0, got {x_exact}")
    dps = precision_digits + _GUARD
    # Stirling remainder ~ B_60-term ~ 3.5e30 / z^59: keep it under 10^-dps.
    shift_target = max(20.0, 10 ** ((30 + dps) / 59) + 2)
    with mp.workdps(dps):
        z = _frac_to_mpf(x_exact)
        poch = mp.mpf(1)
        while z < shift_target:
            poch *= z
            z += 1
        lng = (z - mp.mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
        for k in range(1, MAX_CORRECTION_K + 1):
            b2k = bernoulli_numbers(2 * k)[2 * k]
            lng += _frac_to_mpf(b2k) / (2 * k * (2 * k - 1) * mp.power(z, 2 * k - 1))
        result = mp.exp(lng) / poch
    with mp.workdps(precision_digits):
        return +result


def functional_equation_residual(
    s,
    terms_N: int = 10_000,
    correction_K: int = 10,
    precision_digits: int = DEFAULT_PRECISION_DIGITS,
) -> mp.mpf:
    """|zeta(s) - 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)| on (0, 1).

    Both zeta values come from :func:`zeta_euler_maclaurin`, so the
    residual measures the engine's internal consistency across s <-> 1-s.
    """
    s_exact = _to_exact(s)
    if not (0 < s_exact < 1):
        raise DomainError(f"functional equation checked on (0, 1) only, got {s_exact}")
    left = zeta_euler_maclaurin(s_exact, terms_N, correction_K, precision_digits).value
    right = zeta_euler_maclaurin(1 - s_exact, terms_N, correction_K, precision_digits).value
    gamma = gamma_real(1 - s_exact, precision_digits)
    with mp.workdps(precision_digits + _GUARD):
        s_mp = _frac_to_mpf(s_exact)
        chi = (
            mp.power(2, s_mp)
            * mp.power(mp.pi, s_mp - 1)
            * mp.sin(mp.pi * s_mp / 2)
            * gamma
        )
        residual = abs(left - chi * right)
    with mp.workdps(precision_digits):
        return +residual
