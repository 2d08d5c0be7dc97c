"""Numeric evaluation of the generating functions and their singularities.

Reals are :class:`mpmath.mpf` values.  Every public function takes a
``digits`` argument (decimal precision, default :data:`DEFAULT_DIGITS`) and
works internally with :data:`GUARD_DIGITS` extra digits, so results carry at
least ``digits - 5`` correct digits for the expression depths used here.
Evaluating exactly at a square-root singularity loses half the working
digits in the radical; with the guard this still leaves more than 20
correct digits at the default precision.

The h-shallow evaluation at ``rho_terms()`` nests ``h + 1`` radicals; keep
``digits >= 30`` there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

import mpmath
from mpmath import mpf

__all__ = [
    "DEFAULT_DIGITS",
    "GUARD_DIGITS",
    "DomainError",
    "InconclusiveError",
    "AsymptoticConstants",
    "GrowthBounds",
    "eval_L_infty",
    "eval_E_infty",
    "eval_C_infty",
    "eval_L_infty_prime",
    "mean_size",
    "rho_plain",
    "rho_terms",
    "constants",
    "asymptotic_estimate",
    "eval_shallow_L0",
    "shallow_singularity",
    "growth_bounds_closed",
    "bisect",
]

DEFAULT_DIGITS = 50
GUARD_DIGITS = 10

C0_INTERVAL = ("0.07790995266", "0.0779099823")


class DomainError(ValueError):
    """Argument lies beyond the singularity of the function being evaluated."""


class InconclusiveError(ArithmeticError):
    """The h-shallow approximation is too weak to separate the bounds."""


def _clip(radicand: mpf, what: str) -> mpf:
    # rounding at the singularity itself may leave a tiny negative radicand
    if radicand < 0:
        if -radicand < mpmath.mpf(10) ** (-(mpmath.mp.dps - 3)):
            return mpf(0)
        raise DomainError(f"negative radicand: argument is beyond {what}")
    return radicand


def _L(z: mpf) -> mpf:
    if z < 0:
        raise DomainError("generating functions are evaluated on z >= 0")
    if z == 0:
        return mpf(0)
    if z >= 1:
        raise DomainError("argument is beyond rho_terms (dominant singularity of L_infty)")
    rad = _clip((1 - z) ** 2 - 4 * z * z / (1 - z), "rho_terms (dominant singularity of L_infty)")
    return ((1 - z) - mpmath.sqrt(rad)) / (2 * z)


def _EC(z: mpf) -> Tuple[mpf, mpf, mpf]:
    L = _L(z)
    if L == 0:
        return L, mpf(1), mpf(0)
    rad = _clip(1 - 4 * L, "rho_plain (dominant singularity of E_infty and C_infty)")
    root = mpmath.sqrt(rad)
    return L, (1 - root) / (2 * L), (1 - root) / 2


def eval_L_infty(z, digits: int = DEFAULT_DIGITS) -> mpf:
    """Plain-term generating function ``L(z) = zL + zL^2 + z/(1-z)``."""
    with mpmath.workdps(digits + GUARD_DIGITS):
        return _L(mpf(z))


def eval_E_infty(z, digits: int = DEFAULT_DIGITS) -> mpf:
    """Plain environments: ``(1 - sqrt(1 - 4L)) / (2L)``, equal to 1 at ``z = 0``."""
    with mpmath.workdps(digits + GUARD_DIGITS):
        return _EC(mpf(z))[1]


def eval_C_infty(z, digits: int = DEFAULT_DIGITS) -> mpf:
    """Plain closures: ``(1 - sqrt(1 - 4L)) / 2``."""
    with mpmath.workdps(digits + GUARD_DIGITS):
        return _EC(mpf(z))[2]


def _L_prime(z: mpf, L: mpf) -> mpf:
    # implicit derivative of L = zL + zL^2 + z/(1-z)
    return (L + L * L + 1 / (1 - z) ** 2) / (1 - z - 2 * z * L)


def eval_L_infty_prime(z, digits: int = DEFAULT_DIGITS) -> mpf:
    with mpmath.workdps(digits + GUARD_DIGITS):
        z = mpf(z)
        return _L_prime(z, _L(z))


def mean_size(x, kind: str = "environment", digits: int = DEFAULT_DIGITS) -> mpf:
    """Expected size ``x F'(x) / F(x)`` of a Boltzmann object of the given kind.

    ``kind`` is ``"environment"``, ``"closure"`` or ``"term"``; derivatives
    come from implicit differentiation of the defining equations.
    """
    with mpmath.workdps(digits + GUARD_DIGITS):
        x = mpf(x)
        if x == 0:
            return mpf(0) if kind == "environment" else mpf(1)
        L, E, C = _EC(x)
        Lp = _L_prime(x, L)
        if kind == "term":
            return x * Lp / L
        denom = 1 - 2 * L * E
        if denom <= 0:
            raise DomainError("mean size is infinite at rho_plain")
        Ep = Lp * E * E / denom  # from E = L E^2 + 1
        if kind == "environment":
            return x * Ep / E
        if kind == "closure":
            Cp = Lp * E + L * Ep
            return x * Cp / C
        raise ValueError(f"unknown kind {kind!r}")


def rho_plain(digits: int = DEFAULT_DIGITS) -> mpf:
    """Dominant singularity of plain environments and closures, root of ``1 - 4L(z)``."""
    with mpmath.workdps(digits + GUARD_DIGITS):
        return (25 - mpmath.sqrt(545)) / 10


def rho_terms(digits: int = DEFAULT_DIGITS) -> mpf:
    """Dominant singularity of plain terms, the real root of ``(1-z)^3 = 4z^2``."""
    with mpmath.workdps(digits + GUARD_DIGITS):
        s33 = mpmath.sqrt(33)
        return (mpmath.cbrt(26 + 6 * s33)
                - 4 * mpmath.cbrt(4) / mpmath.cbrt(13 + 3 * s33)
                - 1) / 3


@dataclass(frozen=True)
class AsymptoticConstants:
    rho_plain: mpf
    rho_terms: mpf
    C_e: mpf
    C_c: mpf
    C_terms: mpf
    a_E: mpf
    b_E: mpf
    a_C: mpf
    b_C: mpf
    C0_interval: Tuple[mpf, mpf]
    digits: int


def constants(digits: int = DEFAULT_DIGITS) -> AsymptoticConstants:
    with mpmath.workdps(digits + GUARD_DIGITS):
        sqrt = mpmath.sqrt
        s5, s109, s545 = sqrt(5), sqrt(109), sqrt(545)
        root_e = sqrt(mpf(5) / 47 * (109 + 35 * s545))
        root_c = sqrt(10 * (48069 * s5 - 10295 * s109) / (65 * s109 - 301 * s5))
        sqrt_pi = sqrt(mpmath.pi)
        b_E = -root_e / 4
        b_C = 2 * root_c / (3 * s545 - 77)
        gamma_half = -2 * sqrt_pi  # Gamma(-1/2)

        # plain terms: L = ((1-z) - sqrt(R)) / (2z), R = ((1-z)^3 - 4z^2) / (1-z)
        r = rho_terms(digits)
        dR = (-3 * (1 - r) ** 2 - 8 * r) / (1 - r)
        b_L = -sqrt(-r * dR) / (2 * r)

        return AsymptoticConstants(
            rho_plain=rho_plain(digits),
            rho_terms=r,
            C_e=b_E / gamma_half,
            C_c=b_C / gamma_half,
            C_terms=b_L / gamma_half,
            a_E=mpf(2),
            b_E=b_E,
            a_C=mpf(1) / 2,
            b_C=b_C,
            C0_interval=(mpf(C0_INTERVAL[0]), mpf(C0_INTERVAL[1])),
            digits=digits,
        )


def asymptotic_estimate(kind: str, n: int, digits: int = DEFAULT_DIGITS) -> mpf:
    """First-order estimate ``C * rho^-n * n^(-3/2)``.

    ``kind`` is one of ``plain-environments``, ``plain-closures``,
    ``plain-terms``.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    k = constants(digits)
    pairs = {
        "plain-environments": (k.C_e, k.rho_plain),
        "plain-closures": (k.C_c, k.rho_plain),
        "plain-terms": (k.C_terms, k.rho_terms),
    }
    if kind not in pairs:
        raise ValueError(f"no asymptotic estimate for class {kind!r}")
    C, rho = pairs[kind]
    with mpmath.workdps(digits + GUARD_DIGITS):
        return C * rho ** (-n) * mpf(n) ** mpf(-1.5)


# ---------------------------------------------------------------------------
# h-shallow closed terms


def _index_part(z: mpf, m: int) -> mpf:
    # z + z^2 + ... + z^m
    if m == 0:
        return mpf(0)
    if z == 1:
        return mpf(m)
    return z * (1 - z ** m) / (1 - z)


def _shallow_radicand(rad: mpf, m: int, h: int) -> mpf:
    # For large h the top radicand at rho_terms is about 4 z^(h+2) / (1-z),
    # far below working precision, so rounding can push it just under zero.
    if rad < 0:
        if -rad < mpf(10) ** (-(mpmath.mp.dps - 3)):
            return mpf(0)
        where = "z is beyond the h-shallow singularity" if m == h else "z is outside the domain"
        raise DomainError(f"negative radicand at level m={m}: {where}")
    return rad


def _shallow_L0(h: int, z: mpf) -> mpf:
    if z == 0:
        return mpf(0)
    rad = _shallow_radicand((1 - z) ** 2 - 4 * z * _index_part(z, h), h, h)
    L = ((1 - z) - mpmath.sqrt(rad)) / (2 * z)
    for m in range(h - 1, -1, -1):
        rad = _shallow_radicand(1 - 4 * z * (z * L + _index_part(z, m)), m, h)
        L = (1 - mpmath.sqrt(rad)) / (2 * z)
    return L


def eval_shallow_L0(h: int, z, digits: int = DEFAULT_DIGITS) -> mpf:
    """Generating function of closed terms whose indices are all below ``h``.

    Solves the triangular system top-down: the level-``h`` quadratic first
    (smaller root), then each lower level from the one above it.
    """
    if h < 1:
        raise ValueError(f"shallow bound must be >= 1, got {h}")
    with mpmath.workdps(digits + GUARD_DIGITS):
        return _shallow_L0(h, mpf(z))


def shallow_singularity(h: int, digits: int = DEFAULT_DIGITS) -> mpf:
    """Root of the level-``h`` radicand ``(1-z)^2 - 4z(z + ... + z^h)``.

    This bounds the domain of :func:`eval_shallow_L0` from above.
    """
    with mpmath.workdps(digits + GUARD_DIGITS):
        def f(z):
            return (1 - z) ** 2 - 4 * z * _index_part(z, h)
        # f(0) = 1 > 0, f(1/2) < 0 for every h >= 1
        lo, hi = bisect(lambda z: -f(z), mpf(0), mpf(1) / 2, digits)
        return lo


def bisect(f: Callable[[mpf], mpf], lo: mpf, hi: mpf, digits: int = DEFAULT_DIGITS) -> Tuple[mpf, mpf]:
    """Shrink ``[lo, hi]`` with ``f(lo) < 0 < f(hi)`` to width below ``10^(-digits/2)``."""
    flo, fhi = f(lo), f(hi)
    if not (flo < 0 < fhi):
        raise ValueError("bisection needs a sign change f(lo) < 0 < f(hi)")
    tol = mpf(10) ** (-(digits / 2)) / 2
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


@dataclass(frozen=True)
class GrowthBounds:
    """Exponential-growth sandwich for closed closures at shallow bound ``h``.

    ``1/rho_upper`` bounds the growth rate of closed closures from above.
    ``rho_lower`` is the root of ``L0^(h)(z) = 1/4``.  Since the h-shallow
    function sits below ``L_0``, that root lies at or above the true root of
    ``L_0(z) = 1/4``, so ``1/rho_lower`` is a valid lower bound on the
    growth rate.
    """

    h: int
    rho_lower: mpf
    rho_upper: mpf
    bracket: Tuple[mpf, mpf]
    shallow_value: mpf  # L0^(h)(rho_terms)
    digits: int


def growth_bounds_closed(h: int, digits: int = DEFAULT_DIGITS) -> GrowthBounds:
    with mpmath.workdps(digits + GUARD_DIGITS):
        quarter = mpf(1) / 4
        r_terms = rho_terms(digits)
        r_plain = rho_plain(digits)
        at_terms = _shallow_L0(h, r_terms)
        if at_terms <= quarter:
            raise InconclusiveError(
                f"L0^({h})(rho_terms) = {mpmath.nstr(at_terms, 17)} <= 1/4; increase h"
            )
        lo, hi = bisect(lambda z: _shallow_L0(h, z) - quarter, r_plain, r_terms, digits)
        return GrowthBounds(h, (lo + hi) / 2, r_plain, (lo, hi), at_terms, digits)
