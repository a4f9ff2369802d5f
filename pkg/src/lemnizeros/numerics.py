"""Configurable-precision complex arithmetic and the structure of f_z(t).

The working scalar everywhere is mpmath's binary floating point (`mpf`/`mpc`)
at an explicit precision in bits; no function here reads or leaves behind
global precision state.  Alongside plain evaluation this module provides a
running first-order rounding-error bound for Horner evaluation, which is what
the certification and escalation logic downstream feeds on.

f_z(t) = t(1 - z t^2) is the cubic whose powers are integrated downstream;
its zeros are {0, +1/sqrt(z), -1/sqrt(z)} and its critical points sit at
+-1/sqrt(3z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp, mpc, mpf

from .exact import ExactPolynomial, build_polynomial

DEFAULT_BITS = 128
DEFAULT_MAX_BITS = 4096


class PrecisionExhaustedError(RuntimeError):
    """Raised when a computation still cannot be decided at max_bits."""


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision in bits plus the escalation policy.

    bits: starting precision (>= 64); escalation_factor: multiplier applied
    when a solve or decision needs more bits; max_bits: hard ceiling.
    """

    bits: int = DEFAULT_BITS
    escalation_factor: int = 2
    max_bits: int = DEFAULT_MAX_BITS

    def __post_init__(self) -> None:
        if self.bits < 64:
            raise ValueError("PrecisionConfig: bits must be >= 64")
        if self.escalation_factor < 2:
            raise ValueError("PrecisionConfig: escalation_factor must be >= 2")
        if self.max_bits < self.bits:
            raise ValueError("PrecisionConfig: max_bits must be >= bits")

    def escalate(self, bits: int) -> int:
        """Next precision after `bits`, clipped to the ceiling."""
        if bits >= self.max_bits:
            raise PrecisionExhaustedError(f"precision exhausted at {self.max_bits} bits")
        return min(bits * self.escalation_factor, self.max_bits)


def working(bits: int):
    """Context manager setting the mpmath precision to exactly `bits`."""
    return mp.workprec(bits)


def to_mpf(x, bits: int) -> mpf:
    """Round a Fraction/int/float/str to an mpf at the given precision."""
    with mp.workprec(bits):
        if isinstance(x, Fraction):
            return mpf(x.numerator) / mpf(x.denominator)
        return mpf(x)


def to_mpc(x, bits: int, imag=0) -> mpc:
    """Build an mpc at the given precision from real/imag parts.

    Accepts Fractions, mpf/mpc, python numbers and strings for either part.
    """
    with mp.workprec(bits):
        if isinstance(x, (complex, mpc)):
            return mpc(to_mpf(x.real, bits), to_mpf(x.imag, bits))
        return mpc(to_mpf(x, bits), to_mpf(imag, bits))


def principal_sqrt(z: mpc, bits: int) -> mpc:
    """Square root on the branch with sqrt(1) = 1, cut along (-inf, 0).

    On the cut itself the value is the limit from the upper half-plane,
    sqrt(-1) = +i, so Re(result) >= 0 always and > 0 off the cut.
    """
    with mp.workprec(bits):
        z = mpc(z)
        if z == 0:
            return mpc(0)
        if z.imag == 0 and z.real < 0:
            return mpc(0, mpmath.sqrt(-z.real))
        return mpmath.sqrt(z)


def f_eval(z: mpc, t: mpc, bits: int | None = None) -> mpc:
    """t(1 - z t^2)."""
    if bits is None:
        return t * (1 - z * t * t)
    with mp.workprec(bits):
        return mpc(t) * (1 - mpc(z) * mpc(t) * mpc(t))


def fprime_factor(z: mpc, t: mpc, bits: int | None = None) -> mpc:
    """1 - 3 z t^2, the derivative factor vanishing at the saddles."""
    if bits is None:
        return 1 - 3 * z * t * t
    with mp.workprec(bits):
        return 1 - 3 * mpc(z) * mpc(t) * mpc(t)


@dataclass(frozen=True)
class StructuralPoints:
    """Zeros {0, +-1/sqrt(z)} and saddles {+-1/sqrt(3z)} of f_z."""

    zeros: tuple[mpc, mpc, mpc]
    saddles: tuple[mpc, mpc]


def structural_points(z: mpc, bits: int) -> StructuralPoints:
    """Structural points of f_z via the principal square root; z != 0."""
    with mp.workprec(bits):
        z = mpc(z)
        if z == 0:
            raise ValueError("structural_points: z must be nonzero")
        inv = 1 / principal_sqrt(z, bits)
        inv3 = 1 / principal_sqrt(3 * z, bits)
        return StructuralPoints((mpc(0), inv, -inv), (inv3, -inv3))


@lru_cache(maxsize=None)
def _rounded_coefficients(degree: int, bits: int) -> tuple[mpf, ...]:
    """Family coefficients rounded to `bits`; cached since the family has
    exactly one member per degree."""
    p = build_polynomial(degree)
    return tuple(to_mpf(c, bits) for c in p.coefficients)


def _abs1(w) -> mpf:
    """1-norm |re| + |im|: cheap upper proxy for the modulus."""
    if isinstance(w, mpc):
        return abs(w.real) + abs(w.imag)
    return abs(w)


def eval_horner(
    p: ExactPolynomial,
    z: mpc,
    cfg: PrecisionConfig = PrecisionConfig(),
    decisive: bool = False,
) -> tuple[mpc, mpf]:
    """Horner evaluation of the family polynomial with an error bound.

    Coefficients are rounded from their exact rationals at the working
    precision before use.  The returned bound is a conservative first-order
    accumulation of per-operation rounding (not interval arithmetic).

    With decisive=True the precision is escalated until the bound is smaller
    than |value| (so sign/zero decisions are safe); if the ceiling is reached
    while still ambiguous a PrecisionExhaustedError is raised.
    """
    bits = cfg.bits
    while True:
        value, err = _horner_once(p, z, bits)
        if not decisive or err < abs(value):
            return value, err
        bits = cfg.escalate(bits)  # raises PrecisionExhaustedError at the ceiling


def _horner_once(p: ExactPolynomial, z, bits: int) -> tuple[mpc, mpf]:
    coeffs = _rounded_coefficients(p.degree, bits)
    with mp.workprec(bits):
        z = mpc(z)
        u = mpf(2) ** (-bits)
        az = _abs1(z)
        s = mpc(coeffs[p.degree])
        err = abs(coeffs[p.degree]) * u
        for m in range(p.degree - 1, -1, -1):
            s = s * z + coeffs[m]
            # 4u covers complex multiply + add + coefficient rounding
            err = err * az + (_abs1(s) + abs(coeffs[m])) * 4 * u
        return s, err
