"""Certified computation of all n zeros of the family polynomial.

All zeros are refined together by Ehrlich-Aberth sweeps (Newton corrections
with pairwise repulsion, applied in place).  Deflation is deliberately not
used: the zeros cluster along a curve and deflation compounds error there,
while the simultaneous iteration is self-correcting.

Certification is a posteriori: around each computed root the disk of radius
n |p(z)| / |p'(z)| contains at least one true zero, so n pairwise disjoint
disks pin down all n zeros.  Both evaluations carry running rounding-error
bounds, and the solve is restarted at escalated precision whenever the
certificate comes out too weak.  The monomial-basis conditioning of this
family grows like 7^n near the real end of the zero curve (~2.81 bits per
degree), so the starting precision is chosen accordingly; the 128-bit
default in PrecisionConfig remains the floor for small n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil

import mpmath
from mpmath import mp, mpc, mpf
from mpmath.libmp import (
    fhalf,
    fone,
    from_man_exp,
    fzero,
    mpc_abs,
    mpc_add,
    mpc_div,
    mpc_mul,
    mpc_sub,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_mul,
)

from .exact import ExactPolynomial, build_polynomial
from .numerics import (
    PrecisionConfig,
    PrecisionExhaustedError,
    to_mpc,
    to_mpf,
)

# Certified-radius acceptance target, relative to 1 + |root|.  At low working
# precision the rounding floor itself is coarser than this, so the effective
# target is max(RADIUS_REL_TOL, 2^(32-bits)).
RADIUS_REL_TOL = mpf("1e-20")

_MPC_ZERO = (fzero, fzero)
_MPC_ONE = (fone, fzero)
_CTRL = 53  # control-flow comparisons don't need full precision


class CertificationError(RuntimeError):
    """Raised when the a-posteriori root certificate cannot be established."""


@dataclass(frozen=True)
class RootSet:
    """The n computed zeros with residuals and certified inclusion radii.

    residuals[j] is a rigorous upper bound on |p(root_j)| (computed value
    plus its evaluation-error bound); inclusion_radii[j] is the radius of a
    disk guaranteed to contain a true zero.  overlaps flags disks that touch
    another disk, in which case the set does not isolate all zeros.
    """

    degree: int
    roots: tuple[mpc, ...]
    residuals: tuple[mpf, ...]
    inclusion_radii: tuple[mpf, ...]
    precision_used: int
    overlaps: tuple[bool, ...]

    def disks_disjoint(self) -> bool:
        return not any(self.overlaps)

    def max_relative_radius(self) -> mpf:
        with mp.workprec(_CTRL):
            return max(r / (1 + abs(z)) for r, z in zip(self.inclusion_radii, self.roots))

    def conjugation_closed(self) -> bool:
        """True when the multiset of roots equals its conjugate, pairing
        roots greedily within summed inclusion radii."""
        with mp.workprec(self.precision_used):
            n = self.degree
            used = [False] * n
            for i in range(n):
                if used[i]:
                    continue
                zi, ri = self.roots[i], self.inclusion_radii[i]
                if abs(zi.imag) <= ri:
                    used[i] = True
                    continue
                target = mpc(zi.real, -zi.imag)
                match = None
                for j in range(n):
                    if j == i or used[j]:
                        continue
                    if abs(self.roots[j] - target) <= ri + self.inclusion_radii[j]:
                        match = j
                        break
                if match is None:
                    return False
                used[i] = used[match] = True
            return True


def initial_points(n: int, bits: int = PrecisionConfig().bits) -> list[mpc]:
    """Starting configuration: n points on a circle around the root centroid.

    The centroid is the exact Vieta mean -c_{n-1}/(n c_n); the circle radius
    min(n+1, 2) * 0.8 comfortably brackets the zero curve, and an irrational
    angular offset (golden angle) avoids locking onto coefficient symmetries.
    For n = 1 the centroid itself already is the root.
    """
    if n < 1:
        raise ValueError("initial_points: n must be >= 1")
    p = build_polynomial(n)
    centroid = -p.coefficients[n - 1] / (n * p.coefficients[n])
    with mp.workprec(bits):
        c = to_mpf(centroid, bits)
        if n == 1:
            return [mpc(c)]
        radius = mpf(min(n + 1, 2)) * mpf(8) / 10
        offset = mp.pi * (mp.sqrt(5) - 1)  # golden angle
        points = []
        for k in range(n):
            theta = 2 * mp.pi * k / n + offset
            points.append(mpc(c + radius * mp.cos(theta), radius * mp.sin(theta)))
        return points


def find_roots(
    p: ExactPolynomial,
    cfg: PrecisionConfig = PrecisionConfig(),
    start=None,
) -> RootSet:
    """All n zeros of p, certified; escalates precision until the
    certificate is strong (disjoint conjugation-closed disks, radii below
    RADIUS_REL_TOL relative) or the precision ceiling is hit.

    `start` optionally seeds the iteration (e.g. with the certified roots of
    the previous degree during a campaign); it must hold exactly n points.
    """
    n = p.degree
    bits = min(max(cfg.bits, _suggested_bits(n)), cfg.max_bits)
    if start is None:
        start = initial_points(n, bits)
    elif len(start) != n:
        raise ValueError(f"find_roots: start must hold exactly {n} points")
    trace: list[str] = []
    while True:
        raw, status, sweeps = _aberth_family(p, start, bits)
        trace.append(f"{bits} bits: {status} after {sweeps} sweeps")
        rs = None
        try:
            rs = certify(p, raw, bits)
        except CertificationError:
            pass
        target = max(RADIUS_REL_TOL, mpf(2) ** (32 - bits))
        if (
            rs is not None
            and rs.disks_disjoint()
            and rs.conjugation_closed()
            and rs.max_relative_radius() <= target
        ):
            return rs
        if bits >= cfg.max_bits:
            raise PrecisionExhaustedError(
                "find_roots: precision exhausted at "
                f"{cfg.max_bits} bits for n={n}; trace: {'; '.join(trace)}"
            )
        bits = cfg.escalate(bits)
        start = raw  # warm start: the stalled estimates seed the retry


def certify(p: ExactPolynomial, roots, bits: int | None = None) -> RootSet:
    """Fill residuals and inclusion radii for computed roots.

    radius_j = n (|p(z_j)| + err) / (|p'(z_j)| - err'): a disk at z_j of this
    radius contains at least one true zero.  Raises CertificationError when
    some |p'(z_j)| is indistinguishable from zero at this precision (which
    would signal a multiple root; the family is not expected to have any).
    """
    if isinstance(roots, RootSet):
        bits = bits or roots.precision_used
        roots = roots.roots
    if bits is None:
        raise ValueError("certify: bits required when roots is a plain sequence")
    n = p.degree
    pc, dc = _fraction_coefficients(p.degree)
    with mp.workprec(bits):
        zs = [mpc(z) for z in roots]
        if len(zs) != n:
            raise CertificationError(f"certification failed: expected {n} roots, got {len(zs)}")
        residuals = []
        radii = []
        for z in zs:
            v, ev = _horner_frac(pc, z, bits)
            dv, edv = _horner_frac(dc, z, bits)
            if abs(dv) <= edv:
                raise CertificationError(
                    "certification failed: |p'| below its evaluation error "
                    f"bound at root {mpmath.nstr(z, 17)} (possible multiple root)"
                )
            residuals.append(abs(v) + ev)
            radii.append(n * (abs(v) + ev) / (abs(dv) - edv))
        order = sorted(range(n), key=lambda i: (zs[i].real, zs[i].imag))
        zs = [zs[i] for i in order]
        residuals = [residuals[i] for i in order]
        radii = [radii[i] for i in order]
        overlaps = [False] * n
        for i in range(n):
            for j in range(i + 1, n):
                if abs(zs[i] - zs[j]) < radii[i] + radii[j]:
                    overlaps[i] = overlaps[j] = True
        return RootSet(n, tuple(zs), tuple(residuals), tuple(radii), bits, tuple(overlaps))


def rootset_csv(rs: RootSet, out=None) -> str:
    """CSV (n, j, re, im, residual, inclusion_radius); re/im at 40 significant
    digits, enough to round-trip the first 128 bits of each value."""
    lines = ["n,j,re,im,residual,inclusion_radius"]
    for j, z in enumerate(rs.roots):
        lines.append(
            f"{rs.degree},{j},{_dec(z.real, 40)},{_dec(z.imag, 40)},"
            f"{_dec(rs.residuals[j], 10)},{_dec(rs.inclusion_radii[j], 10)}"
        )
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text


def _dec(x: mpf, digits: int) -> str:
    return mpmath.nstr(x, digits)


def _suggested_bits(n: int) -> int:
    """Empirical conditioning of the family in the monomial basis: the
    near-real-axis zeros cost ~2.9 bits per degree to pin down, plus slack
    for the certification target."""
    return 96 + ceil(2.9 * n)


@lru_cache(maxsize=None)
def _fraction_coefficients(degree: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """(p, p') coefficient vectors of the family member, exact."""
    p = build_polynomial(degree)
    pc = p.coefficients
    dc = tuple(m * c for m, c in enumerate(pc) if m >= 1)
    return pc, dc


@lru_cache(maxsize=None)
def _rounded_coeff_pairs(degree: int, bits: int):
    """Coefficients of p as libmp mpc pairs at the working precision."""
    pc, _ = _fraction_coefficients(degree)
    return tuple((to_mpf(c, bits)._mpf_, fzero) for c in pc)


def _horner_frac(coeffs: tuple[Fraction, ...], z: mpc, bits: int) -> tuple[mpc, mpf]:
    """Horner with a running first-order rounding bound, for exact-rational
    coefficient vectors (used for both p and p' during certification)."""
    with mp.workprec(bits):
        rounded = [to_mpf(c, bits) for c in coeffs]
        z = mpc(z)
        u = mpf(2) ** (-bits)
        az = abs(z.real) + abs(z.imag)
        s = mpc(rounded[-1])
        err = abs(rounded[-1]) * u
        for c in rounded[-2::-1]:
            s = s * z + c
            err = err * az + (abs(s.real) + abs(s.imag) + abs(c)) * 4 * u
        return s, err


def _aberth_family(p: ExactPolynomial, start, bits: int):
    """Ehrlich-Aberth solve for the family polynomial at fixed precision."""
    coeffs = _rounded_coeff_pairs(p.degree, bits)
    start_pairs = [(to_mpc(z, bits).real._mpf_, to_mpc(z, bits).imag._mpf_) for z in start]
    roots, status, sweeps = _aberth_core(coeffs, start_pairs, bits)
    with mp.workprec(bits):
        return [mpc(mpf(re), mpf(im)) for (re, im) in roots], status, sweeps


def solve_complex_poly(coeffs, bits: int, start=None) -> list[mpc]:
    """Zeros of a general small polynomial with complex coefficients
    (ascending order).  Exists for the lemniscate-branch cubic; this is not
    a general-purpose solver surface."""
    with mp.workprec(bits):
        cs = [to_mpc(c, bits) for c in coeffs]
        if len(cs) < 2 or cs[-1] == 0:
            raise ValueError("solve_complex_poly: need degree >= 1 and nonzero leading coefficient")
        d = len(cs) - 1
        if start is None:
            centroid = -cs[-2] / (d * cs[-1])
            bound = 1 + max(abs(c / cs[-1]) for c in cs[:-1])
            offset = mp.pi * (mp.sqrt(5) - 1)
            start = [
                centroid + bound * mp.exp(mpc(0, 2 * mp.pi * k / d + offset)) for k in range(d)
            ]
        pairs = [(mpc(z).real._mpf_, mpc(z).imag._mpf_) for z in start]
        tuples = tuple((mpc(c).real._mpf_, mpc(c).imag._mpf_) for c in cs)
        roots, status, _ = _aberth_core(tuples, pairs, bits)
        if status != "converged":
            # fall back to one escalation; the cubic is benign except at the pinch
            roots, status, _ = _aberth_core(tuples, roots, 2 * bits)
        return [mpc(mpf(re), mpf(im)) for (re, im) in roots]


def _aberth_core(coeffs, roots, prec, stall_window: int = 10):
    """In-place Ehrlich-Aberth sweeps on raw libmp pairs.

    Stops 'converged' when every relative correction in a sweep is below
    2^(8-prec).  For an ill-conditioned polynomial the corrections instead
    plateau at the evaluation noise floor, which sits above that threshold;
    the plateau is detected by the one-bit-in-`stall_window`-sweeps rule,
    armed only once corrections are small (below 2^-40), because during the
    early global reorganization the worst correction hovers without that
    meaning anything is wrong.  A separate sweep budget bounds the global
    phase.  The caller certifies the returned configuration either way; a
    'plateau' exit at adequate precision is the normal terminal state.
    """
    n = len(coeffs) - 1
    roots = list(roots)
    threshold = from_man_exp(1, 8 - prec)
    freeze_threshold = from_man_exp(1, 4 - prec)
    endgame_mark = from_man_exp(1, -40)
    frozen = [False] * n
    history: list[tuple] = []
    global_budget = 60 + 2 * n
    max_sweeps = 120 + 6 * n
    for sweep in range(1, max_sweeps + 1):
        worst = fzero
        all_ok = True
        for i in range(n):
            if frozen[i]:
                continue
            z = roots[i]
            s = coeffs[-1]
            d = _MPC_ZERO
            for c in coeffs[-2::-1]:
                d = mpc_add(mpc_mul(d, z, prec), s, prec)
                s = mpc_add(mpc_mul(s, z, prec), c, prec)
            if s == _MPC_ZERO:
                frozen[i] = True
                continue
            if d == _MPC_ZERO:
                roots[i] = mpc_add(z, (from_man_exp(1, -prec // 2), fzero), prec)
                all_ok = False
                continue
            w = mpc_div(s, d, prec)
            acc = _MPC_ZERO
            for j in range(n):
                if j == i:
                    continue
                diff = mpc_sub(z, roots[j], prec)
                if diff == _MPC_ZERO:
                    diff = (from_man_exp(1, -prec), fzero)
                acc = mpc_add(acc, mpc_div(_MPC_ONE, diff, prec), prec)
            denom = mpc_sub(_MPC_ONE, mpc_mul(w, acc, prec), prec)
            corr = w if denom == _MPC_ZERO else mpc_div(w, denom, prec)
            roots[i] = mpc_sub(z, corr, prec)
            scale = mpf_add(fone, mpc_abs(z, _CTRL), _CTRL)
            rel = mpf_div(mpc_abs(corr, _CTRL), scale, _CTRL)
            if mpf_cmp(rel, threshold) >= 0:
                all_ok = False
            elif mpf_cmp(rel, freeze_threshold) < 0:
                frozen[i] = True
            if mpf_cmp(rel, worst) > 0:
                worst = rel
        history.append(worst)
        if all_ok:
            return roots, "converged", sweep
        in_endgame = mpf_cmp(worst, endgame_mark) < 0
        if in_endgame and len(history) > stall_window:
            old = history[-1 - stall_window]
            if mpf_cmp(worst, mpf_mul(old, fhalf, _CTRL)) > 0:
                return roots, "plateau", sweep
        if not in_endgame and sweep >= global_budget:
            return roots, "stall", sweep
    return roots, "stall", max_sweeps
