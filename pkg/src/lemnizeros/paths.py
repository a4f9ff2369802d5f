"""Steepest-ascent path continuation and the integral representations.

The polynomial admits the representation (n+1) * integral over [0,1] of
f_z(t)^n dt with f_z(t) = t(1 - z t^2).  Everything in this module feeds on
that: full-interval quadrature, the exact Beta/Gamma closed form of the
piece from 0 to 1/sqrt(z), the Stirling leading term, and the remaining
piece along the curve of constant arg f_z, parametrized implicitly by

    t (1 - z t^2) = r (1 - z),    0 <= r <= 1,  t(1) = 1.

The path is traced by marching r from 1 downward with a fourth-order
predictor on dt/dr = (1-z)/(1-3zt^2) and a Newton correction back onto the
implicit curve after every step.  Sample placement doubles as quadrature:
the r-nodes are composite Gauss-Legendre panels refined geometrically
toward r = 1, where the factor r^(n-1) concentrates; the tail integral is
then a weighted sum over the stored samples at spectral accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

from .exact import gamma_ratio_exact
from .geometry import BOUNDARY, ZERO_BASIN, basin_classify
from .numerics import f_eval, fprime_factor, principal_sqrt, to_mpc, to_mpf
from .quadrature import legendre_rule

DEFAULT_BITS = 128
DEFAULT_STEPS = 512
_PANEL_NODES = 8
_GEOMETRIC_DEPTH_CAP = 16
_PREDICTOR_MAX_STEP = Fraction(1, 128)


class PathError(RuntimeError):
    """Base for path-tracing and path-quadrature failures."""


class SaddleProximityError(PathError):
    """The path ran into a continental divide (1 - 3zt^2 ~ 0)."""


class EndpointMismatchError(PathError):
    """The traced path did not land on the basin-predicted endpoint."""


class PathResolutionError(PathError):
    """The stored samples cannot resolve the r^(n-1) boundary layer."""


@dataclass(frozen=True)
class SteepestPath:
    """Sampled solution t(r) of the implicit path equation.

    samples runs from (0, t(0)) to (1, 1) with r strictly increasing; quad
    is the interior subset carrying Gauss-Legendre weights, ready for
    integration in r.  start_label records which zero of f_z the path
    emanates from ("inv-sqrt-z" or "zero").
    """

    z: mpc
    samples: tuple[tuple[mpf, mpc], ...]
    quad: tuple[tuple[mpf, mpc, mpf], ...]
    start_point: mpc
    start_label: str
    path_tol: mpf
    bits: int

    def implicit_residual(self, r: mpf, t: mpc) -> mpf:
        with mp.workprec(self.bits):
            return abs(f_eval(self.z, t) - r * (1 - self.z))


def _panel_breakpoints(steps: int):
    """Panel edges on [0,1]: uniform on [0, 1/2], halving toward 1.

    `steps` is the target number of interior quadrature nodes; panels hold
    _PANEL_NODES nodes each.  The geometric tail ends at 1 - 2^-depth.  Wide
    panels at the head of the geometric cascade are subdivided to width at
    most 1/64: with 8-point panels the truncation error scales like the 16th
    power of panel width over analyticity distance, and the implicit branch
    t(r) can have complex-r branch points within O(1) of the interval.
    """
    panels = max(2, steps // _PANEL_NODES)
    depth = min(_GEOMETRIC_DEPTH_CAP, panels - 1)
    uniform = panels - (depth - 1)
    coarse = [Fraction(j, 2 * uniform) for j in range(uniform + 1)]  # 0 .. 1/2
    for j in range(2, depth + 1):
        coarse.append(1 - Fraction(1, 2**j))
    coarse.append(Fraction(1))
    cap = max(Fraction(1, 64), Fraction(1, 2 * uniform))
    bps = [coarse[0]]
    for a, b in zip(coarse[:-1], coarse[1:]):
        pieces = max(1, -((a - b) // cap))  # ceil((b-a)/cap)
        for i in range(1, pieces + 1):
            bps.append(a + (b - a) * Fraction(i, pieces))
    return bps


def trace_path(
    z,
    steps: int = DEFAULT_STEPS,
    path_tol=None,
    bits: int = DEFAULT_BITS,
) -> SteepestPath:
    """Trace t(r) for r from 1 down to 0 and return the sampled path.

    Preconditions: z is not 1 (the parametrization degenerates: f_z(1) = 0)
    and z is not on the basin boundary (the path would run along a divide).
    The endpoint t(0) must land on the basin prediction: 1/sqrt(z) in the
    inv-sqrt-z basin, 0 in the zero basin; z = 0 is allowed and gives the
    trivial path t = r.
    """
    with mp.workprec(bits):
        z = to_mpc(z, bits)
        if z == 1:
            raise ValueError("trace_path: z = 1 degenerates (f_z(1) = 0)")
        if path_tol is None:
            path_tol = mpf(2) ** (32 - bits)
        else:
            path_tol = mpf(path_tol)
        if z == 0:
            label, predicted = "zero", mpc(0)
        else:
            basin = basin_classify(z, bits)
            if basin == BOUNDARY:
                raise ValueError("trace_path: z lies on the basin boundary (parabola)")
            if basin == ZERO_BASIN:
                label, predicted = "zero", mpc(0)
            else:
                label, predicted = "inv-sqrt-z", 1 / principal_sqrt(z, bits)

        rule = legendre_rule(_PANEL_NODES, bits)
        bps = _panel_breakpoints(steps)
        nodes: list[tuple[mpf, mpf]] = []  # (r, weight), ascending in r
        for a, b in zip(bps[:-1], bps[1:]):
            mid = to_mpf((a + b) / 2, bits)
            rad = to_mpf((b - a) / 2, bits)
            for x, w in rule:
                nodes.append((mid + rad * x, rad * w))

        one_minus_z = 1 - z
        h_max = to_mpf(_PREDICTOR_MAX_STEP, bits)
        saddle_floor = 10 * path_tol

        def derivative(t):
            d = fprime_factor(z, t)
            if abs(d) < saddle_floor:
                raise SaddleProximityError(
                    f"saddle proximity: |1-3zt^2| = {mpmath.nstr(abs(d), 8)} during predictor"
                )
            return one_minus_z / d

        noise_floor = mpf(2) ** (16 - bits) * (1 + abs(z))

        def correct(r, t):
            # Newton back onto t(1-zt^2) = r(1-z); tolerance scales with r so
            # the constant-argument property holds uniformly along the path,
            # floored at the evaluation noise of the residual itself.
            target = r * one_minus_z
            tol = max(path_tol * abs(one_minus_z) * r, noise_floor)
            for _ in range(80):
                d = fprime_factor(z, t)
                if abs(d) < saddle_floor:
                    raise SaddleProximityError(
                        f"saddle proximity: |1-3zt^2| = {mpmath.nstr(abs(d), 8)} at r = {mpmath.nstr(r, 8)}"
                    )
                res = f_eval(z, t) - target
                if abs(res) <= tol:
                    return t
                t = t - res / d
            raise SaddleProximityError(
                f"saddle proximity: correction failed to converge at r = {mpmath.nstr(r, 8)}"
            )

        def march(r_from, t_from, r_to):
            # RK4 predictor in substeps no longer than h_max, then correct.
            t = t_from
            r = r_from
            remaining = r_from - r_to
            substeps = max(1, int(mp.ceil(remaining / h_max)))
            h = -remaining / substeps
            for _ in range(substeps):
                k1 = derivative(t)
                k2 = derivative(t + h / 2 * k1)
                k3 = derivative(t + h / 2 * k2)
                k4 = derivative(t + h * k3)
                t = t + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
                r = r + h
            return correct(r_to, t)

        quad: list[tuple[mpf, mpc, mpf]] = []
        r_cur, t_cur = mpf(1), mpc(1)
        for r, w in reversed(nodes):
            t_cur = march(r_cur, t_cur, r)
            r_cur = r
            quad.append((r, t_cur, w))
        quad.reverse()

        # land on r = 0: predictor to 0, then Newton on f_z(t) = 0 itself
        t_end = march(r_cur, t_cur, mpf(0)) if z != 0 else mpc(0)
        if abs(t_end - predicted) > 100 * path_tol:
            raise EndpointMismatchError(
                f"endpoint mismatch: t(0) = {mpmath.nstr(t_end, 12)}, "
                f"basin predicts {mpmath.nstr(predicted, 12)}"
            )
        samples = ((mpf(0), t_end),) + tuple((r, t) for r, t, _ in quad) + ((mpf(1), mpc(1)),)
        return SteepestPath(z, samples, tuple(quad), t_end, label, path_tol, bits)


def path_csv(path: SteepestPath, out=None) -> str:
    """CSV (r, re_t, im_t, implicit_residual) over all stored samples."""
    lines = ["r,re_t,im_t,implicit_residual"]
    for r, t in path.samples:
        lines.append(
            f"{mpmath.nstr(r, 24)},{mpmath.nstr(t.real, 24)},"
            f"{mpmath.nstr(t.imag, 24)},{mpmath.nstr(path.implicit_residual(r, t), 8)}"
        )
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text


def integral_full(n: int, z, bits: int = DEFAULT_BITS) -> mpc:
    """(n+1) * Gauss-Legendre integral of f_z(t)^n over the real segment [0,1].

    Node count max(64, 2n) exceeds the exactness threshold for the degree-3n
    integrand, so the value differs from the Horner evaluation of the
    polynomial only by rounding; that identity is a primary cross-check.
    """
    if n < 1:
        raise ValueError("integral_full: n must be >= 1")
    rule = legendre_rule(max(64, 2 * n), bits)
    with mp.workprec(bits):
        z = to_mpc(z, bits)
        half = mpf(1) / 2
        total = mpc(0)
        for x, w in rule:
            t = half * (x + 1)
            total += w * f_eval(z, t) ** n
        return (n + 1) * half * total


def segment_integral(n: int, z, bits: int = DEFAULT_BITS, method: str = "closed-form") -> mpc:
    """Integral of f_z^n from 0 to 1/sqrt(z).

    closed-form: (1 / (2 (sqrt z)^(n+1))) * the exact Gamma ratio (always a
    rational number; see exact.gamma_ratio_exact).  quadrature: straight
    segment from 0 to 1/sqrt(z), Gauss-Legendre in the segment parameter,
    kept as an independent cross-validation route.
    """
    if n < 1:
        raise ValueError("segment_integral: n must be >= 1")
    with mp.workprec(bits):
        z = to_mpc(z, bits)
        if z == 0:
            raise ValueError("segment_integral: z must be nonzero")
        if z.imag == 0 and z.real < 0:
            raise ValueError("segment_integral: z on the branch cut")
        sz = principal_sqrt(z, bits)
        if method == "closed-form":
            ratio = to_mpf(gamma_ratio_exact(n).value, bits)
            return ratio / (2 * sz ** (n + 1))
        if method == "quadrature":
            t_end = 1 / sz
            rule = legendre_rule(max(64, 2 * n), bits)
            half = mpf(1) / 2
            total = mpc(0)
            for x, w in rule:
                s = half * (x + 1)
                total += w * f_eval(z, s * t_end) ** n
            return half * total * t_end
        raise ValueError(f"segment_integral: unknown method {method!r}")


@dataclass(frozen=True)
class AsymptoticTerm:
    """Leading Stirling term of the segment integral.

    value = (2/sqrt(27))^n * sqrt(2 pi) / (3 sqrt(n) (sqrt z)^(n+1)); the
    first omitted correction is of relative size O(1/n), recorded as the
    budget 1/n.  |value| depends on z only through |sqrt(z)|.
    """

    n: int
    value: mpc
    rel_error_budget: mpf


def saddle_asymptotic(n: int, z, bits: int = DEFAULT_BITS) -> AsymptoticTerm:
    if n < 1:
        raise ValueError("saddle_asymptotic: n must be >= 1")
    with mp.workprec(bits):
        z = to_mpc(z, bits)
        if z == 0:
            raise ValueError("saddle_asymptotic: z must be nonzero")
        if z.imag == 0 and z.real < 0:
            raise ValueError("saddle_asymptotic: z on the branch cut")
        sz = principal_sqrt(z, bits)
        value = (
            (2 / mp.sqrt(27)) ** n * mp.sqrt(2 * mp.pi) / (3 * mp.sqrt(n) * sz ** (n + 1))
        )
        return AsymptoticTerm(n, value, mpf(1) / n)


def _bare_tail_sum(n: int, path: SteepestPath) -> mpc:
    """Sum of w * (1-zt^2) t r^(n-1) / (1-3zt^2) over the stored quadrature
    samples; the caller applies any outer factors."""
    if not path.quad:
        raise PathResolutionError("path too coarse: no quadrature samples stored")
    with mp.workprec(path.bits):
        z = path.z
        gap = 1 - path.quad[-1][0]
        if gap > mpf(1) / (4 * n):
            raise PathResolutionError(
                f"path too coarse: resolution {mpmath.nstr(gap, 6)} near r = 1 "
                f"exceeds 1/(4n) = {mpmath.nstr(mpf(1) / (4 * n), 6)}"
            )
        total = mpc(0)
        for r, t, w in path.quad:
            total += w * (1 - z * t * t) * t * r ** (n - 1) / (1 - 3 * z * t * t)
        return total


def tail_integral(n: int, path: SteepestPath) -> mpc:
    """(1-z)^n times the r-integral along the traced path: the integral of
    f_z^n from the path start to 1.  Requires a path traced from 1/sqrt(z);
    together with segment_integral it must rebuild integral_full/(n+1)."""
    if n < 1:
        raise ValueError("tail_integral: n must be >= 1")
    if path.start_label != "inv-sqrt-z":
        raise ValueError("tail_integral: path must start at 1/sqrt(z)")
    with mp.workprec(path.bits):
        return (1 - path.z) ** n * _bare_tail_sum(n, path)


def zero_equation_residual(
    n: int,
    z,
    bits: int = DEFAULT_BITS,
    steps: int = DEFAULT_STEPS,
    path: SteepestPath | None = None,
) -> tuple[mpc, mpc]:
    """Both sides of the asymptotic zero condition at z.

    lhs = (sqrt z)^(n+1) (1-z)^n * (bare r-integral along the path);
    rhs = -(2/sqrt 27)^n sqrt(2 pi) / (3 sqrt n).  At a true zero of the
    degree-n polynomial, lhs = rhs * (1 + O(1/n)).
    """
    if n < 1:
        raise ValueError("zero_equation_residual: n must be >= 1")
    with mp.workprec(bits):
        z = to_mpc(z, bits)
        if not z.real > mpf(1) / 3:
            raise ValueError("zero_equation_residual: requires Re(z) > 1/3")
        if z == 1:
            raise ValueError("zero_equation_residual: z = 1 is excluded")
        if path is None:
            path = trace_path(z, steps=steps, bits=bits)
        elif path.z != z:
            raise ValueError("zero_equation_residual: path was traced for a different z")
        bare = _bare_tail_sum(n, path)
        sz = principal_sqrt(z, bits)
        lhs = sz ** (n + 1) * (1 - z) ** n * bare
        rhs = -((2 / mp.sqrt(27)) ** n) * mp.sqrt(2 * mp.pi) / (3 * mp.sqrt(n))
        return lhs, rhs


@dataclass(frozen=True)
class HalfplaneVerdict:
    """Outcome of the lower-bound check Re{(1-zt^2) t / (1-3zt^2)} > 1/6."""

    ok: bool
    min_real: mpf
    samples_checked: int


def halfplane_bound_check(z, path: SteepestPath, window=(0.9, 1.0)) -> HalfplaneVerdict:
    """Verify the 1/6 lower bound along the path for r in `window`.

    Applies to z in the zero basin (Re(z) < 1/3 side): near r = 1 the
    integrand of the bare tail sum has real part exceeding 1/6, which is
    what keeps the polynomial from vanishing there.
    """
    if path.start_label != "zero":
        raise ValueError("halfplane_bound_check: path must start at t = 0")
    lo, hi = window
    with mp.workprec(path.bits):
        z = to_mpc(z, path.bits)
        if z != path.z:
            raise ValueError("halfplane_bound_check: path was traced for a different z")
        sixth = mpf(1) / 6
        min_real = None
        checked = 0
        for r, t, _ in path.quad:
            if r < lo or r > hi:
                continue
            val = (1 - z * t * t) * t / (1 - 3 * z * t * t)
            checked += 1
            if min_real is None or val.real < min_real:
                min_real = val.real
        if checked == 0:
            raise ValueError("halfplane_bound_check: no samples in window")
        return HalfplaneVerdict(min_real > sixth, min_real, checked)
