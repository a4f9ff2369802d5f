"""Verification campaigns over n, convergence statistics, figure data.

verify_lemmas drives the rootfinder across a range of degrees and turns the
certified root sets into per-degree verdicts (containment disk, unit-circle
escape, half-plane location, Vieta product).  convergence_report measures how
fast the zeros approach the lemniscate: per-root value residuals
| |z(1-z)^2| - 4/27 |, Euclidean distances to the sampled right branch, and
the angular spreading of the roots along the branch.  The figure emitters
write deterministic CSV/SVG artifacts; contouring and styling are left to
the consumer.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpc, mpf

from .exact import build_polynomial
from .geometry import branch_polyline, divides_and_level_field, level_field_csv
from .numerics import PrecisionConfig, to_mpc
from .rootfinder import RootSet, find_roots

_PINCH_EXCLUSION = 0.05  # |z - 1/3| below this is too close to the pinch for theta stats


@dataclass(frozen=True)
class LemmaReport:
    """Certified per-degree verdicts; all disk/position checks account for
    the inclusion radius, so a True verdict is backed by the certificate."""

    n: int
    root_count: int
    ek_disk: str  # "inside" | "boundary" | "violated"  (|z| vs n+1)
    outside_unit_circle: bool
    min_real_part: mpf
    max_modulus: mpf
    product_deviation: mpf  # relative deviation of prod |roots| from (3n+1)/(n+1)
    precision_used: int
    error: str | None = None


def _lemma_report(n: int, rs: RootSet) -> LemmaReport:
    with mp.workprec(rs.precision_used):
        bound = n + 1
        if all(abs(z) + r < bound for z, r in zip(rs.roots, rs.inclusion_radii)):
            ek = "inside"
        elif all(abs(z) - r <= bound for z, r in zip(rs.roots, rs.inclusion_radii)):
            ek = "boundary"
        else:
            ek = "violated"
        outside = max(abs(z) - r for z, r in zip(rs.roots, rs.inclusion_radii)) > 1
        min_re = min(z.real - r for z, r in zip(rs.roots, rs.inclusion_radii))
        max_mod = max(abs(z) for z in rs.roots)
        prod = mpf(1)
        for z in rs.roots:
            prod *= abs(z)
        deviation = abs(prod * (n + 1) / (3 * n + 1) - 1)
        return LemmaReport(
            n, len(rs.roots), ek, outside, min_re, max_mod, deviation, rs.precision_used
        )


def certified_roots_range(ns, cfg: PrecisionConfig = PrecisionConfig()) -> dict[int, RootSet]:
    """Certified RootSets for every degree in ns (sorted ascending solve
    order); consecutive degrees warm-start from the previous solution, which
    is what makes long campaigns affordable."""
    out: dict[int, RootSet] = {}
    prev: RootSet | None = None
    for n in sorted(set(int(n) for n in ns)):
        start = None
        if prev is not None and prev.degree == n - 1:
            with mp.workprec(prev.precision_used):
                start = list(prev.roots) + [mpc(1, mpf(1) / 7)]
        rs = find_roots(build_polynomial(n), cfg, start=start)
        out[n] = rs
        prev = rs
    return out


def verify_lemmas(
    n_range,
    cfg: PrecisionConfig = PrecisionConfig(),
    roots: dict[int, RootSet] | None = None,
) -> list[LemmaReport]:
    """LemmaReport per degree; rootfinder failures are recorded on the
    report (error field) without aborting the rest of the campaign."""
    ns = sorted(set(int(n) for n in n_range))
    if any(n < 1 for n in ns):
        raise ValueError("verify_lemmas: degrees must be >= 1")
    reports = []
    prev: RootSet | None = None
    for n in ns:
        try:
            if roots is not None and n in roots:
                rs = roots[n]
            else:
                start = None
                if prev is not None and prev.degree == n - 1:
                    with mp.workprec(prev.precision_used):
                        start = list(prev.roots) + [mpc(1, mpf(1) / 7)]
                rs = find_roots(build_polynomial(n), cfg, start=start)
            prev = rs
            reports.append(_lemma_report(n, rs))
        except Exception as exc:  # per-n isolation: campaign continues
            reports.append(
                LemmaReport(n, 0, "violated", False, mpf("nan"), mpf("nan"), mpf("nan"), 0, str(exc))
            )
    return reports


@dataclass(frozen=True)
class ZeroDatum:
    """Lemniscate diagnostics for one root."""

    root: mpc
    value_residual: mpf
    branch_distance: mpf
    theta: mpf | None  # phase of z(1-z)^2 / (4/27); None too close to the pinch


@dataclass(frozen=True)
class LemniscateReport:
    """Per-degree zero-vs-lemniscate statistics."""

    n: int
    per_zero: tuple[ZeroDatum, ...]
    max_value_residual: mpf
    median_value_residual: mpf
    min_real_part: mpf
    max_modulus: mpf
    theta_gap_min: mpf | None
    theta_gap_max: mpf | None
    theta_gap_ratio: mpf | None
    excluded_near_pinch: int
    precision_used: int


def _median(values) -> mpf:
    vs = sorted(values)
    k = len(vs)
    if k == 0:
        raise ValueError("median of empty list")
    if k % 2:
        return vs[k // 2]
    return (vs[k // 2 - 1] + vs[k // 2]) / 2


def _branch_distance(z, polyline, bits: int) -> mpf:
    """Euclidean distance from z to the right branch: nearest polyline
    vertex, sharpened by one Newton projection onto the level set where the
    gradient is healthy (it degenerates at the pinch, where the vertex
    distance stands)."""
    zf = complex(z)
    d_poly_f, _ = min(
        ((abs(zf - v), i) for i, v in enumerate(polyline)), key=lambda q: q[0]
    )
    with mp.workprec(bits):
        g = z * (1 - z) ** 2
        dg = (1 - z) * (1 - 3 * z)
        if abs(dg) > mpf(1) / 10:
            phi = abs(g) - mpf(4) / 27
            step = abs(phi) / abs(dg)
            if step <= 2 * d_poly_f + mpf(1) / 512:
                return step
        return mpf(d_poly_f)


def convergence_report(
    n_list,
    cfg: PrecisionConfig = PrecisionConfig(),
    branch_samples: int = 2048,
    roots: dict[int, RootSet] | None = None,
) -> list[LemniscateReport]:
    """LemniscateReport for each degree in ascending n_list order."""
    ns = sorted(set(int(n) for n in n_list))
    if any(n < 1 for n in ns):
        raise ValueError("convergence_report: degrees must be >= 1")
    bits = cfg.bits
    polyline = [complex(v) for v in branch_polyline(branch_samples, bits)]
    if roots is None:
        roots = certified_roots_range(ns, cfg)
    reports = []
    for n in ns:
        rs = roots[n]
        with mp.workprec(max(bits, rs.precision_used)):
            third = mpf(1) / 3
            data = []
            thetas = []
            excluded = 0
            for z in rs.roots:
                g = z * (1 - z) ** 2
                residual = abs(abs(g) - mpf(4) / 27)
                distance = _branch_distance(z, polyline, bits)
                theta = None
                if abs(z - third) < mpf(_PINCH_EXCLUSION):
                    excluded += 1
                elif z.real > third:
                    theta = mp.arg(g * 27 / 4)
                    thetas.append(theta)
                data.append(ZeroDatum(z, residual, distance, theta))
            gap_min = gap_max = ratio = None
            if len(thetas) >= 2:
                ts = sorted(thetas)
                gaps = [b - a for a, b in zip(ts[:-1], ts[1:])]
                gaps.append(ts[0] + 2 * mp.pi - ts[-1])  # wrap-around gap
                gap_min, gap_max = min(gaps), max(gaps)
                ratio = gap_max / gap_min
            residuals = [d.value_residual for d in data]
            reports.append(
                LemniscateReport(
                    n,
                    tuple(data),
                    max(residuals),
                    _median(residuals),
                    min(z.real for z in rs.roots),
                    max(abs(z) for z in rs.roots),
                    gap_min,
                    gap_max,
                    ratio,
                    excluded,
                    rs.precision_used,
                )
            )
    return reports


def residual_slope(reports: list[LemniscateReport]) -> mpf | None:
    """Least-squares slope of ln(median residual) against ln(n): the one
    summary exponent reported for the convergence trend."""
    if len(reports) < 2:
        return None
    with mp.workprec(64):
        xs = [mp.log(r.n) for r in reports]
        ys = [mp.log(r.median_value_residual) for r in reports]
        k = len(xs)
        mx = sum(xs) / k
        my = sum(ys) / k
        num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
        den = sum((x - mx) ** 2 for x in xs)
        return num / den


# ---------------------------------------------------------------------------
# CSV / SVG emission


def roots_report_csv(reports: list[LemniscateReport], roots: dict[int, RootSet], out=None) -> str:
    """Per-root CSV (n, j, re, im, residual, inclusion_radius,
    value_residual, branch_distance, theta)."""
    lines = ["n,j,re,im,residual,inclusion_radius,value_residual,branch_distance,theta"]
    for rep in reports:
        rs = roots[rep.n]
        for j, (z, datum) in enumerate(zip(rs.roots, rep.per_zero)):
            theta = "" if datum.theta is None else mpmath.nstr(datum.theta, 20)
            lines.append(
                f"{rep.n},{j},{mpmath.nstr(z.real, 40)},{mpmath.nstr(z.imag, 40)},"
                f"{mpmath.nstr(rs.residuals[j], 10)},{mpmath.nstr(rs.inclusion_radii[j], 10)},"
                f"{mpmath.nstr(datum.value_residual, 20)},{mpmath.nstr(datum.branch_distance, 20)},"
                f"{theta}"
            )
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text


def summary_csv(reports: list[LemniscateReport], out=None) -> str:
    """Per-degree CSV (n, max_value_residual, median_value_residual, min_re,
    max_modulus, theta_gap_ratio)."""
    lines = ["n,max_value_residual,median_value_residual,min_re,max_modulus,theta_gap_ratio"]
    for rep in reports:
        ratio = "" if rep.theta_gap_ratio is None else mpmath.nstr(rep.theta_gap_ratio, 20)
        lines.append(
            f"{rep.n},{mpmath.nstr(rep.max_value_residual, 20)},"
            f"{mpmath.nstr(rep.median_value_residual, 20)},{mpmath.nstr(rep.min_real_part, 20)},"
            f"{mpmath.nstr(rep.max_modulus, 20)},{ratio}"
        )
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text


def lemma_csv(reports: list[LemmaReport], out=None) -> str:
    """Per-degree CSV of lemma verdicts."""
    lines = [
        "n,root_count,ek_disk,outside_unit_circle,min_real_part,max_modulus,"
        "product_deviation,precision_used,error"
    ]
    for r in reports:
        lines.append(
            f"{r.n},{r.root_count},{r.ek_disk},{str(r.outside_unit_circle).lower()},"
            f"{mpmath.nstr(r.min_real_part, 20)},{mpmath.nstr(r.max_modulus, 20)},"
            f"{mpmath.nstr(r.product_deviation, 10)},{r.precision_used},"
            f"{'' if r.error is None else r.error}"
        )
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text


_FIGURE_N_LIST = (5, 10, 16, 23, 40, 60)
_PANEL_PX = 320
_WORLD = (0.24, 1.44, -0.68, 0.68)  # re_min, re_max, im_min, im_max of each panel


def figure_zero_plot(
    n_list=_FIGURE_N_LIST,
    cfg: PrecisionConfig = PrecisionConfig(),
    branch_samples: int = 1024,
    roots: dict[int, RootSet] | None = None,
) -> tuple[str, str]:
    """(svg_text, csv_text): the right lemniscate branch with root markers,
    one panel per degree, three panels per row.  The CSV carries every
    plotted coordinate as (n, kind, re, im) with kind in {branch, root}."""
    ns = sorted(set(int(n) for n in n_list))
    bits = cfg.bits
    branch = branch_polyline(branch_samples, bits)
    if roots is None:
        roots = certified_roots_range(ns, cfg)

    csv_lines = ["n,kind,re,im"]
    for n in ns:
        for v in branch:
            csv_lines.append(f"{n},branch,{_f(v.real)},{_f(v.imag)}")
        for z in roots[n].roots:
            csv_lines.append(f"{n},root,{_f(z.real)},{_f(z.imag)}")
    csv_text = "\n".join(csv_lines) + "\n"

    cols = 3
    rows = (len(ns) + cols - 1) // cols
    width = cols * _PANEL_PX
    height = rows * _PANEL_PX
    re0, re1, im0, im1 = _WORLD
    scale = (_PANEL_PX - 20) / (re1 - re0)

    svg = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
        f'width="{width}" height="{height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for idx, n in enumerate(ns):
        ox = (idx % cols) * _PANEL_PX + 10
        oy = (idx // cols) * _PANEL_PX + 10

        def px(z):
            x = ox + (float(z.real) - re0) * scale
            y = oy + (im1 - float(z.imag)) * scale
            return f"{x:.2f},{y:.2f}"

        pts = " ".join(px(v) for v in branch + branch[:1])
        svg.append(f'<g id="panel-n{n}">')
        svg.append(
            f'<rect x="{ox - 10}" y="{oy - 10}" width="{_PANEL_PX}" height="{_PANEL_PX}" '
            'fill="none" stroke="#999" stroke-width="1"/>'
        )
        svg.append(f'<text x="{ox + 4}" y="{oy + 14}" font-size="14">n = {n}</text>')
        svg.append(
            f'<polyline points="{pts}" fill="none" stroke="#1f6fb2" stroke-width="1.2"/>'
        )
        for z in roots[n].roots:
            x, y = px(z).split(",")
            svg.append(f'<circle cx="{x}" cy="{y}" r="2.4" fill="#c22"/>')
        svg.append("</g>")
    svg.append("</svg>")
    return "\n".join(svg) + "\n", csv_text


def figure_level_curves(z, window, res: int, bits: int = PrecisionConfig().bits) -> str:
    """Level-field CSV (with divide metadata) for external contouring."""
    field = divides_and_level_field(to_mpc(z, bits), window, res, bits)
    return level_field_csv(field)


def _f(x) -> str:
    return mpmath.nstr(mpf(x), 17)
