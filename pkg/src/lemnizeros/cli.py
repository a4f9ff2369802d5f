"""Command-line surface: reproducible runs over the library modules.

Every invocation is described by a RunConfig; a run is a pure function of
it, and outputs land in a subdirectory named by a content hash of the
mathematical fields (the output directory itself does not influence the
hash).  Re-running an already-completed configuration into the same --out
reuses the cached artifacts.

Exit codes: 0 success, 1 failed verification check, 2 usage, 3 root
certification failure, 4 precision exhausted, 5 path tracing failure.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

import mpmath
from mpmath import mp, mpf

from . import analysis
from .exact import build_polynomial, coefficients_csv
from .numerics import PrecisionConfig, PrecisionExhaustedError, to_mpc
from .paths import PathError, path_csv, trace_path
from .rootfinder import CertificationError, RootSet, find_roots, rootset_csv

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CERTIFICATION = 3
EXIT_PRECISION = 4
EXIT_PATH = 5

VIETA_TOL = mpf("1e-10")


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on.  `out` is where artifacts land and is
    deliberately excluded from the content hash."""

    command: str
    n: int | None = None
    n_range: tuple[int, int] | None = None
    n_list: tuple[int, ...] | None = None
    precision_bits: int = 128
    max_bits: int = 4096
    theta_grid: int = 2048
    steps: int = 512
    path_tol: str | None = None
    workers: int = 0  # 0 resolves to the available core count
    kind: str | None = None
    z: str | None = None
    window: str | None = None
    res: int = 64
    out: str | None = None

    def to_text(self, include_out: bool = True) -> str:
        lines = []
        for f in fields(self):
            if f.name == "out" and not include_out:
                continue
            v = getattr(self, f.name)
            if v is None:
                continue
            if isinstance(v, tuple):
                v = ",".join(str(x) for x in v)
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_text(include_out=False).encode()).hexdigest()[:12]

    def precision(self) -> PrecisionConfig:
        return PrecisionConfig(bits=self.precision_bits, max_bits=max(self.max_bits, self.precision_bits))

    def degrees(self) -> list[int]:
        if self.n is not None:
            return [self.n]
        if self.n_range is not None:
            lo, hi = self.n_range
            return list(range(lo, hi + 1))
        if self.n_list is not None:
            return list(self.n_list)
        raise ValueError("no degrees given: use --n, --n-range or --n-list")


def parse_run_config_text(text: str, command: str | None = None) -> RunConfig:
    """Parse the plain `key = value` config format back into a RunConfig."""
    values: dict[str, object] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        val = val.strip()
        if key in ("n", "precision_bits", "max_bits", "theta_grid", "steps", "workers", "res"):
            values[key] = int(val)
        elif key == "n_range":
            lo, hi = val.split(",")
            values[key] = (int(lo), int(hi))
        elif key == "n_list":
            values[key] = tuple(int(x) for x in val.split(","))
        elif key in ("command", "kind", "z", "window", "path_tol", "out"):
            values[key] = val
        else:
            raise ValueError(f"unknown config key: {key}")
    if command is not None:
        values["command"] = command
    if "command" not in values:
        raise ValueError("config must carry a command")
    return RunConfig(**values)  # type: ignore[arg-type]


def parse_rational_complex(text: str) -> tuple[Fraction, Fraction]:
    """Exact rational a+bi syntax: '4/3', '1/3+2/3i', '-1+0.5i', '2i'."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    if s[-1] in "ij":
        body = s[:-1]
        split = None
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "+-/.":
                split = k
                break
        if split is None:
            re_part, im_part = "0", body
        else:
            re_part, im_part = body[:split], body[split:]
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return Fraction(re_part), Fraction(im_part)
    return Fraction(s), Fraction(0)


def _parse_n_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    return int(lo), int(hi)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lemnizeros",
        description="Hypergeometric-family zeros, their certification, and the lemniscate limit.",
    )
    parser.add_argument("--config", help="plain key = value config file; flags override")
    sub = parser.add_subparsers(dest="command")

    def common(p, *, degrees=False):
        p.add_argument("--precision-bits", type=int, default=None)
        p.add_argument("--max-bits", type=int, default=None)
        p.add_argument("--out", default=None, help="output directory (hash-named subdir per run)")
        p.add_argument("--workers", type=int, default=None, help="worker processes (0 = all cores)")
        if degrees:
            p.add_argument("--n", type=int, default=None)
            p.add_argument("--n-range", type=_parse_n_range, default=None, metavar="LO..HI")
            p.add_argument("--n-list", type=lambda s: tuple(int(x) for x in s.split(",")), default=None)

    p = sub.add_parser("coeffs", help="exact rational coefficients as CSV")
    common(p, degrees=True)

    p = sub.add_parser("roots", help="certified roots as CSV")
    common(p, degrees=True)

    p = sub.add_parser("verify", help="certified root-property campaign with PASS/FAIL lines")
    common(p, degrees=True)

    p = sub.add_parser("report", help="lemniscate convergence report")
    common(p, degrees=True)
    p.add_argument("--theta-grid", type=int, default=None, help="branch polyline sample count")

    p = sub.add_parser("figure", help="figure data emission (SVG/CSV)")
    common(p, degrees=True)
    p.add_argument("--kind", choices=("zeros", "level"), required=True)
    p.add_argument("--theta-grid", type=int, default=None)
    p.add_argument("--z", default=None, help="rational complex, e.g. 4/3 or 1/3+2/3i")
    p.add_argument("--window", default=None, help="re_min,re_max,im_min,im_max")
    p.add_argument("--res", type=int, default=None)

    p = sub.add_parser("trace", help="steepest-path trace as CSV")
    common(p)
    p.add_argument("--z", required=True)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--path-tol", default=None)

    return parser


def config_from_args(args) -> RunConfig:
    base = RunConfig(command="unset")
    if args.config:
        base = parse_run_config_text(Path(args.config).read_text(encoding="utf-8"))
    overrides = {}
    if args.command:
        overrides["command"] = args.command
    for name in (
        "n", "n_range", "n_list", "precision_bits", "max_bits", "theta_grid",
        "steps", "path_tol", "workers", "kind", "z", "window", "res", "out",
    ):
        if hasattr(args, name) and getattr(args, name) is not None:
            overrides[name] = getattr(args, name)
    cfg = replace(base, **overrides)
    if cfg.command == "unset":
        raise ValueError("no command given")
    if cfg.workers == 0:
        cfg = replace(cfg, workers=os.cpu_count() or 1)
    return cfg


def _outdir(cfg: RunConfig) -> Path | None:
    if cfg.out is None:
        return None
    d = Path(cfg.out) / f"{cfg.command}-{cfg.content_hash()}"
    d.mkdir(parents=True, exist_ok=True)
    (d / "runconfig.txt").write_text(cfg.to_text(), encoding="utf-8")
    return d


def _emit(directory: Path | None, name: str, text: str, quiet: bool = False) -> None:
    if directory is not None:
        (directory / name).write_text(text, encoding="utf-8", newline="\n")
    elif not quiet:
        sys.stdout.write(text)


def _solve_one(payload) -> RootSet:
    n, bits, max_bits = payload
    return find_roots(build_polynomial(n), PrecisionConfig(bits=bits, max_bits=max_bits))


def _solve_degrees(cfg: RunConfig, ns: list[int]) -> dict[int, RootSet]:
    """workers == 1: sequential chain with warm starts; workers > 1: per-n
    independent solves (deterministic regardless of pool scheduling)."""
    pcfg = cfg.precision()
    if cfg.workers <= 1:
        return analysis.certified_roots_range(ns, pcfg)
    payloads = [(n, pcfg.bits, pcfg.max_bits) for n in sorted(set(ns))]
    try:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            solved = list(pool.map(_solve_one, payloads))
    except (OSError, PermissionError):  # restricted environments: same plan, serial
        solved = [_solve_one(p) for p in payloads]
    return {rs.degree: rs for rs in solved}


def run(cfg: RunConfig) -> int:
    outdir = _outdir(cfg)
    if outdir is not None and (outdir / "DONE").exists():
        print(f"cached: {outdir}")
        return EXIT_OK

    code = _dispatch(cfg, outdir)
    if code == EXIT_OK and outdir is not None:
        (outdir / "DONE").write_text("ok\n", encoding="utf-8")
    return code


def _dispatch(cfg: RunConfig, outdir: Path | None) -> int:
    if cfg.command == "coeffs":
        ns = cfg.degrees()
        if any(n < 1 for n in ns):
            raise ValueError("coeffs: n must be >= 1")
        _emit(outdir, "coeffs.csv", coefficients_csv(ns))
        if outdir is not None:
            print(f"wrote {outdir / 'coeffs.csv'}")
        return EXIT_OK

    if cfg.command == "roots":
        ns = cfg.degrees()
        if any(n < 1 for n in ns):
            raise ValueError("roots: n must be >= 1")
        solved = _solve_degrees(cfg, ns)
        text = "".join(rootset_csv(solved[n]) if i == 0 else _strip_header(rootset_csv(solved[n]))
                       for i, n in enumerate(sorted(solved)))
        _emit(outdir, "roots.csv", text)
        if outdir is not None:
            print(f"wrote {outdir / 'roots.csv'}")
        return EXIT_OK

    if cfg.command == "verify":
        return _run_verify(cfg, outdir)

    if cfg.command == "report":
        ns = cfg.degrees()
        pcfg = cfg.precision()
        solved = _solve_degrees(cfg, ns)
        reports = analysis.convergence_report(ns, pcfg, branch_samples=cfg.theta_grid, roots=solved)
        _emit(outdir, "roots_report.csv", analysis.roots_report_csv(reports, solved), quiet=True)
        _emit(outdir, "summary.csv", analysis.summary_csv(reports))
        slope = analysis.residual_slope(reports)
        if slope is not None:
            print(f"log-median-residual slope vs log n: {mpmath.nstr(slope, 6)}")
        return EXIT_OK

    if cfg.command == "figure":
        if cfg.kind == "zeros":
            ns = cfg.degrees() if (cfg.n or cfg.n_list or cfg.n_range) else list(analysis._FIGURE_N_LIST)
            solved = _solve_degrees(cfg, ns)
            svg, csv_text = analysis.figure_zero_plot(
                ns, cfg.precision(), branch_samples=cfg.theta_grid or 1024, roots=solved
            )
            _emit(outdir, "figure_zeros.svg", svg, quiet=True)
            _emit(outdir, "figure_zeros.csv", csv_text)
            if outdir is not None:
                print(f"wrote {outdir / 'figure_zeros.svg'}")
            return EXIT_OK
        if cfg.kind == "level":
            if cfg.z is None:
                raise ValueError("figure --kind level requires --z")
            window = (
                tuple(Fraction(x) for x in cfg.window.split(","))
                if cfg.window
                else (Fraction(-3, 2), Fraction(3, 2), Fraction(-3, 2), Fraction(3, 2))
            )
            re_q, im_q = parse_rational_complex(cfg.z)
            z = to_mpc(re_q, cfg.precision_bits, im_q)
            text = analysis.figure_level_curves(z, window, cfg.res, cfg.precision_bits)
            _emit(outdir, "level_field.csv", text)
            if outdir is not None:
                print(f"wrote {outdir / 'level_field.csv'}")
            return EXIT_OK
        raise ValueError(f"unknown figure kind {cfg.kind!r}")

    if cfg.command == "trace":
        re_q, im_q = parse_rational_complex(cfg.z)
        z = to_mpc(re_q, cfg.precision_bits, im_q)
        path = trace_path(
            z,
            steps=cfg.steps,
            path_tol=None if cfg.path_tol is None else mpf(cfg.path_tol),
            bits=cfg.precision_bits,
        )
        _emit(outdir, "path.csv", path_csv(path))
        print(
            f"t(0) = {mpmath.nstr(path.start_point, 20)} ({path.start_label}); "
            f"{len(path.samples)} samples"
        )
        return EXIT_OK

    raise ValueError(f"unknown command {cfg.command!r}")


def _strip_header(csv_text: str) -> str:
    return csv_text.split("\n", 1)[1]


def _run_verify(cfg: RunConfig, outdir: Path | None) -> int:
    ns = cfg.degrees()
    pcfg = cfg.precision()
    solved = _solve_degrees(cfg, ns)
    reports = analysis.verify_lemmas(ns, pcfg, roots=solved)
    _emit(outdir, "lemmas.csv", analysis.lemma_csv(reports), quiet=True)

    errors = [r for r in reports if r.error is not None]
    checked = [r for r in reports if r.error is None]
    strict = [r for r in checked if r.n >= 2]  # n = 1 is the flagged boundary case
    lines = []
    ok = True

    def check(name: str, passed: bool, detail: str):
        nonlocal ok
        ok = ok and passed
        lines.append(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")

    span = f"n={min(ns)}..{max(ns)}"
    check("root-count", all(r.root_count == r.n for r in checked), f"{span}, each degree yields n certified roots")
    check("ek-disk", all(r.ek_disk == "inside" for r in strict),
          f"{span}, all certified roots inside |z| < n+1"
          + ("; n=1 reported as boundary" if any(r.n == 1 for r in checked) else ""))
    check("unit-circle", all(r.outside_unit_circle for r in checked),
          f"{span}, largest root modulus certified > 1")
    with mp.workprec(64):
        min_re = min((r.min_real_part for r in checked), default=mpf("nan"))
        max_dev = max((r.product_deviation for r in checked), default=mpf("nan"))
    check("re-gt-third", all(r.min_real_part > mpf(1) / 3 for r in checked),
          f"{span}, min certified Re(root) = {mpmath.nstr(min_re, 8)} > 1/3")
    check("vieta-product", all(r.product_deviation < VIETA_TOL for r in checked),
          f"{span}, max |prod moduli - (3n+1)/(n+1)| rel = {mpmath.nstr(max_dev, 4)} < 1e-10")
    if errors:
        ok = False
        for r in errors:
            lines.append(f"FAIL n={r.n}: {r.error}")

    text = "\n".join(lines) + "\n"
    print(text, end="")
    _emit(outdir, "verify.txt", text, quiet=True)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None and not args.config:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = config_from_args(args)
        return run(cfg)
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except PrecisionExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except PathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PATH
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
