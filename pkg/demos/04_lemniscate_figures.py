"""Zeros crowding onto the lemniscate: statistics plus figure emission.

Solves the degrees 5, 10, 16, 23, 40, 60, measures the per-root residual
| |z(1-z)^2| - 4/27 | and the Euclidean distance to the sampled right
branch, and writes the six-panel SVG (branch + root markers) together with
CSV data into demos/output/.
"""

from pathlib import Path

from mpmath import mp, nstr

from lemnizeros import convergence_report, figure_level_curves, figure_zero_plot
from lemnizeros.analysis import certified_roots_range, residual_slope, summary_csv

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

ns = [5, 10, 16, 23, 40, 60]
roots = certified_roots_range(ns)
reports = convergence_report(ns, roots=roots)

print("per-degree lemniscate statistics:")
print(f"{'n':>4} {'median residual':>18} {'max residual':>16} {'min Re':>10} {'gap ratio':>10}")
for rep in reports:
    print(f"{rep.n:>4} {nstr(rep.median_value_residual, 5):>18} "
          f"{nstr(rep.max_value_residual, 5):>16} {nstr(rep.min_real_part, 5):>10} "
          f"{nstr(rep.theta_gap_ratio, 4):>10}")
print("log-median slope vs log n:", nstr(residual_slope(reports), 5),
      "(the residuals shrink roughly like a power of 1/n)")

svg, csv_text = figure_zero_plot(ns, roots=roots)
(out / "figure_zeros.svg").write_text(svg, encoding="utf-8")
(out / "figure_zeros.csv").write_text(csv_text, encoding="utf-8")
(out / "summary.csv").write_text(summary_csv(reports), encoding="utf-8")

(out / "level_field_z1.csv").write_text(
    figure_level_curves(1, (-1.5, 1.5, -1.5, 1.5), 64), encoding="utf-8"
)

print(f"\nwrote figure_zeros.svg / figure_zeros.csv / summary.csv / level_field_z1.csv to {out}/")
print("open the SVG in a browser: one panel per degree, roots on the right branch.")
