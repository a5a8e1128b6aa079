"""
Writing a report bundle from Python
===================================

The command-line tool writes these bundles for you; this shows the pieces.
Output goes to reports/demo_grid.
"""

from primefreq.harness import Bundle, GridSpec, run_orthogonality_grid
from primefreq.harness import checks, svg

spec = GridSpec(n_values=(500, 1000), d_values=(16, 64), seeds=(42, 43))
res = run_orthogonality_grid(spec)

bundle = Bundle("reports/demo_grid", {"grid": spec.to_dict()})
bundle.write_reports(res.reports)
bundle.write_json("summary.json", res.summary)

for c in checks.check_orthogonality(res.summary):
    print(c.line())

first = {r.source: r for r in res.reports if (r.n, r.dim) == (1000, 64)}
plot = svg.step_histogram({s: r.histogram for s, r in first.items()}, -1, 1,
                          title="similarity counts, N=1000 D=64", xlabel="cosine")
print("wrote", bundle.write_plot("hist.svg", plot))
