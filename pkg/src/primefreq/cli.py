"""Command-line entry point.

Exit codes: 0 success, 2 usage, 3 data shape, 4 numerical failure,
5 acceptance failure (``--check``).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .baseline import GENERATOR_NAME
from .basis import build_dynamic, build_static
from .encoder import GAUSSIAN_BASELINE, STATIC_PRIME, forward, generate_static, recover_phases, reverse
from .errors import DimensionMismatchError, InjectivityError, NumericalFailureError
from .harness.bench import DEFAULT_DIMS, DEFAULT_SIZES, bench as run_bench
from .harness import checks, grid, regimes, svg
from .harness.bundle import Bundle, dumps
from .metrics import log_density
from .primes import PrimeTable, set_default_table
from .synth import CIRCLES, SPIRAL, make

EXIT_OK, EXIT_USAGE, EXIT_SHAPE, EXIT_NUMERIC, EXIT_CHECK = 0, 2, 3, 4, 5
WRAP_TOL = 1e-6


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime-cache", metavar="PATH", help="binary prime cache to load/update")
    common.add_argument("--json", action="store_true", help="machine-readable summaries on stdout")

    p = argparse.ArgumentParser(prog="primefreq", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True, metavar="{static,encode,decode,eval,bench}")

    s = sub.add_parser("static", parents=[common], help="write a StaticPrime codebook as CSV")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--out", default="-")
    s.add_argument("--normalize", action="store_true", help="unit-normalize rows")

    for name, helptext in (("encode", "forward map of CSV rows"), ("decode", "reverse map of CSV rows")):
        e = sub.add_parser(name, parents=[common], help=helptext)
        e.add_argument("--din", type=int, required=True)
        e.add_argument("--dout", type=int, required=True)
        e.add_argument("--sigma", type=float, required=True)
        e.add_argument("--in", dest="inp", required=True, help="input CSV path, or - for stdin")
        e.add_argument("--out", default="-")
        e.add_argument("--header", action="store_true", help="input has a header row; write one too")

    ev = sub.add_parser("eval", parents=[common], help="run an experiment and write a report bundle")
    ev.add_argument("experiment", choices=["orthogonality", "welch", "regimes", "classify"])
    ev.add_argument("--out", help="bundle directory (default reports/<experiment>)")
    ev.add_argument("--check", action="store_true", help="run acceptance assertions; exit 5 on failure")
    ev.add_argument("--seed", type=int, default=42)
    ev.add_argument("--n-seeds", type=int, default=5, help="gaussian seeds seed..seed+n-1 (grid runs)")
    ev.add_argument("--n-values", type=_ints, default=list(grid.DEFAULT_N))
    ev.add_argument("--d-values", type=_ints, default=list(grid.DEFAULT_D))
    ev.add_argument("--workers", type=int, default=None)
    ev.add_argument("--n", type=int, default=1000, help="points per dataset (regimes/classify)")
    ev.add_argument("--sigmas", type=_floats, default=None)
    ev.add_argument("--d-outs", type=_ints, default=None)
    ev.add_argument("--noise", type=_floats, default=None,
                    help="noise levels (regimes) or the single noisy-variant level (classify)")

    b = sub.add_parser("bench", parents=[common], help="scaling benchmark")
    b.add_argument("--sizes", type=_ints, default=list(DEFAULT_SIZES))
    b.add_argument("--dims", type=_ints, default=list(DEFAULT_DIMS))
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--out", default=None, help="bundle directory (default reports/bench)")
    b.add_argument("--check", action="store_true")
    return p


# -- helpers ---------------------------------------------------------------

def _require(cond: bool, flag: str, msg: str) -> None:
    if not cond:
        raise UsageError(f"{flag}: {msg}")


def _even_dim(value: int, flag: str) -> None:
    _require(value >= 2 and value % 2 == 0, flag, f"must be an even integer >= 2, got {value}")


def _summary_stream(args):
    return sys.stderr if getattr(args, "out", None) == "-" else sys.stdout


def _emit(args, payload: dict, lines: list[str]) -> None:
    fh = _summary_stream(args)
    if args.json:
        print(json.dumps(payload, sort_keys=True, default=str), file=fh)
    else:
        for line in lines:
            print(line, file=fh)


def _write_matrix(path: str, mat: np.ndarray, header: list[str] | None) -> None:
    fh = sys.stdout if path == "-" else open(path, "w")
    try:
        if header:
            fh.write(",".join(header) + "\n")
        for row in np.atleast_2d(mat):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def _read_matrix(path: str, width: int, header: bool) -> np.ndarray:
    src = sys.stdin if path == "-" else path
    data = np.loadtxt(src, delimiter=",", skiprows=1 if header else 0, ndmin=2, dtype=np.float64)
    if data.size == 0:
        raise DimensionMismatchError(f"{path}: no data rows")
    if data.shape[1] != width:
        raise DimensionMismatchError(f"{path}: rows have {data.shape[1]} columns, expected {width}")
    return data


def _prime_table(args) -> PrimeTable:
    path = args.prime_cache
    table = PrimeTable.load(path) if path and os.path.exists(path) else PrimeTable()
    set_default_table(table)
    return table


# -- commands ----------------------------------------------------------------

def cmd_static(args, primes) -> int:
    _require(args.n >= 1, "--n", f"must be >= 1, got {args.n}")
    _even_dim(args.dim, "--dim")
    cb = generate_static(build_static(args.dim, primes), args.n)
    rows = cb.rows / math.sqrt(args.dim / 2) if args.normalize else cb.rows
    _write_matrix(args.out, rows, None)
    _emit(args, {"n": args.n, "dim": args.dim, "source": STATIC_PRIME},
          [f"wrote {args.n}x{args.dim} static_prime codebook to {args.out}"])
    return EXIT_OK


def _dyn_basis(args, primes):
    _require(args.din >= 1, "--din", f"must be >= 1, got {args.din}")
    _even_dim(args.dout, "--dout")
    _require(args.sigma > 0 and math.isfinite(args.sigma), "--sigma", f"must be > 0, got {args.sigma}")
    _require(args.inp == "-" or os.path.exists(args.inp), "--in", f"no such file {args.inp!r}")
    return build_dynamic(args.din, args.dout, args.sigma, primes)


def cmd_encode(args, primes) -> int:
    basis = _dyn_basis(args, primes)
    x = _read_matrix(args.inp, args.din, args.header)
    z = forward(basis, x)
    k = basis.k
    _write_matrix(args.out, z, [f"cos{i}" for i in range(k)] + [f"sin{i}" for i in range(k)] if args.header else None)
    r = basis.injectivity_radius()
    sup = float(np.max(np.abs(x)))
    lines = [f"encoded {x.shape[0]} rows: d={args.din} -> D={args.dout}, sigma={args.sigma:g}",
             f"injectivity radius {r:.6g}; input sup-norm {sup:.6g}"]
    if sup >= r:
        lines.append("warning: input exceeds the injectivity radius; phases may wrap")
    _emit(args, {"rows": x.shape[0], "injectivity_radius": r, "sup_norm": sup}, lines)
    return EXIT_OK


def cmd_decode(args, primes) -> int:
    basis = _dyn_basis(args, primes)
    z = _read_matrix(args.inp, args.dout, args.header)
    x_hat = reverse(basis, z)
    _write_matrix(args.out, x_hat, [f"x{i}" for i in range(args.din)] if args.header else None)
    v = recover_phases(z, basis.k)
    near_wrap = int(np.sum(np.pi - np.abs(v) < WRAP_TOL))
    hashing = not basis.invertible_shape
    r = basis.injectivity_radius()
    lines = [f"decoded {z.shape[0]} rows: D={args.dout} -> d={args.din}", f"injectivity radius {r:.6g}"]
    if near_wrap:
        lines.append(f"warning: {near_wrap} recovered phases within {WRAP_TOL:g} of +/-pi; wrapping likely")
    if hashing:
        lines.append(f"warning: hashing regime (D={args.dout} < 2d={2 * args.din}); output is the least-squares solution, not an exact inverse")
    _emit(args, {"rows": z.shape[0], "injectivity_radius": r, "near_wrap_phases": near_wrap,
                 "hashing_regime": hashing}, lines)
    return EXIT_OK


def _grid_spec(args) -> grid.GridSpec:
    _require(args.n_seeds >= 1, "--n-seeds", "must be >= 1")
    for d in args.d_values:
        _even_dim(d, "--d-values")
    _require(all(n >= 2 for n in args.n_values), "--n-values", "every N must be >= 2")
    return grid.GridSpec(n_values=tuple(args.n_values), d_values=tuple(args.d_values),
                         seeds=tuple(range(args.seed, args.seed + args.n_seeds)))


def _base_config(args, **extra) -> dict:
    return {"command": f"eval {args.experiment}", "version": __version__,
            "baseline_generator": GENERATOR_NAME, **extra}


def _density_plots(bundle: Bundle, reports) -> None:
    by_cell: dict = {}
    for r in reports:
        by_cell.setdefault((r.n, r.dim), {}).setdefault(r.source, r)  # first seed per cell
    for (n, d), per in sorted(by_cell.items()):
        series = {s: log_density(r.histogram) - np.log10(1e-12) for s, r in sorted(per.items())}
        bundle.write_plot(f"logdensity_N{n}_D{d}.svg", svg.step_histogram(
            series, -1.0, 1.0, title=f"log10 density + 12 of cosine similarity, N={n}, D={d}",
            xlabel="cosine similarity", vlines=(0.0,)))


def _rms_heatmaps(bundle: Bundle, spec: grid.GridSpec, reports) -> None:
    ns, ds = sorted(spec.n_values), sorted(spec.d_values)
    for source in sorted(spec.sources):
        mat = np.full((len(ns), len(ds)), np.nan)
        for i, n in enumerate(ns):
            for j, d in enumerate(ds):
                vals = [r.e_rms for r in reports if r.source == source and r.n == n and r.dim == d]
                if vals:
                    mat[i, j] = np.mean(vals)
        bundle.write_plot(f"erms_{source}.svg", svg.heatmap(
            mat, [f"N={n}" for n in ns], [f"D={d}" for d in ds], title=f"E_RMS ({source})"))


def _finish(args, bundle: Bundle, payload: dict, lines: list[str], results: list) -> int:
    if args.check:
        payload["checks"] = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in results]
        lines = lines + [c.line() for c in results]
        bundle.write_json("checks.json", payload["checks"])
    payload["bundle"] = str(bundle.root)
    _emit(args, payload, lines + [f"bundle written to {bundle.root}"])
    if args.check and not all(c.passed for c in results):
        return EXIT_CHECK
    return EXIT_OK


def eval_orthogonality(args, primes) -> int:
    spec = _grid_spec(args)
    bundle = Bundle(args.out or "reports/orthogonality", _base_config(args, grid=spec.to_dict()))
    res = grid.run_orthogonality_grid(spec, primes, args.workers)
    bundle.write_reports(res.reports)
    bundle.write_json("summary.json", res.summary)
    _rms_heatmaps(bundle, spec, res.reports)
    _density_plots(bundle, res.reports)
    paired = res.summary.get("paired", {})
    lines = [f"{len(res.reports)} cells"]
    if paired:
        lines.append(f"grid-mean E_RMS prime {paired['grid_mean_prime']:.6g} vs gaussian "
                     f"{paired['grid_mean_gaussian']:.6g}; prime wins {paired['prime_wins']}/{paired['total']}")
    results = []
    if args.check:
        results = checks.check_orthogonality(res.summary) + [checks.check_welch_lower_bound(res.reports)]
    return _finish(args, bundle, {"summary": res.summary}, lines, results)


def eval_welch(args, primes) -> int:
    spec = _grid_spec(args)
    bundle = Bundle(args.out or "reports/welch", _base_config(args, grid=spec.to_dict()))
    res, pop = grid.run_welch_population(spec, primes, args.workers)
    bundle.write_reports(res.reports)
    for source in pop.ratios:
        rows = [(r.n, r.dim, r.seed, r.optimality_ratio, r.excess_coherence)
                for r in res.reports if r.source == source and r.optimality_ratio is not None]
        bundle.write_csv(f"population_{source}.csv", ("n", "dim", "seed", "optimality_ratio", "excess_coherence"), rows)
    bundle.write_json("quantiles.json", pop.quantiles)
    for metric, h in pop.histograms().items():
        lo, hi = h["range"]
        bundle.write_plot(f"population_{metric}.svg", svg.step_histogram(
            h["counts"], lo, hi, title=f"{metric} population", xlabel=metric,
            vlines=(1.0,) if metric == "optimality_ratio" else (0.0,)))
    lines = [f"{s}: median ratio {q['optimality_ratio']['p50']:.4g}, median excess {q['excess_coherence']['p50']:.4g}"
             for s, q in pop.quantiles.items()]
    results = []
    if args.check:
        results = checks.check_welch_population(pop) + [checks.check_welch_lower_bound(res.reports)]
    return _finish(args, bundle, {"quantiles": pop.quantiles}, lines, results)


def eval_regimes(args, primes) -> int:
    sigmas = args.sigmas or list(regimes.REGIME_SIGMAS)
    d_outs = args.d_outs or list(regimes.REGIME_DOUTS)
    noise = args.noise if args.noise is not None else list(regimes.REGIME_NOISE)
    for d in d_outs:
        _even_dim(d, "--d-outs")
    _require(all(s > 0 for s in sigmas), "--sigmas", "every sigma must be > 0")
    _require(all(e >= 0 for e in noise), "--noise", "noise levels must be >= 0")
    _require(args.n >= 2, "--n", "must be >= 2")
    cfg = _base_config(args, sigmas=sigmas, d_outs=d_outs, noise=noise, n=args.n, seed=args.seed,
                       manifold_sigmas=[0.007])
    datasets = [make(kind, args.n, e, args.seed) for kind in (SPIRAL, CIRCLES) for e in noise]
    try:
        res = regimes.run_regime_study(datasets, sigmas, d_outs, primes=primes, workers=args.workers)
    except InjectivityError as exc:
        raise UsageError(f"--noise/--sigmas: {exc}") from exc
    bundle = Bundle(args.out or "reports/regimes", cfg)
    bundle.write_csv("reports.csv", regimes.RegimeResult.CSV_FIELDS, [r.row().values() for r in res])
    for r in res:
        tag = f"{r.kind}_noise{r.noise:g}_s{r.sigma:g}_D{r.d_out}"
        bundle.write_csv(f"latent_{tag}.csv", ("norm", "pc1", "pc2"),
                         [(nm, p[0], p[1]) for nm, p in zip(r.latent_norms, r.latent_pcs)])
    cells = sorted({(r.sigma, r.d_out) for r in res})
    rows = sorted({(r.kind, r.noise) for r in res})
    mat = np.full((len(rows), len(cells)), np.nan)
    for r in res:
        mat[rows.index((r.kind, r.noise)), cells.index((r.sigma, r.d_out))] = np.log10(r.recon_mse + 1e-300)
    bundle.write_plot("recon_log10_mse.svg", svg.heatmap(
        mat, [f"{k} n={e:g}" for k, e in rows], [f"s={s:g} D={d}" for s, d in cells], title="log10 reconstruction MSE", cell=64))
    lines = [f"{r.kind:8s} noise={r.noise:<4g} sigma={r.sigma:<6g} D={r.d_out:<4d} {r.regime:9s} mse={r.recon_mse:.3g}" for r in res]
    results = checks.check_regimes(res) if args.check else []
    return _finish(args, bundle, {"cells": [r.row() for r in res]}, lines, results)


def eval_classify(args, primes) -> int:
    sigmas = args.sigmas or list(regimes.CLASSIFY_SIGMAS)
    d_outs = args.d_outs or list(regimes.CLASSIFY_DOUTS)
    noise = args.noise[0] if args.noise else regimes.CLASSIFY_NOISE
    for d in d_outs:
        _even_dim(d, "--d-outs")
    _require(all(s > 0 for s in sigmas), "--sigmas", "every sigma must be > 0")
    _require(args.n >= 2, "--n", "must be >= 2")
    cfg = _base_config(args, sigmas=sigmas, d_outs=d_outs, noise=noise, n=args.n, seed=args.seed)
    res = regimes.run_classification_study(sigmas, d_outs, args.n, noise, args.seed, primes)
    bundle = Bundle(args.out or "reports/classify", cfg)
    rows = []
    for r in res:
        for i, a in enumerate(r.names):
            for j, b in enumerate(r.names):
                rows.append((r.sigma, r.d_out, a, b, r.centered[i, j], r.uncentered[i, j]))
        bundle.write_plot(f"similarity_s{r.sigma:g}_D{r.d_out}.svg", svg.heatmap(
            r.centered, r.names, [n.replace("_", " ") for n in r.names],
            title=f"centered cosine similarity, s={r.sigma:g}, D={r.d_out}", cell=80))
    bundle.write_csv("reports.csv", ("sigma", "d_out", "a", "b", "centered", "uncentered"), rows)
    lines = [f"s={r.sigma:<6g} D={r.d_out:<4d} intra {r.intra()[0]:.4f},{r.intra()[1]:.4f} "
             f"max inter {np.max(r.inter()):.4f}" for r in res]
    results = checks.check_classification(res) if args.check else []
    payload = {"cells": [{"sigma": r.sigma, "d_out": r.d_out, "centered": r.centered, "uncentered": r.uncentered}
                         for r in res]}
    return _finish(args, bundle, json.loads(dumps(payload)), lines, results)


def cmd_bench(args, primes) -> int:
    _require(len(args.sizes) >= 1 and all(s >= 1 for s in args.sizes), "--sizes", "need positive sizes")
    for d in args.dims:
        _even_dim(d, "--dims")
    _require(args.trials >= 1, "--trials", "must be >= 1")
    rows = run_bench(args.sizes, args.dims, trials=args.trials, primes=primes)
    bundle = Bundle(args.out or "reports/bench", {"command": "bench", "version": __version__,
                                                  "sizes": args.sizes, "dims": args.dims, "trials": args.trials})
    bundle.write_csv("reports.csv", ("op", "size", "param", "seconds", "ratio"),
                     [(r.op, r.size, r.param, r.seconds, r.ratio) for r in rows])
    lines = [f"{r.op:24s} size={r.size:<7d} {r.seconds * 1e3:9.3f} ms" + (f"  x{r.ratio:.2f}" if r.ratio else "") for r in rows]
    results = []
    if args.check:
        for op, band in (("static_generate", (1.5, 3.0)), ("dynamic_forward", (1.5, 3.0))):
            rs = [r.ratio for r in rows if r.op == op and r.ratio is not None]
            results.append(checks.Check(f"{op}_doubling", bool(rs) and all(band[0] <= x <= band[1] for x in rs),
                                        f"ratios {', '.join(f'{x:.2f}' for x in rs)} in [{band[0]}, {band[1]}]"))
        rs = [r.ratio for r in rows if r.op == "static_init" and r.ratio is not None]
        results.append(checks.Check("static_init_flat", all(x < 1.5 for x in rs),
                                    f"ratios {', '.join(f'{x:.2f}' for x in rs)} < 1.5"))
    payload = {"rows": [r.__dict__ for r in rows]}
    return _finish(args, bundle, payload, lines, results)


EVALS = {"orthogonality": eval_orthogonality, "welch": eval_welch, "regimes": eval_regimes, "classify": eval_classify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        primes = _prime_table(args)
        before = len(primes)
        if args.cmd == "eval":
            code = EVALS[args.experiment](args, primes)
        else:
            code = {"static": cmd_static, "encode": cmd_encode, "decode": cmd_decode, "bench": cmd_bench}[args.cmd](args, primes)
        if args.prime_cache and (len(primes) != before or not os.path.exists(args.prime_cache)):
            primes.save(args.prime_cache)
        return code
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"primefreq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DimensionMismatchError as exc:
        print(f"primefreq: dimension mismatch: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except (NumericalFailureError, np.linalg.LinAlgError) as exc:
        print(f"primefreq: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        # malformed CSV content (non-numeric cells, ragged rows)
        print(f"primefreq: bad input: {exc}", file=sys.stderr)
        return EXIT_SHAPE


if __name__ == "__main__":
    sys.exit(main())
