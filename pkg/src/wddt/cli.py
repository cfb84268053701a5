"""Command-line interface: ``wddt {gen,test,subsets,simulate}``.

Exit codes: 0 success, 2 configuration or parse error, 3 degenerate data.
"""

import argparse
import logging
import sys

from . import __version__
from .exceptions import AllDegenerate, DegenerateLayer, WddtError
from .graph import edge_density
from .io import (MultiplexDataset, format_multiplex_edgelist, read_multiplex,
                 select_layers, subset_analysis)
from .simulation import CellFailure, SimConfig, parse_grid, render_table, run_grid, table_cells
from .statistic import compute_wddt, decide

EXIT_OK, EXIT_CONFIG, EXIT_DEGENERATE = 0, 2, 3


class ConfigError(Exception):
    pass


def _csv_floats(text, name):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"--{name}: expected comma-separated numbers, got {text!r}") from None


def _model_config(args, replications=1, alpha=0.05):
    if args.n is None or args.tau is None:
        raise ConfigError("--n and --tau are required")
    tau = _csv_floats(args.tau, "tau")
    if args.L is not None and args.L != len(tau):
        raise ConfigError(f"length mismatch: --L {args.L} but --tau has {len(tau)} entries")
    kw = {}
    if args.family == "two-block":
        if args.r is None or args.lam is None:
            raise ConfigError("two-block family needs --r and --lambda")
        kw = dict(r=args.r, lam=_csv_floats(args.lam, "lambda"))
    else:
        if args.beta is None:
            raise ConfigError("power-law family needs --beta")
        kw = dict(beta=_csv_floats(args.beta, "beta"))
    return SimConfig(n=args.n, tau=tau, family=args.family, replications=replications,
                     alpha=alpha, master_seed=args.seed, **kw)


def _add_model_flags(p):
    p.add_argument("--n", type=int, help="number of nodes")
    p.add_argument("--L", type=int, help="number of layers (checked against --tau)")
    p.add_argument("--tau", help="comma-separated exponents, rho_l = n**tau_l")
    p.add_argument("--family", choices=("two-block", "power-law"), default="two-block")
    p.add_argument("--r", type=float, help="block ratio for two-block weights")
    p.add_argument("--lambda", dest="lam", help="comma-separated first-block levels")
    p.add_argument("--beta", help="comma-separated power-law exponents")
    p.add_argument("--seed", type=int, default=0, help="64-bit seed")


def _add_input_flags(p):
    p.add_argument("--input", required=True, help="multiplex edge list (plain or .mpx)")
    p.add_argument("--node-roster", help="file with one node identifier per line")
    p.add_argument("--layer-map", help="file of 'index name' lines renaming layers")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--variance-layer-count",
                   help="layer count used in the reference variance term "
                        "(integer, or 'all' for the dataset's layer count)")


def _load(args):
    return read_multiplex(args.input, node_roster=args.node_roster, layer_map=args.layer_map)


def _vlc(value, ds):
    if value is None:
        return None
    if value == "all":
        return ds.graph.n_layers
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"--variance-layer-count: expected an integer or 'all', got {value!r}") from None


def _report_warnings(ds):
    if ds.n_self_loops or ds.n_duplicates:
        print(f"note: dropped {ds.n_self_loops} self-loop(s), collapsed {ds.n_duplicates} duplicate edge(s)",
              file=sys.stderr)


def cmd_gen(args):
    cfg = _model_config(args)
    from .model import sample_rmhg

    g = sample_rmhg(cfg.model_spec(), cfg.master_seed)
    ds = MultiplexDataset(g, [str(i + 1) for i in range(g.n)],
                          [str(l + 1) for l in range(g.n_layers)])
    text = format_multiplex_edgelist(ds)
    report = sys.stdout
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        report = sys.stderr
    for l, name in enumerate(ds.layer_names):
        print(f"layer {name}: {g.n_edges(l)} edges, density {edge_density(g, l):.4f}", file=report)
    return EXIT_OK


def cmd_test(args):
    ds = _load(args)
    _report_warnings(ds)
    names = [x.strip() for x in args.layers.split(",") if x.strip()] if args.layers else list(ds.layer_names)
    try:
        g = select_layers(ds, names)
    except KeyError as exc:
        raise ConfigError(str(exc).strip("'\"")) from None
    res = compute_wddt(g, variance_layer_count=_vlc(args.variance_layer_count, ds), layer_names=names)
    dec = decide(res, args.alpha)
    print(f"layers: {', '.join(names)} (reference: {names[0]})")
    for name, s in zip(names, res.layer_summaries):
        print(f"  {name}: total degree {s.total_degree}, two-paths {s.two_paths}")
    print(f"D_n = {res.statistic:.6f}")
    print(f"sigma_n^2 = {res.sigma_sq:.6g}")
    print(f"p-value = {res.p_value:.6g}")
    print(f"critical value = {dec.critical_value:.6f} (alpha = {dec.alpha:g})")
    print(dec.label)
    return EXIT_OK


def cmd_subsets(args):
    ds = _load(args)
    _report_warnings(ds)
    L = ds.graph.n_layers
    lo = args.min
    hi = L if args.max is None else args.max
    if not 2 <= lo <= hi <= L:
        raise ConfigError(f"invalid subset range {lo}..{hi} for {L} layers")
    report = subset_analysis(ds, lo, hi, alpha=args.alpha,
                             variance_layer_count=_vlc(args.variance_layer_count, ds))
    csv_text = report.to_csv(decimals=None if args.full_precision else 3)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv_text)
        for row in report.rows:
            stat = "degenerate" if row.error else f"{row.statistic:8.3f}  p={row.p_value:.3f}  {row.decision}"
            print(f"{', '.join(row.layers):<45} {stat}")
    else:
        sys.stdout.write(csv_text)
    return EXIT_OK


def cmd_simulate(args):
    if args.grid_file:
        with open(args.grid_file) as fh:
            cells = parse_grid(fh.read())
    elif args.table:
        cells = [c.config for c in table_cells(args.table, replications=args.reps,
                                               seed=args.seed, alpha=args.alpha)]
    else:
        cells = [_model_config(args, replications=args.reps, alpha=args.alpha)]
    if not cells:
        raise ConfigError("grid is empty")

    def progress(k, total, res):
        rate = "error" if isinstance(res, CellFailure) else f"{res.rejection_rate:.3f}"
        print(f"[{k + 1}/{total}] n={res.config.n} {res.config.parameters()} -> {rate}", file=sys.stderr)

    results = run_grid(cells, n_jobs=args.threads, progress=progress)
    text = render_table(results)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="wddt", description="Weighted Degree Difference Test for multilayer networks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample a multilayer graph and write it as an edge list")
    _add_model_flags(p)
    p.add_argument("--out", help="output edge-list path (default: stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("test", help="run the test on selected layers of an edge list")
    _add_input_flags(p)
    p.add_argument("--layers", help="comma-separated layer names, reference first (default: all)")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("subsets", help="test every layer subset within a size range")
    _add_input_flags(p)
    p.add_argument("--min", type=int, default=2)
    p.add_argument("--max", type=int)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--full-precision", action="store_true", help="write unrounded values to the CSV")
    p.add_argument("--threads", type=int, default=1, help="accepted for symmetry; subsets run serially")
    p.set_defaults(func=cmd_subsets)

    p = sub.add_parser("simulate", help="Monte Carlo rejection rates over a grid of model cells")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--grid-file", help="INI grid file, one [section] per cell")
    src.add_argument("--table", type=int, choices=(1, 2, 3, 4), help="built-in simulation table layout")
    _add_model_flags(p)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--threads", type=int, default=1, help="worker threads per cell")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DegenerateLayer, AllDegenerate) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ConfigError, WddtError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
