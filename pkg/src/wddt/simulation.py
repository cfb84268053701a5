"""Monte Carlo estimation of type-I error and power.

Each replication draws a fresh multilayer graph with a seed derived from the
cell's master seed and the replication index via :func:`mix64`, so results
are bit-identical for any number of worker threads.
"""

import configparser
import csv
import io
import logging
import math
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_alpha, check_positive_int
from .exceptions import AllDegenerate, DegenerateLayer, WddtError
from .model import ModelSpec, sample_rmhg, weights_power_law, weights_two_block
from .statistic import compute_wddt, decide

logger = logging.getLogger(__name__)

FAMILIES = ("two-block", "power-law")
TABLE_TAU = (0.3, 0.2, 0.4, 0.1)
TABLE_N = (200, 250, 300)
TABLE_R = (2.0, 2.5, 3.0)

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix_finalize(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def mix64(master_seed, index):
    """Per-replication seed: SplitMix64 finalizer applied to a mixed master seed.

    ``mix64(s, i) = f(f(s) + (i + 1) * 0x9E3779B97F4A7C15 mod 2**64)`` where ``f``
    is the SplitMix64 output function.
    """
    base = _splitmix_finalize(int(master_seed) & _MASK)
    return _splitmix_finalize((base + (int(index) + 1) * _GOLDEN) & _MASK)


def _floats(values, name):
    if isinstance(values, str):
        values = [v for v in values.replace(";", ",").split(",") if v.strip()]
    try:
        return tuple(float(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name}: expected comma-separated numbers, got {values!r}") from exc


@dataclass(frozen=True)
class SimConfig:
    """One Monte Carlo cell.

    ``rho_l = n ** tau_l``. For ``family="two-block"`` give ``r`` and one
    ``lam`` per layer; for ``"power-law"`` one ``beta`` per layer.
    """

    n: int
    tau: tuple
    family: str = "two-block"
    r: float = None
    lam: tuple = None
    beta: tuple = None
    replications: int = 1000
    alpha: float = 0.05
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "n", check_positive_int(self.n, "n"))
        object.__setattr__(self, "tau", _floats(self.tau, "tau"))
        object.__setattr__(self, "replications", check_positive_int(self.replications, "replications"))
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        object.__setattr__(self, "master_seed", int(self.master_seed) & _MASK)
        L = len(self.tau)
        if L < 2:
            raise ValueError("a cell needs at least two layers")
        if self.family == "two-block":
            if self.r is None or self.lam is None:
                raise ValueError("two-block family needs r and lambda")
            object.__setattr__(self, "r", float(self.r))
            object.__setattr__(self, "lam", _floats(self.lam, "lambda"))
            vec, name = self.lam, "lambda"
        elif self.family == "power-law":
            if self.beta is None:
                raise ValueError("power-law family needs beta")
            object.__setattr__(self, "beta", _floats(self.beta, "beta"))
            vec, name = self.beta, "beta"
        else:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if len(vec) != L:
            raise ValueError(f"length mismatch: {name} has {len(vec)} entries, tau has {L}")

    @property
    def n_layers(self):
        return len(self.tau)

    def weights(self):
        if self.family == "two-block":
            return [weights_two_block(self.n, self.r, lam, fractional="floor") for lam in self.lam]
        return [weights_power_law(self.n, b) for b in self.beta]

    def model_spec(self):
        return ModelSpec.from_tau(self.weights(), self.tau)

    def parameters(self):
        fmt = lambda xs: ",".join(f"{x:g}" for x in xs)
        parts = [f"tau={fmt(self.tau)}"]
        if self.family == "two-block":
            parts += [f"r={self.r:g}", f"lambda={fmt(self.lam)}"]
        else:
            parts.append(f"beta={fmt(self.beta)}")
        parts.append(f"alpha={self.alpha:g}")
        return ";".join(parts)


@dataclass(frozen=True)
class SimResult:
    config: SimConfig
    rejection_rate: float
    rejections: int
    degenerate_count: int
    mean_statistic: float
    var_statistic: float
    statistics: tuple = field(repr=False)

    @property
    def n_valid(self):
        return self.config.replications - self.degenerate_count

    @property
    def standard_error(self):
        p = self.rejection_rate
        return math.sqrt(p * (1.0 - p) / self.n_valid)


@dataclass(frozen=True)
class CellFailure:
    """A grid cell that could not be run."""

    config: SimConfig
    error: str


def _replicate(spec, config, index):
    g = sample_rmhg(spec, mix64(config.master_seed, index))
    try:
        res = compute_wddt(g)
    except DegenerateLayer:
        return None
    # decide() cross-checks |D_n| > z against p < alpha on every call
    return res.statistic, decide(res, config.alpha).reject


def run_cell(config, n_jobs=1):
    """Run all replications of ``config`` and aggregate in replication order.

    Raises
    ------
    ModelInfeasible
        Some edge probability of the implied model exceeds one.
    AllDegenerate
        Every replication produced a layer without two-paths.
    """
    spec = config.model_spec()
    reps = range(config.replications)
    if n_jobs is None or n_jobs <= 1:
        outcomes = [_replicate(spec, config, i) for i in reps]
    else:
        spec.edge_probabilities(0)  # build the shared cache before fanning out
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            outcomes = list(pool.map(lambda i: _replicate(spec, config, i), reps))

    stats = [o[0] for o in outcomes if o is not None]
    rejections = sum(1 for o in outcomes if o is not None and o[1])
    degenerate = len(outcomes) - len(stats)
    if not stats:
        raise AllDegenerate(f"all {config.replications} replications were degenerate")
    mean = math.fsum(stats) / len(stats)
    var = math.fsum((s - mean) ** 2 for s in stats) / (len(stats) - 1) if len(stats) > 1 else float("nan")
    return SimResult(config=config, rejection_rate=rejections / len(stats), rejections=rejections,
                     degenerate_count=degenerate, mean_statistic=mean, var_statistic=var,
                     statistics=tuple(stats))


def run_grid(cells, n_jobs=1, progress=None):
    """Run every cell in order; a failing cell yields a :class:`CellFailure`.

    ``progress`` is called as ``progress(index, total, outcome)`` after each cell.
    """
    cells = list(cells)
    out = []
    for k, cfg in enumerate(cells):
        try:
            res = run_cell(cfg, n_jobs=n_jobs)
        except (WddtError, ValueError) as exc:
            logger.warning("cell %d failed: %s", k, exc)
            res = CellFailure(cfg, f"{type(exc).__name__}: {exc}")
        out.append(res)
        if progress is not None:
            progress(k, len(cells), res)
    return out


TABLE_COLUMNS = ("n", "L", "family", "parameters", "rejection_rate",
                 "degenerate_count", "reps", "seed", "error")


def render_table(results):
    """CSV text with one row per cell; rates rounded to three decimals."""
    results = list(results)
    if not results:
        raise ValueError("no results to render")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    for res in results:
        c = res.config
        if isinstance(res, CellFailure):
            rate, degen, err = "", "", res.error
        else:
            rate, degen, err = f"{res.rejection_rate:.3f}", res.degenerate_count, ""
        w.writerow([c.n, c.n_layers, c.family, c.parameters(), rate, degen,
                    c.replications, c.master_seed, err])
    return buf.getvalue()


def parse_grid(text):
    """Parse an INI-style grid: one ``[section]`` per cell.

    Keys: ``n``, ``L`` (optional cross-check), ``tau``, ``family``, ``r``,
    ``lambda`` or ``beta``, ``reps``, ``alpha``, ``seed``. Values in
    ``[DEFAULT]`` apply to every cell.
    """
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ValueError(f"invalid grid file: {exc}") from exc
    known = {"n", "l", "tau", "family", "r", "lambda", "beta", "reps", "alpha", "seed"}
    cells = []
    for name in cp.sections():
        sec = cp[name]
        unknown = set(sec) - known
        if unknown:
            raise ValueError(f"[{name}]: unknown keys {sorted(unknown)}")
        try:
            cfg = SimConfig(
                n=int(sec["n"]),
                tau=sec["tau"],
                family=sec.get("family", "two-block"),
                r=float(sec["r"]) if "r" in sec else None,
                lam=sec.get("lambda"),
                beta=sec.get("beta"),
                replications=int(sec.get("reps", "1000")),
                alpha=float(sec.get("alpha", "0.05")),
                master_seed=int(sec.get("seed", "0")),
            )
        except KeyError as exc:
            raise ValueError(f"[{name}]: missing key {exc}") from exc
        except (TypeError, ValueError) as exc:
            raise ValueError(f"[{name}]: {exc}") from exc
        if "l" in sec and int(sec["l"]) != cfg.n_layers:
            raise ValueError(f"[{name}]: length mismatch: L={sec['l']} but tau has {cfg.n_layers} entries")
        cells.append(cfg)
    return cells


# Column layouts of the four simulation tables: {table: {L: [parameter vectors]}}.
_TABLE_LAYOUTS = {
    1: {L: [(0.8,) + (x,) * (L - 1) for x in (0.8, 0.7, 0.6, 0.5)] for L in (2, 3, 4)},
    2: {
        2: [(0.8, x) for x in (0.8, 0.7, 0.6, 0.5)],
        3: [(0.8, 0.8, 0.8), (0.8, 0.7, 0.6), (0.8, 0.7, 0.5), (0.8, 0.6, 0.5)],
        4: [(0.8, 0.8, 0.8, 0.8), (0.8, 0.7, 0.6, 0.6), (0.8, 0.7, 0.6, 0.5), (0.8, 0.7, 0.5, 0.5)],
    },
    3: {L: [(1.0,) + (float(b),) * (L - 1) for b in (1, 2, 3, 4)] for L in (2, 3, 4)},
    4: {
        2: [(1.0, float(b)) for b in (1, 2, 3, 4)],
        3: [(1, 1, 1), (1, 2, 3), (1, 2, 4), (1, 3, 4)],
        4: [(1, 1, 1, 1), (1, 2, 3, 3), (1, 2, 3, 4), (1, 2, 4, 4)],
    },
}


@dataclass(frozen=True)
class TableCell:
    """Position of a cell within one of the simulation tables."""

    table: int
    r: float
    L: int
    n: int
    column: int
    config: SimConfig

    @property
    def block(self):
        return (self.table, self.r, self.L)


def table_cells(table, replications=1000, seed=2024, alpha=0.05):
    """All cells of simulation table ``table`` (1-4).

    Tables 1-2 use two-block weights over ``r`` in {2, 2.5, 3}; tables 3-4 use
    power-law weights (``r`` is ``None``). Column 0 is the null cell. Each
    cell's master seed is derived from ``seed`` and the cell's parameters, so
    a cell appearing in two tables gets identical results.
    """
    if table not in _TABLE_LAYOUTS:
        raise ValueError(f"table must be 1-4, got {table}")
    two_block = table in (1, 2)
    out = []
    for r in (TABLE_R if two_block else (None,)):
        for L, columns in _TABLE_LAYOUTS[table].items():
            for n in TABLE_N:
                for col, vec in enumerate(columns):
                    vec = tuple(float(v) for v in vec)
                    key = f"{'tb' if two_block else 'pl'}|{r}|{n}|{vec}"
                    cfg_seed = mix64(seed, zlib.crc32(key.encode()))
                    kw = dict(r=r, lam=vec) if two_block else dict(beta=vec)
                    cfg = SimConfig(n=n, tau=TABLE_TAU[:L],
                                    family="two-block" if two_block else "power-law",
                                    replications=replications, alpha=alpha,
                                    master_seed=cfg_seed, **kw)
                    out.append(TableCell(table, r, L, n, col, cfg))
    return out


def ks_distance_normal(sample):
    """Kolmogorov-Smirnov distance between ``sample`` and the standard normal."""
    from .normal import normal_cdf

    x = np.sort(np.asarray(sample, dtype=np.float64))
    m = len(x)
    if m == 0:
        raise ValueError("empty sample")
    F = np.array([normal_cdf(v) for v in x])
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - F), np.max(F - (i - 1) / m)))
