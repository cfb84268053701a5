"""Random multilayer heterogeneous graph (RMHG) model.

Layer ``l`` of the model is a degree-corrected Erdos-Renyi graph in which edge
``{i, j}`` appears independently with probability ``rho_l * W_li * W_lj``. The
weight vectors ``W_l`` are non-negative with unit Euclidean norm; two
layers share a common invariant subspace exactly when their weights agree.
"""

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from ._validation import check_positive_int
from .exceptions import ModelInfeasible, NeedTwoLayers
from .graph import MultilayerGraph

_INTEGRAL_TOL = 1e-9


def _weights(w):
    w = np.asarray(w, dtype=np.float64)
    w.setflags(write=False)
    return w


def weights_two_block(n, r, lam, fractional="raise"):
    """Two-level weight vector.

    The first ``n / r`` entries equal ``lam * sqrt(r / n)`` and the rest equal
    ``sqrt(r / (r - 1) * (1 - lam**2) / n)``, which gives unit norm.

    Parameters
    ----------
    n : int
    r : float
        Block ratio, ``r > 1``.
    lam : float
        Weight level of the first block, in ``(0, 1]``.
    fractional : {"raise", "floor"}
        What to do when ``n / r`` is not an integer. ``"raise"`` refuses;
        ``"floor"`` puts ``floor(n / r)`` entries in the first block, keeps
        their value, and solves the second-block value so the norm stays
        exactly one. For integral ``n / r`` both options give the same vector.
    """
    n = check_positive_int(n, "n")
    r = float(r)
    lam = float(lam)
    if not r > 1.0:
        raise ValueError(f"r must exceed 1, got {r}")
    if not 0.0 < lam <= 1.0:
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    ratio = n / r
    k = round(ratio)
    integral = abs(ratio - k) <= _INTEGRAL_TOL
    if not integral:
        if fractional == "raise":
            raise ValueError(f"n / r = {ratio:g} is not an integer")
        if fractional != "floor":
            raise ValueError(f"unknown fractional mode {fractional!r}")
        k = math.floor(ratio)
    if not 1 <= k < n:
        raise ValueError(f"first block size {k} must lie in [1, n)")

    high = lam * math.sqrt(r) / math.sqrt(n)
    if integral:
        low = math.sqrt(r / (r - 1.0) * (1.0 - lam * lam)) / math.sqrt(n)
    else:
        low = math.sqrt(max(1.0 - k * high * high, 0.0) / (n - k))
    if high > 1.0:
        raise ValueError(f"first-block weight {high:g} exceeds 1")
    w = np.full(n, low)
    w[:k] = high
    return _weights(w)


def faulhaber_sum(n, m):
    """``sum_{i=1}^n i**m`` by direct (compensated) summation; ``m`` may be fractional."""
    n = check_positive_int(n, "n")
    m = float(m)
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    return math.fsum(np.arange(1, n + 1, dtype=np.float64) ** m)


def weights_power_law(n, beta):
    """Weights ``i**beta / sqrt(S_{n, 2 beta})`` for ``i = 1..n``."""
    n = check_positive_int(n, "n")
    beta = float(beta)
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    w = np.arange(1, n + 1, dtype=np.float64) ** beta / math.sqrt(faulhaber_sum(n, 2.0 * beta))
    return _weights(w)


def overlap(a, b):
    """Inner product ``sum_i a_i b_i``; equals one iff two unit weight vectors coincide."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.dot(a, b))


@lru_cache(maxsize=8)
def _pair_index(n):
    iu, ju = np.triu_indices(n, 1)
    iu.setflags(write=False)
    ju.setflags(write=False)
    return iu, ju


@dataclass(frozen=True, eq=False)
class ModelSpec:
    """Weights and density scalings of an RMHG model.

    Construction checks that every edge probability ``rho_l W_li W_lj`` lies
    in ``[0, 1]`` and raises :class:`ModelInfeasible` otherwise; probabilities
    are never clamped.
    """

    weights: tuple
    rho: tuple

    def __post_init__(self):
        weights = tuple(_weights(w) for w in self.weights)
        rho = tuple(float(x) for x in self.rho)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "rho", rho)
        if not weights:
            raise ValueError("model needs at least one layer")
        if len(rho) != len(weights):
            raise ValueError(f"length mismatch: {len(weights)} weight vectors, {len(rho)} rho values")
        n = weights[0].shape
        for l, (w, p) in enumerate(zip(weights, rho)):
            if w.ndim != 1 or w.shape != n:
                raise ValueError(f"layer {l}: weight vector shape {w.shape} differs from {n}")
            if ((w < 0) | (w > 1)).any():
                raise ValueError(f"layer {l}: weights must lie in [0, 1]")
            if not (math.isfinite(p) and p >= 0):
                raise ValueError(f"layer {l}: rho must be finite and non-negative, got {p}")
            if w.size >= 2:
                top = np.partition(w, w.size - 2)[-2:]
                pmax = p * top[0] * top[1]
                if pmax > 1.0:
                    raise ModelInfeasible(
                        f"layer {l}: max edge probability {pmax:.6g} exceeds 1")

    @classmethod
    def from_tau(cls, weights, tau):
        """Density scalings ``rho_l = n ** tau_l``."""
        weights = tuple(weights)
        tau = tuple(float(t) for t in tau)
        if len(tau) != len(weights):
            raise ValueError(f"length mismatch: {len(weights)} weight vectors, {len(tau)} tau values")
        n = len(weights[0])
        return cls(weights, tuple(n ** t for t in tau))

    @property
    def n(self):
        return len(self.weights[0])

    @property
    def n_layers(self):
        return len(self.weights)

    @cached_property
    def _edge_probabilities(self):
        iu, ju = _pair_index(self.n)
        out = []
        for w, p in zip(self.weights, self.rho):
            q = p * w[iu] * w[ju]
            q.setflags(write=False)
            out.append(q)
        return tuple(out)

    def edge_probabilities(self, layer):
        """Probabilities of all pairs ``i < j`` in lexicographic order."""
        return self._edge_probabilities[layer]


def sample_rmhg(spec, seed):
    """Draw one multilayer graph from ``spec``.

    One uniform from a PCG64 stream seeded with ``seed`` is consumed per
    unordered pair per layer, layer-major and then lexicographic in
    ``(i, j)``, so the sample is a pure function of ``(spec, seed)``.
    """
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    n = spec.n
    rng = np.random.Generator(np.random.PCG64(seed))
    iu, ju = _pair_index(n)
    layers = []
    for l in range(spec.n_layers):
        hit = rng.random(iu.size) < spec.edge_probabilities(l)
        layers.append(np.column_stack((iu[hit], ju[hit])))
    return MultilayerGraph._from_canonical(n, layers)


def theoretical_rn(spec):
    """Scale ``r_n`` of the power lower bound, from ``rho_l * ||W_l||_1``.

    Diagnostic only: the bound's constants are unspecified, so no power figure
    is derived from it.
    """
    if spec.n_layers < 2:
        raise NeedTwoLayers(f"need at least two layers, got {spec.n_layers}")
    c = [p * float(np.sum(w)) for w, p in zip(spec.weights, spec.rho)]
    L = len(c)
    r2 = 2.0 * (L - 1) ** 2 / c[0] ** 2
    r2 += sum(2.0 / cl ** 2 for cl in c[1:])
    r2 += sum(4.0 / (c[0] * cl) for cl in c[1:])
    return math.sqrt(r2)


def reference_overlaps(spec):
    """Overlap of each layer's weights with the first layer's, for layers 2..L."""
    return [overlap(spec.weights[0], w) for w in spec.weights[1:]]
