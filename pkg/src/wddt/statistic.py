"""Weighted Degree Difference Test statistic, p-value and decision.

For layers ``1..L`` with node degrees ``d_{l,i}``, total degree ``d_l`` and
ordered two-path count ``P_l``, the statistic is::

    D_n = (1 / sigma_n) * sum_{l=2}^{L} [ sum_i (d_{1,i}/sqrt(P_1) - d_{l,i}/sqrt(P_l))**2
                                          - d_1/P_1 - d_l/P_l ]

    sigma_n**2 = 2 (L-1)**2 / P_1 + sum_{l>=2} 2 / P_l + sum_{l>=2} 4 / sqrt(P_1 P_l)

Layer 1 (the reference) is the first layer in the order supplied. Under the
null hypothesis that all layers share one weight vector, ``D_n`` is
asymptotically standard normal and the test rejects for large ``|D_n|``.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_alpha, check_multilayer, check_positive_int
from .exceptions import DegenerateLayer, NeedTwoLayers
from .graph import LayerSummary
from .normal import normal_quantile, two_sided_p_value

# |D_n| - z below this is treated as a tie between the two rejection rules.
_BOUNDARY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class WddtResult:
    """Outcome of one statistic evaluation.

    Attributes
    ----------
    statistic : float
        ``D_n``.
    sigma_sq : float
        ``sigma_n**2`` built from the observed two-path counts.
    layer_summaries : tuple of LayerSummary
        In test order; entry 0 is the reference layer.
    p_value : float
        Two-sided normal p-value ``2 (1 - Phi(|D_n|))``.
    reference_layer : int or str
        Index (or name, when layer names were supplied) of the reference layer.
    """

    statistic: float
    sigma_sq: float
    layer_summaries: tuple
    p_value: float
    reference_layer: object = 0

    @property
    def n_layers(self):
        return len(self.layer_summaries)


@dataclass(frozen=True)
class Decision:
    reject: bool
    alpha: float
    critical_value: float

    @property
    def label(self):
        return "Reject H0" if self.reject else "Not Reject H0"


def sigma_squared(P, variance_layer_count=None):
    """Variance normalizer from two-path counts ``P`` (reference first).

    ``variance_layer_count`` replaces ``L`` in the ``2 (L-1)**2 / P_1`` term.
    Leave it ``None`` to use ``len(P)``; passing the size of a larger layer
    family reproduces tables computed on subsets of that family with the
    family's layer count held fixed.
    """
    P = [int(p) for p in P]
    if len(P) < 2:
        raise NeedTwoLayers(f"need at least two layers, got {len(P)}")
    for l, p in enumerate(P):
        if p < 0:
            raise ValueError(f"two-path count must be non-negative, got {p}")
        if p == 0:
            raise DegenerateLayer(l)
    L = len(P) if variance_layer_count is None else check_positive_int(
        variance_layer_count, "variance_layer_count")
    p1 = float(P[0])
    rest = [float(p) for p in P[1:]]
    # fsum is correctly rounded, so the result does not depend on the order of layers 2..L
    terms = [2.0 * (L - 1) ** 2 / p1]
    terms += [2.0 / p for p in rest]
    terms += [4.0 / math.sqrt(p1 * p) for p in rest]
    return math.fsum(terms)


def statistic_from_degrees(degrees, variance_layer_count=None):
    """``(D_n, sigma_n**2, P)`` from an ``(L, n)`` integer degree matrix."""
    deg = np.asarray(degrees, dtype=np.int64)
    if deg.ndim != 2 or deg.shape[0] < 2:
        raise NeedTwoLayers(f"need at least two layers, got {deg.shape[0] if deg.ndim == 2 else 0}")
    P = [int(np.dot(d, d - 1)) for d in deg]
    totals = [int(d.sum()) for d in deg]
    s2 = sigma_squared(P, variance_layer_count)

    scaled = deg / np.sqrt(np.asarray(P, dtype=np.float64))[:, None]
    ref = scaled[0]
    bias1 = totals[0] / P[0]
    terms = []
    for l in range(1, deg.shape[0]):
        diff = ref - scaled[l]
        terms += [float(np.dot(diff, diff)), -bias1, -totals[l] / P[l]]
    return math.fsum(terms) / math.sqrt(s2), s2, P


def compute_wddt(g, variance_layer_count=None, layer_names=None):
    """Evaluate the statistic on every layer of ``g``, layer 0 as reference.

    Raises
    ------
    NeedTwoLayers
        ``g`` has fewer than two layers.
    DegenerateLayer
        Some layer has no two-paths; ``exc.layer`` gives its index.
    """
    g = check_multilayer(g)
    D, s2, P = statistic_from_degrees(g.degrees, variance_layer_count)
    summaries = tuple(
        LayerSummary(degree=d, total_degree=int(d.sum()), two_paths=p)
        for d, p in zip(g.degrees, P))
    ref = 0 if layer_names is None else list(layer_names)[0]
    return WddtResult(statistic=D, sigma_sq=s2, layer_summaries=summaries,
                      p_value=two_sided_p_value(D), reference_layer=ref)


def decide(result, alpha=0.05):
    """Two-sided decision: reject when ``|D_n| > z_{alpha/2}``.

    The decision also satisfies ``reject == (p_value < alpha)``. The two rules
    can only disagree by rounding when ``|D_n|`` sits within about 1e-15 of
    the critical value; any wider disagreement raises ``RuntimeError``.
    """
    alpha = check_alpha(alpha)
    z = normal_quantile(1.0 - alpha / 2.0)
    stat = result.statistic if isinstance(result, WddtResult) else float(result)
    p = result.p_value if isinstance(result, WddtResult) else two_sided_p_value(stat)
    reject = abs(stat) > z
    if reject != (p < alpha) and abs(abs(stat) - z) > _BOUNDARY_TOL * max(1.0, z):
        raise RuntimeError(f"rejection rules disagree: |D_n|={abs(stat)!r}, z={z!r}, p={p!r}")
    return Decision(reject=bool(reject), alpha=alpha, critical_value=z)
