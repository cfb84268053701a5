"""Input validation helpers shared by the functional API and the estimators."""

import math
import numbers

import numpy as np

from .exceptions import NeedTwoLayers


def check_layer_index(layer, n_layers):
    if isinstance(layer, (bool, np.bool_)) or not isinstance(layer, numbers.Integral):
        raise TypeError(f"layer index must be an integer, got {layer!r}")
    if not 0 <= layer < n_layers:
        raise IndexError(f"layer {layer} out of range for {n_layers} layers")
    return int(layer)


def check_alpha(alpha):
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    return alpha


def check_positive_int(value, name):
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return int(value)


def check_finite(x, name="x"):
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x}")
    return x


def check_multilayer(X):
    """Coerce ``X`` to a :class:`MultilayerGraph`.

    Accepts a MultilayerGraph, a :class:`MultiplexDataset`, or an array-like of
    shape ``(L, n, n)`` holding binary symmetric adjacency matrices.
    """
    from .graph import MultilayerGraph
    from .io import MultiplexDataset

    if isinstance(X, MultiplexDataset):
        X = X.graph
    if not isinstance(X, MultilayerGraph):
        X = MultilayerGraph.from_adjacency(X)
    if X.n_layers < 2:
        raise NeedTwoLayers(f"need at least two layers, got {X.n_layers}")
    return X
