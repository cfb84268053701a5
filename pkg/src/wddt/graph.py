"""Multilayer graph container and the degree / two-path summaries.

Nodes and layers are zero-indexed. Every layer is an undirected simple graph
on the shared node set ``0..n-1``.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_layer_index, check_positive_int

BRUTEFORCE_MAX_NODES = 200


def _readonly(a):
    a.setflags(write=False)
    return a


def _canonical_edges(n, edges, layer):
    """Return a sorted ``(m, 2)`` array of unique pairs with ``i < j``."""
    arr = np.asarray(edges if len(edges) else np.empty((0, 2)), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"layer {layer}: edges must be pairs, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ValueError(f"layer {layer}: node index out of range 0..{n - 1}")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        i = int(arr[loops][0, 0])
        raise ValueError(f"layer {layer}: self-loop at node {i}")
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    codes = np.unique(lo * n + hi)
    return np.column_stack((codes // n, codes % n))


class MultilayerGraph:
    """Immutable multilayer network on a shared node set.

    Parameters
    ----------
    n : int
        Number of nodes.
    layers : sequence of edge collections
        One entry per layer, each an iterable of ``(i, j)`` node pairs.
        Duplicate pairs (in either orientation) collapse to a single edge;
        self-loops raise ``ValueError``.

    Edges are stored per layer as a lexicographically sorted ``(m, 2)`` array
    with ``i < j``; degree vectors are computed once at construction.
    """

    __slots__ = ("_n", "_edges", "_degrees")

    def __init__(self, n, layers):
        n = check_positive_int(n, "n")
        layers = list(layers)
        if not layers:
            raise ValueError("a multilayer graph needs at least one layer")
        edges = [_canonical_edges(n, list(e) if not isinstance(e, np.ndarray) else e, k)
                 for k, e in enumerate(layers)]
        self._init(n, edges)

    def _init(self, n, edges):
        self._n = n
        self._edges = tuple(_readonly(e) for e in edges)
        deg = np.zeros((len(edges), n), dtype=np.int64)
        for k, e in enumerate(edges):
            deg[k] = np.bincount(e[:, 0], minlength=n) + np.bincount(e[:, 1], minlength=n)
        self._degrees = _readonly(deg)

    @classmethod
    def _from_canonical(cls, n, edges):
        # Trusted path for callers that already produce sorted unique i<j pairs.
        g = cls.__new__(cls)
        g._init(n, [np.asarray(e, dtype=np.int64).reshape(-1, 2) for e in edges])
        return g

    @classmethod
    def from_adjacency(cls, matrices):
        """Build from an array-like of shape ``(L, n, n)``.

        Matrices must be binary, symmetric and have a zero diagonal; anything
        else raises ``ValueError`` rather than being repaired.
        """
        A = np.asarray(matrices)
        if A.ndim == 2:
            A = A[None]
        if A.ndim != 3 or A.shape[1] != A.shape[2]:
            raise ValueError(f"expected shape (L, n, n), got {A.shape}")
        if not np.isin(A, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        if (A != np.transpose(A, (0, 2, 1))).any():
            raise ValueError("adjacency matrices must be symmetric")
        if np.diagonal(A, axis1=1, axis2=2).any():
            raise ValueError("adjacency matrices must have a zero diagonal (no self-loops)")
        n = A.shape[1]
        iu, ju = np.triu_indices(n, 1)
        edges = []
        for layer in A:
            mask = layer[iu, ju].astype(bool)
            edges.append(np.column_stack((iu[mask], ju[mask])))
        return cls._from_canonical(n, edges)

    @property
    def n(self):
        return self._n

    @property
    def n_layers(self):
        return len(self._edges)

    @property
    def degrees(self):
        """Read-only ``(L, n)`` array of node degrees."""
        return self._degrees

    def edges(self, layer):
        """Sorted ``(m, 2)`` array of the edges of ``layer`` with ``i < j``."""
        return self._edges[check_layer_index(layer, self.n_layers)]

    def n_edges(self, layer):
        return len(self.edges(layer))

    def neighbors(self, layer, node):
        e = self.edges(layer)
        return np.sort(np.concatenate((e[e[:, 0] == node, 1], e[e[:, 1] == node, 0])))

    def adjacency(self, layer):
        e = self.edges(layer)
        A = np.zeros((self._n, self._n), dtype=np.int64)
        A[e[:, 0], e[:, 1]] = 1
        A[e[:, 1], e[:, 0]] = 1
        return A

    def select_layers(self, order):
        """New graph whose layers are ``order`` (indices) in that order."""
        idx = [check_layer_index(k, self.n_layers) for k in order]
        return MultilayerGraph._from_canonical(self._n, [self._edges[k] for k in idx])

    def __eq__(self, other):
        if not isinstance(other, MultilayerGraph):
            return NotImplemented
        return (self._n == other._n and self.n_layers == other.n_layers
                and all(np.array_equal(a, b) for a, b in zip(self._edges, other._edges)))

    def __hash__(self):
        return hash((self._n, tuple(e.tobytes() for e in self._edges)))

    def __repr__(self):
        m = ", ".join(str(len(e)) for e in self._edges)
        return f"MultilayerGraph(n={self._n}, n_layers={self.n_layers}, edges=[{m}])"


@dataclass(frozen=True, eq=False)
class LayerSummary:
    """Degree vector, total degree and ordered two-path count of one layer."""

    degree: np.ndarray
    total_degree: int
    two_paths: int


def degree_vector(g, layer):
    return g.degrees[check_layer_index(layer, g.n_layers)]


def total_degree(g, layer):
    """Sum of all degrees, i.e. twice the edge count."""
    return int(degree_vector(g, layer).sum())


def two_path_count(g, layer):
    """Number of ordered two-paths ``i - j - k`` with distinct endpoints.

    Computed as the sum over centers of ``d_j (d_j - 1)`` in int64, which is
    exact for any ``n`` up to about two million.
    """
    d = degree_vector(g, layer)
    return int(np.dot(d, d - 1))


def two_path_count_bruteforce(g, layer):
    """Literal enumeration of ``A_ij A_jk`` over distinct triples ``(i, j, k)``.

    Test oracle only; refuses graphs with more than 200 nodes.
    """
    if g.n > BRUTEFORCE_MAX_NODES:
        raise ValueError(f"brute force limited to n <= {BRUTEFORCE_MAX_NODES}, got {g.n}")
    A = g.adjacency(layer)
    n = g.n
    r = np.arange(n)
    distinct = ((r[:, None, None] != r[None, :, None])
                & (r[None, :, None] != r[None, None, :])
                & (r[:, None, None] != r[None, None, :]))
    terms = A[:, :, None] * A[None, :, :]
    return int(terms[distinct].sum())


def edge_density(g, layer):
    if g.n < 2:
        raise ValueError("edge density needs at least two nodes")
    return g.n_edges(layer) / (g.n * (g.n - 1) / 2)


def layer_summary(g, layer):
    d = degree_vector(g, layer)
    return LayerSummary(degree=d, total_degree=int(d.sum()), two_paths=int(np.dot(d, d - 1)))


def relabel_nodes(g, permutation):
    """Apply ``node i -> permutation[i]`` to every layer."""
    perm = np.asarray(permutation, dtype=np.int64)
    if perm.shape != (g.n,) or not np.array_equal(np.sort(perm), np.arange(g.n)):
        raise ValueError("permutation must be a bijection of 0..n-1")
    return MultilayerGraph(g.n, [perm[g.edges(k)] for k in range(g.n_layers)])
