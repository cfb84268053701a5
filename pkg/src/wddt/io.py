"""Reading multiplex edge lists and running the layer-subset analysis.

Plain edge-list format, one edge per line::

    # layers: lunch facebook coauthor
    # nodes: U1 U3 U4
    U1 U3 lunch
    U3,U4,facebook

Fields are separated by commas and/or whitespace; the first three are
``node node layer`` and further fields (weights, timestamps) are ignored.
Lines starting with ``#`` are comments, except the optional ``# layers:`` and
``# nodes:`` directives which fix the layer order and the node universe.
Without them, nodes and layers are indexed in first-seen order and the node
set is the union of all edge endpoints.

Files in the sectioned ``.mpx`` layout (``#LAYERS`` / ``#ACTORS`` /
``#EDGES`` headers, as distributed with the multinet library) are detected
automatically; only the ``#EDGES`` section contributes edges and ``#LAYERS``,
when present, fixes the layer order.
"""

import csv
import importlib.util
import io
import itertools
import os
import re
from dataclasses import dataclass, field

from .exceptions import DegenerateLayer, NeedTwoLayers, ParseError
from .graph import MultilayerGraph
from .statistic import compute_wddt, decide

_SPLIT = re.compile(r"[,\s]+")
_DIRECTIVE = re.compile(r"#\s*(layers|nodes)\s*:(.*)$", re.IGNORECASE)
_MPX_SECTION = re.compile(r"#\s*([A-Z][A-Z ]*)\s*$")
_MPX_NAMES = {"TYPE", "LAYERS", "ACTOR ATTRIBUTES", "ACTORS", "VERTEX ATTRIBUTES",
              "VERTICES", "EDGE ATTRIBUTES", "EDGES"}


@dataclass(eq=False)
class MultiplexDataset:
    """A parsed multiplex network with its original identifiers.

    Equality compares the graph and both name tuples; ingestion warnings are
    ignored.
    """

    graph: MultilayerGraph
    node_names: tuple
    layer_names: tuple
    warnings: list = field(default_factory=list)
    n_self_loops: int = 0
    n_duplicates: int = 0

    def __post_init__(self):
        self.node_names = tuple(self.node_names)
        self.layer_names = tuple(self.layer_names)
        if len(set(self.node_names)) != len(self.node_names):
            raise ValueError("node names must be unique")
        if len(set(self.layer_names)) != len(self.layer_names):
            raise ValueError("layer names must be unique")
        if len(self.node_names) != self.graph.n or len(self.layer_names) != self.graph.n_layers:
            raise ValueError("names do not match graph dimensions")

    def __eq__(self, other):
        if not isinstance(other, MultiplexDataset):
            return NotImplemented
        return (self.graph == other.graph and self.node_names == other.node_names
                and self.layer_names == other.layer_names)

    def layer_index(self, layer):
        if isinstance(layer, int) and not isinstance(layer, bool):
            if not 0 <= layer < len(self.layer_names):
                raise KeyError(f"unknown layer index {layer}")
            return layer
        try:
            return self.layer_names.index(str(layer))
        except ValueError:
            raise KeyError(f"unknown layer {layer!r}; known: {', '.join(self.layer_names)}") from None


def _lines(source):
    if isinstance(source, str):
        return source.splitlines()
    return (line.rstrip("\n") for line in source)


def _names(text):
    return [t for t in _SPLIT.split(text.strip()) if t]


def _is_mpx(lines):
    for raw in lines:
        m = _MPX_SECTION.match(raw.strip())
        if m and m.group(1).strip() in _MPX_NAMES:
            return True
    return False


def parse_multiplex_edgelist(source, node_roster=None, layer_map=None):
    """Parse an edge list (text or open file) into a :class:`MultiplexDataset`.

    Parameters
    ----------
    source : str or iterable of str
    node_roster : sequence of str, optional
        Node universe and order; overrides the union of endpoints and any
        ``# nodes:`` directive.
    layer_map : mapping, optional
        Renames raw layer identifiers (e.g. ``{"1": "lunch"}``) before
        indexing.

    Self-loops are dropped and duplicate edges collapsed, both with warnings.
    """
    lines = list(_lines(source))
    mpx = _is_mpx(lines)
    layer_map = {str(k): str(v) for k, v in (layer_map or {}).items()}
    warnings = []
    layer_roster = None
    file_nodes = None
    raw_edges = []  # (lineno, u, v, layer)
    n_extra = 0
    section = None

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if mpx:
            m = _MPX_SECTION.match(line)
            if m and m.group(1).strip() in _MPX_NAMES:
                section = m.group(1).strip()
                continue
            if line.startswith("#"):
                continue
            if section == "LAYERS":
                name = line.split(",")[0].strip()
                layer_roster = (layer_roster or []) + [layer_map.get(name, name)]
                continue
            if section != "EDGES":
                continue
        elif line.startswith("#"):
            m = _DIRECTIVE.match(line)
            if m:
                target = [layer_map.get(x, x) for x in _names(m.group(2))] \
                    if m.group(1).lower() == "layers" else _names(m.group(2))
                if m.group(1).lower() == "layers":
                    layer_roster = (layer_roster or []) + target
                else:
                    file_nodes = (file_nodes or []) + target
            continue
        fields = _names(line)
        if len(fields) < 3:
            raise ParseError(f"expected 'node node layer', got {raw!r}", lineno)
        if len(fields) > 3:
            n_extra += 1
        u, v, layer = fields[0], fields[1], layer_map.get(fields[2], fields[2])
        raw_edges.append((lineno, u, v, layer))

    if n_extra:
        warnings.append(f"ignored extra fields on {n_extra} line(s); edges are treated as unweighted")

    # layer universe
    if layer_roster is not None:
        if len(set(layer_roster)) != len(layer_roster):
            raise ParseError("duplicate name in layer roster")
        layer_names = list(layer_roster)
    else:
        layer_names = list(dict.fromkeys(e[3] for e in raw_edges))
    if not layer_names:
        raise ParseError("zero layers")
    layer_idx = {name: k for k, name in enumerate(layer_names)}

    # node universe
    roster = node_roster if node_roster is not None else file_nodes
    if roster is not None:
        node_names = list(roster)
        if len(set(node_names)) != len(node_names):
            raise ParseError("duplicate name in node roster")
    else:
        node_names = list(dict.fromkeys(x for e in raw_edges for x in e[1:3]))
    if not node_names:
        raise ParseError("zero nodes")
    node_idx = {name: k for k, name in enumerate(node_names)}

    seen = [set() for _ in layer_names]
    n_loops = n_dups = 0
    for lineno, u, v, layer in raw_edges:
        if layer not in layer_idx:
            raise ParseError(f"layer {layer!r} not in layer roster", lineno)
        for x in (u, v):
            if x not in node_idx:
                raise ParseError(f"node {x!r} not in node roster", lineno)
        if u == v:
            n_loops += 1
            warnings.append(f"line {lineno}: dropped self-loop on {u!r} in layer {layer!r}")
            continue
        i, j = node_idx[u], node_idx[v]
        key = (min(i, j), max(i, j))
        bucket = seen[layer_idx[layer]]
        if key in bucket:
            n_dups += 1
        else:
            bucket.add(key)
    if n_dups:
        warnings.append(f"collapsed {n_dups} duplicate edge(s)")

    graph = MultilayerGraph(len(node_names), [sorted(s) for s in seen])
    return MultiplexDataset(graph, node_names, layer_names, warnings, n_loops, n_dups)


def format_multiplex_edgelist(ds):
    """Serialize with ``# layers:`` / ``# nodes:`` directives so the round trip is exact."""
    out = io.StringIO()
    out.write("# layers: " + " ".join(ds.layer_names) + "\n")
    out.write("# nodes: " + " ".join(ds.node_names) + "\n")
    for k, name in enumerate(ds.layer_names):
        for i, j in ds.graph.edges(k):
            out.write(f"{ds.node_names[i]} {ds.node_names[j]} {name}\n")
    return out.getvalue()


def read_node_roster(source):
    return [ln.strip() for ln in _lines(source) if ln.strip() and not ln.lstrip().startswith("#")]


def read_layer_map(source):
    """``index name`` lines to a mapping from raw layer id to layer name."""
    mapping = {}
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = _names(line)
        if len(parts) != 2:
            raise ParseError(f"expected 'index name', got {raw!r}", lineno)
        mapping[parts[0]] = parts[1]
    return mapping


def read_multiplex(path, node_roster=None, layer_map=None):
    """Parse a file; ``node_roster`` and ``layer_map`` may be paths."""
    if isinstance(node_roster, (str, os.PathLike)):
        with open(node_roster) as fh:
            node_roster = read_node_roster(fh)
    if isinstance(layer_map, (str, os.PathLike)):
        with open(layer_map) as fh:
            layer_map = read_layer_map(fh)
    with open(path) as fh:
        return parse_multiplex_edgelist(fh, node_roster=node_roster, layer_map=layer_map)


def aucs_path():
    """Location of the AUCS (CS-Aarhus) ``.mpx`` file shipped by ``uunet``, or ``None``."""
    env = os.environ.get("WDDT_AUCS_PATH")
    if env:
        return env
    spec = importlib.util.find_spec("uunet")
    if spec is None or not spec.submodule_search_locations:
        return None
    for base in spec.submodule_search_locations:
        cand = os.path.join(base, "data", "aucs.mpx")
        if os.path.exists(cand):
            return cand
    return None


def select_layers(ds, order):
    """Graph with the requested layers (names or indices); the first is the reference."""
    order = list(order)
    if len(order) < 2:
        raise NeedTwoLayers(f"need at least two layers, got {len(order)}")
    idx = [ds.layer_index(x) for x in order]
    if len(set(idx)) != len(idx):
        raise ValueError("duplicate layer in selection")
    return ds.graph.select_layers(idx)


@dataclass(frozen=True)
class SubsetRow:
    layers: tuple
    statistic: float = None
    p_value: float = None
    decision: str = None
    error: str = None


@dataclass
class SubsetReport:
    rows: list
    alpha: float

    CSV_COLUMNS = ("layers", "statistic", "p_value", "decision")

    def to_csv(self, decimals=3):
        """Fixed-schema CSV; ``decimals=None`` writes full precision."""
        fmt = (lambda x: repr(float(x))) if decimals is None else (lambda x: f"{x:.{decimals}f}")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.CSV_COLUMNS)
        for row in self.rows:
            if row.error is not None:
                w.writerow([",".join(row.layers), "", "", row.error])
            else:
                w.writerow([",".join(row.layers), fmt(row.statistic), fmt(row.p_value), row.decision])
        return buf.getvalue()

    def find(self, layers):
        layers = tuple(layers)
        for row in self.rows:
            if row.layers == layers:
                return row
        raise KeyError(layers)


def subset_analysis(ds, min_size=2, max_size=None, alpha=0.05, variance_layer_count=None):
    """Test every layer subset with ``min_size <= size <= max_size``.

    Subsets are taken in ascending layer-index order, so the lowest-index layer
    of each subset is the reference; rows are grouped by size. Set
    ``variance_layer_count="all"`` to hold the layer count in the variance at
    the dataset's full layer count for every subset.
    """
    L = ds.graph.n_layers
    max_size = L if max_size is None else max_size
    if not 2 <= min_size <= max_size <= L:
        raise ValueError(f"need 2 <= min_size <= max_size <= {L}, got {min_size}..{max_size}")
    vlc = L if variance_layer_count == "all" else variance_layer_count
    rows = []
    for k in range(min_size, max_size + 1):
        for combo in itertools.combinations(range(L), k):
            names = tuple(ds.layer_names[i] for i in combo)
            try:
                res = compute_wddt(ds.graph.select_layers(combo), variance_layer_count=vlc)
            except DegenerateLayer as exc:
                rows.append(SubsetRow(names, error=f"Degenerate layer {names[exc.layer]}"))
                continue
            dec = decide(res, alpha)
            rows.append(SubsetRow(names, res.statistic, res.p_value, dec.label))
    return SubsetReport(rows, alpha)
