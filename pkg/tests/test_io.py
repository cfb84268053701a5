import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wddt import NeedTwoLayers, ParseError, compute_wddt, edge_density
from wddt.io import (format_multiplex_edgelist, parse_multiplex_edgelist, read_layer_map,
                     read_multiplex, read_node_roster, select_layers, subset_analysis, aucs_path)


THREE_LAYERS = """\
a b x
b c x
a c x
a b y
b c y
c d y
a d z
b d z
c d z
a c z
"""


class TestParse:
    def test_self_loop_and_duplicate(self):
        ds = parse_multiplex_edgelist("a b 1\nb a 1\na a 1\n")
        assert ds.graph.n == 2 and ds.graph.n_layers == 1
        assert ds.graph.edges(0).tolist() == [[0, 1]]
        assert ds.n_self_loops == 1 and ds.n_duplicates == 1
        assert any("self-loop" in w for w in ds.warnings)
        assert any("duplicate" in w for w in ds.warnings)

    def test_empty_input(self):
        with pytest.raises(ParseError, match="zero layers"):
            parse_multiplex_edgelist("")
        with pytest.raises(ParseError, match="zero layers"):
            parse_multiplex_edgelist("# nothing here\n\n")

    def test_malformed_line_number(self):
        with pytest.raises(ParseError, match="line 3") as exc:
            parse_multiplex_edgelist("a b 1\nb c 1\nonly-two fields\n")
        assert exc.value.lineno == 3

    def test_extra_fields_warn_once(self):
        ds = parse_multiplex_edgelist("a b 1 0.5\nb c 1 2.0\nc d 1\n")
        assert ds.graph.n_edges(0) == 3
        extra = [w for w in ds.warnings if "extra fields" in w]
        assert len(extra) == 1 and "2 line(s)" in extra[0]

    def test_separators(self):
        a = parse_multiplex_edgelist("a,b,1\nb\tc 1\n")
        b = parse_multiplex_edgelist("a b 1\nb c 1\n")
        assert a == b

    def test_first_seen_order(self):
        ds = parse_multiplex_edgelist("q p beta\np r alpha\n")
        assert ds.node_names == ("q", "p", "r")
        assert ds.layer_names == ("beta", "alpha")

    def test_directives(self):
        ds = parse_multiplex_edgelist("# layers: x y w\n# nodes: d c b a\na b x\nc d y\n")
        assert ds.layer_names == ("x", "y", "w")
        assert ds.node_names == ("d", "c", "b", "a")
        assert ds.graph.n_edges(2) == 0

    def test_node_roster_overrides(self):
        ds = parse_multiplex_edgelist("a b 1\n", node_roster=["z", "b", "a"])
        assert ds.graph.n == 3 and ds.node_names == ("z", "b", "a")
        assert ds.graph.degrees[0].tolist() == [0, 1, 1]

    def test_node_not_in_roster(self):
        with pytest.raises(ParseError, match="not in node roster"):
            parse_multiplex_edgelist("a b 1\n", node_roster=["a"])

    def test_layer_not_in_roster(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_multiplex_edgelist("# layers: x\na b y\n")

    def test_layer_map(self):
        ds = parse_multiplex_edgelist("a b 1\nb c 2\n", layer_map={"1": "lunch", "2": "work"})
        assert ds.layer_names == ("lunch", "work")

    def test_helpers(self):
        assert read_node_roster("# roster\nU1\n\nU2\n") == ["U1", "U2"]
        assert read_layer_map("1 lunch\n2 facebook\n") == {"1": "lunch", "2": "facebook"}
        with pytest.raises(ParseError, match="line 1"):
            read_layer_map("1\n")

    def test_mpx_sections(self):
        text = """#TYPE multiplex

#LAYERS
work,UNDIRECTED
lunch,UNDIRECTED

#ACTORS
U1,G1
U2,G1

#EDGES
U1,U2,lunch
U2,U3,lunch
U3,U1,work
"""
        ds = parse_multiplex_edgelist(text)
        assert ds.layer_names == ("work", "lunch")
        assert ds.node_names == ("U1", "U2", "U3")
        assert ds.graph.n_edges(0) == 1 and ds.graph.n_edges(1) == 2

    def test_read_from_path(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text(THREE_LAYERS)
        lm = tmp_path / "map.txt"
        lm.write_text("x first\ny second\nz third\n")
        ds = read_multiplex(p, layer_map=lm)
        assert ds.layer_names == ("first", "second", "third")


@st.composite
def edge_lists(draw):
    n = draw(st.integers(2, 12))
    L = draw(st.integers(1, 4))
    nodes = [f"v{k}" for k in range(n)]
    edges = draw(st.lists(st.tuples(st.sampled_from(nodes), st.sampled_from(nodes),
                                    st.integers(0, L - 1)), min_size=1, max_size=60))
    return "".join(f"{u} {v} L{l}\n" for u, v, l in edges)


class TestRoundTrip:
    @settings(max_examples=80, deadline=None)
    @given(edge_lists())
    def test_idempotent(self, text):
        try:
            ds = parse_multiplex_edgelist(text)
        except ParseError:
            return  # self-loops only leave zero nodes in some layers; nothing to round-trip
        again = parse_multiplex_edgelist(format_multiplex_edgelist(ds))
        assert again == ds
        assert format_multiplex_edgelist(again) == format_multiplex_edgelist(ds)

    def test_line_order_does_not_change_statistic(self):
        lines = THREE_LAYERS.splitlines()
        base = compute_wddt(parse_multiplex_edgelist(THREE_LAYERS).graph).statistic
        rnd = random.Random(4)
        for _ in range(20):
            rnd.shuffle(lines)
            ds = parse_multiplex_edgelist("\n".join(lines), layer_map=None)
            ds_sorted = select_layers(ds, ["x", "y", "z"])
            assert abs(compute_wddt(ds_sorted).statistic - base) <= 1e-12


class TestSelectLayers:
    @pytest.fixture
    def ds(self):
        return parse_multiplex_edgelist(THREE_LAYERS)

    def test_full_order(self, ds):
        assert select_layers(ds, ["x", "y", "z"]) == ds.graph

    def test_swap_symmetry(self, ds):
        a = compute_wddt(select_layers(ds, ["x", "z"])).statistic
        b = compute_wddt(select_layers(ds, ["z", "x"])).statistic
        assert abs(a - b) <= 1e-12

    def test_errors(self, ds):
        with pytest.raises(NeedTwoLayers, match="need at least two layers"):
            select_layers(ds, ["x"])
        with pytest.raises(KeyError):
            select_layers(ds, ["x", "nope"])
        with pytest.raises(ValueError, match="duplicate"):
            select_layers(ds, ["x", "x"])

    def test_indices(self, ds):
        assert select_layers(ds, [2, 0]) == select_layers(ds, ["z", "x"])


class TestSubsets:
    def test_row_counts(self):
        ds = parse_multiplex_edgelist(THREE_LAYERS)
        assert len(subset_analysis(ds, 2, 2).rows) == 3
        assert len(subset_analysis(ds).rows) == 4

    @pytest.mark.parametrize("L", [2, 3, 4, 5, 6])
    def test_binomial_sum(self, L):
        rng = np.random.default_rng(L)
        lines = []
        for l in range(L):
            for i in range(8):
                for j in range(i + 1, 8):
                    if rng.random() < 0.5:
                        lines.append(f"n{i} n{j} layer{l}")
            lines += [f"n0 n1 layer{l}", f"n1 n2 layer{l}"]
        ds = parse_multiplex_edgelist("\n".join(lines))
        for lo in range(2, L + 1):
            for hi in range(lo, L + 1):
                expected = sum(math.comb(L, k) for k in range(lo, hi + 1))
                assert len(subset_analysis(ds, lo, hi).rows) == expected

    def test_ordering_and_reference(self):
        ds = parse_multiplex_edgelist(THREE_LAYERS)
        rows = subset_analysis(ds).rows
        assert [r.layers for r in rows] == [("x", "y"), ("x", "z"), ("y", "z"), ("x", "y", "z")]
        full = compute_wddt(ds.graph)
        assert rows[-1].statistic == full.statistic

    def test_invalid_range(self):
        ds = parse_multiplex_edgelist(THREE_LAYERS)
        for lo, hi in [(3, 2), (1, 3), (2, 4)]:
            with pytest.raises(ValueError):
                subset_analysis(ds, lo, hi)

    def test_degenerate_row_flagged(self):
        ds = parse_multiplex_edgelist(THREE_LAYERS + "a b w\n")
        rep = subset_analysis(ds, 2, 2)
        bad = [r for r in rep.rows if r.error]
        assert len(bad) == 3 and all("Degenerate layer w" == r.error for r in bad)
        assert len(rep.rows) == math.comb(4, 2)

    def test_csv(self):
        rep = subset_analysis(parse_multiplex_edgelist(THREE_LAYERS))
        lines = rep.to_csv().splitlines()
        assert lines[0] == "layers,statistic,p_value,decision"
        assert lines[1].startswith('"x,y",')
        stat = lines[1].split(",")[2]
        assert len(stat.split(".")[1]) == 3
        full = rep.to_csv(decimals=None).splitlines()[1].split(",")[2]
        assert float(full) == rep.rows[0].statistic
        assert rep.find(("x", "z")) is rep.rows[1]


aucs = pytest.mark.skipif(aucs_path() is None, reason="AUCS data not available")


@pytest.fixture(scope="module")
def aucs_ds():
    return read_multiplex(aucs_path())


@aucs
class TestAucs:
    @pytest.fixture
    def ds(self, aucs_ds):
        return aucs_ds

    def test_shape(self, ds):
        assert ds.layer_names == ("lunch", "facebook", "coauthor", "leisure", "work")
        assert ds.graph.n == 61

    def test_densities(self, ds):
        got = [edge_density(ds.graph, l) for l in range(5)]
        np.testing.assert_allclose(got, [0.1055, 0.0678, 0.0115, 0.0481, 0.106], atol=1e-3)

    def test_rows(self, ds):
        rep = subset_analysis(ds, variance_layer_count="all")
        assert len(rep.rows) == 26
        assert rep.find(("lunch", "facebook")).statistic == pytest.approx(3.641, abs=5e-4)
        r = rep.find(("coauthor", "leisure"))
        assert r.statistic == pytest.approx(0.818, abs=5e-4) and r.decision == "Not Reject H0"

    def test_quintuple_either_convention(self, ds):
        # with all five layers both conventions coincide
        assert compute_wddt(ds.graph).statistic == pytest.approx(5.921, abs=5e-4)
