import networkx as nx
import pytest

from srginv.graph import (
    Graph,
    GraphFormatError,
    detect_format,
    parse_adjacency_rows,
    parse_graph6,
    parse_graphs,
    write_graph6,
)

from helpers import er_graph, fixture_graphs


def test_single_edge_record():
    g = parse_graph6("A_")
    assert g.v == 2
    assert g.has_edge(0, 1)


def test_one_vertex_record():
    g = parse_graph6("@")
    assert g.v == 1
    assert g.edge_count == 0


def test_triangle_record():
    g = parse_graph6("Bw")
    assert g.v == 3
    assert g.edge_count == 3


def test_header_prefix_stripped():
    g = parse_graph6(">>graph6<<A_")
    assert g.v == 2 and g.edge_count == 1


@pytest.mark.parametrize("name", sorted(fixture_graphs()))
def test_roundtrip_fixtures(name):
    g = fixture_graphs()[name]
    assert parse_graph6(write_graph6(g)) == g


@pytest.mark.parametrize("seed", range(40))
def test_roundtrip_random(seed):
    v = 1 + seed % 70  # covers both short and the '~' long size header
    g = er_graph(v, seed)
    assert parse_graph6(g.to_graph6()) == g


@pytest.mark.parametrize("seed", range(12))
def test_matches_networkx_decoder(seed):
    g = er_graph(3 + seed * 5, seed + 100)
    theirs = nx.from_graph6_bytes(g.to_graph6().encode())
    assert theirs.number_of_nodes() == g.v
    assert {frozenset(e) for e in theirs.edges()} == {
        frozenset((a, b)) for a in range(g.v) for b in g.neighborhood(a) if a < b
    }


@pytest.mark.parametrize("seed", range(12))
def test_parses_networkx_output(seed):
    g = er_graph(3 + seed * 5, seed + 200)
    theirs = nx.Graph()
    theirs.add_nodes_from(range(g.v))
    theirs.add_edges_from((a, b) for a in range(g.v) for b in g.neighborhood(a) if a < b)
    record = nx.to_graph6_bytes(theirs, header=False).decode().strip()
    assert parse_graph6(record) == g


def test_bad_character_names_offset():
    with pytest.raises(GraphFormatError, match="byte 1"):
        parse_graph6("B" + chr(30) + "w"[1:])


def test_truncated_record():
    with pytest.raises(GraphFormatError, match="truncated"):
        parse_graph6("B")


def test_trailing_characters():
    with pytest.raises(GraphFormatError, match="trailing"):
        parse_graph6("Bww")


def test_nonzero_padding_bits():
    # v=2 needs one data bit; chr(63+0b000001) sets a padding bit
    with pytest.raises(GraphFormatError, match="padding"):
        parse_graph6("A" + chr(63 + 1))


def test_non_ascii_data_named_by_offset():
    with pytest.raises(GraphFormatError, match="byte 1"):
        parse_graph6("Bé")


def test_sparse6_rejected():
    with pytest.raises(GraphFormatError, match="sparse6"):
        parse_graph6(":Fa@x^")


def test_zero_vertices_rejected():
    with pytest.raises(GraphFormatError, match="empty vertex set"):
        parse_graph6("?")


def test_long_size_header_roundtrip():
    g = er_graph(63, 17, p=0.1)
    rec = g.to_graph6()
    assert rec.startswith("~")
    assert parse_graph6(rec) == g


def test_very_long_size_header_accepted():
    # non-minimal but well-formed '~~' header encoding v=5, no edges
    rec = "~~" + "".join(chr(63 + ((5 >> s) & 63)) for s in (30, 24, 18, 12, 6, 0)) + "??"
    g = parse_graph6(rec)
    assert g.v == 5 and g.edge_count == 0


# ---------------------------------------------------------------------------
# raw adjacency rows


def test_rows_k2():
    (g,) = parse_adjacency_rows("01\n10")
    assert g.v == 2 and g.has_edge(0, 1)


def test_rows_k3():
    (g,) = parse_adjacency_rows("011\n101\n110")
    assert g.edge_count == 3


def test_rows_two_blocks():
    gs = parse_adjacency_rows("010\n100\n000\n\n011\n101\n110")
    assert len(gs) == 2
    assert gs[0].edge_count == 1 and gs[0].v == 3
    assert gs[1].edge_count == 3


def test_rows_non_square():
    with pytest.raises(GraphFormatError, match="block 0, line 1"):
        parse_adjacency_rows("01\n1")


def test_rows_asymmetric():
    with pytest.raises(GraphFormatError, match="asymmetric"):
        parse_adjacency_rows("010\n000\n000")


def test_rows_nonzero_diagonal():
    with pytest.raises(GraphFormatError, match="diagonal"):
        parse_adjacency_rows("10\n01")


def test_rows_stray_character():
    with pytest.raises(GraphFormatError, match="block 1, line 0"):
        parse_adjacency_rows("01\n10\n\n0x\n10")


def test_autodetect():
    assert detect_format("011\n101\n110") == "rows"
    assert detect_format("  \nBw") == "graph6"
    assert detect_format(">>graph6<<Bw") == "graph6"


def test_parse_graphs_multi_record():
    text = ">>graph6<<\nBw\nA_\n"
    gs = parse_graphs(text)
    assert [g.v for g in gs] == [3, 2]


def test_parse_graphs_reports_line():
    with pytest.raises(GraphFormatError, match="line 1"):
        parse_graphs("Bw\nB\n")


def test_unknown_format_rejected():
    with pytest.raises(ValueError, match="unknown format"):
        parse_graphs("Bw", fmt="dimacs")


def test_graph_validation():
    with pytest.raises(ValueError, match="asymmetric"):
        Graph(2, [0b10, 0b00])
    with pytest.raises(ValueError, match="self-loop"):
        Graph(1, [0b1])
    with pytest.raises(ValueError, match="outside"):
        Graph(1, [0b10])
