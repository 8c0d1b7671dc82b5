from lamgraph import DelimitedGraph, term_to_graph, to_dot
from lamgraph import parse_term


def test_plain_graph_without_backlinks(g0_plain):
    text = to_dot(g0_plain)
    assert text.startswith("digraph")
    assert text.count("->") == 3
    assert "dashed" not in text


def test_backlinked_graph_has_dashed_edges(backlinked_shared):
    text = to_dot(backlinked_shared)
    # Exactly the variable back-link is dashed.
    assert text.count("style=dashed") == 1


def test_delimiters_boxed_and_prefixes_shown(eager_nested):
    dg = DelimitedGraph.from_graph(eager_nested)
    text = to_dot(dg.graph, prefixes=dg.prefixes)
    assert text.count("shape=box") == 1
    assert "[b1]" in text and "[b2]" in text


def test_scopes_rendered_as_hints(running_eager):
    text = to_dot(running_eager.graph, scopes=running_eager.scopes)
    assert "style=dotted" in text


def test_dot_deterministic():
    dg = term_to_graph(parse_term(r"\x.\y. x (y x)"))
    assert to_dot(dg.graph) == to_dot(dg.graph)
