import random

import pytest

from generators import erase_backlinks, random_term

from lamgraph import (
    DelimitedGraph,
    Label,
    VariantMismatch,
    infer_prefix,
    is_eager_scope,
    is_fully_back_linked,
    is_lambda_term_graph,
    parse_graph,
    term_to_graph,
    validate_prefix_fo,
)
from lamgraph.core import simple_root_paths


def by_name(g, prefixes):
    return {g.name_of(v): tuple(g.name_of(x) for x in word) for v, word in prefixes.items()}


def test_validate_prefix_fo_eager_nested(eager_nested):
    p = {"b1": (), "s": ("b1",), "b2": (), "v": ("b2",)}
    assert validate_prefix_fo(eager_nested, p).passed


def test_validate_prefix_fo_lazy_nested(lazy_nested):
    p = {"b1": (), "b2": ("b1",), "v": ("b1", "b2")}
    assert validate_prefix_fo(lazy_nested, p).passed
    broken = {"b1": (), "b2": ("b1",), "v": ("b2",)}
    report = validate_prefix_fo(lazy_nested, broken)
    assert not report.passed
    assert "lambda" in {v.condition for v in report.violations}


def test_delimiter_needs_nonempty_prefix():
    # A delimiter above everything can only pop from the empty word,
    # which is impossible; the all-empty assignment must not validate.
    g = parse_graph("sig 0 1\nroot s\ns S r\nr lam c\nc 0\n").graph
    report = validate_prefix_fo(g, {"s": (), "r": (), "c": ("r",)})
    assert "delim-pop" in {v.condition for v in report.violations}
    assert not is_lambda_term_graph(g)


def test_infer_prefix_debruijn(debruijn):
    g2, g1, g0 = debruijn
    prefixes, _ = infer_prefix(g0)
    assert by_name(g0, prefixes) == {"a": (), "b": (), "c": ("b",)}
    assert infer_prefix(g1)[0] is None
    prefixes2, _ = infer_prefix(g2)
    assert by_name(g2, prefixes2) == {
        "a": (),
        "b1": (),
        "c1": ("b1",),
        "b2": (),
        "c2": ("b2",),
    }


def test_infer_prefix_eager_nested(eager_nested):
    prefixes, _ = infer_prefix(eager_nested)
    assert by_name(eager_nested, prefixes) == {
        "b1": (),
        "s": ("b1",),
        "b2": (),
        "v": ("b2",),
    }


def test_is_lambda_term_graph(debruijn):
    g2, g1, g0 = debruijn
    assert is_lambda_term_graph(g2)
    assert not is_lambda_term_graph(g1)
    assert is_lambda_term_graph(g0)
    tiny = parse_graph("sig 1 2\nroot b\nb lam v\nv 0 b\n").graph
    assert is_lambda_term_graph(tiny)


def test_fully_back_linked(eager_nested, lazy_nested):
    assert is_fully_back_linked(DelimitedGraph.from_graph(eager_nested))
    assert not is_fully_back_linked(DelimitedGraph.from_graph(lazy_nested))
    tiny = parse_graph("sig 1 2\nroot b\nb lam v\nv 0 b\n").graph
    assert is_fully_back_linked(DelimitedGraph.from_graph(tiny))


def test_eager_scope(eager_nested, lazy_nested, eager_pair):
    assert is_eager_scope(DelimitedGraph.from_graph(eager_nested))
    assert is_eager_scope(DelimitedGraph.from_graph(eager_pair))
    assert not is_eager_scope(DelimitedGraph.from_graph(lazy_nested))


def test_eager_scope_strict_mode(eager_nested, eager_pair):
    # Literal reading: the delimiter closing the unused binder has a
    # nonempty prefix but no reachable occurrence, so strict mode fails.
    assert not is_eager_scope(DelimitedGraph.from_graph(eager_nested), strict=True)
    # Without delimiters the two readings agree.
    assert is_eager_scope(DelimitedGraph.from_graph(eager_pair), strict=True)


def test_eager_scope_needs_variable_backlinks(debruijn):
    _, _, g0 = debruijn
    with pytest.raises(VariantMismatch):
        is_eager_scope(DelimitedGraph.from_graph(g0))


def _random_delimited(seed, count, variants=((1, 2),)):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        lazy = rng.random() < 0.5
        dg = term_to_graph(random_term(rng, depth=rng.randint(1, 4)), rng=rng if lazy else None)
        i, j = rng.choice(variants)
        if (i, j) == (1, 2):
            out.append(dg)
        else:
            out.append(DelimitedGraph.from_graph(erase_backlinks(dg.graph, i, j)))
    return out


def test_infer_prefix_traversal_order_invariance():
    for dg in _random_delimited(200, 30, variants=((1, 2), (1, 1), (0, 2), (0, 1))):
        baseline = dg.prefixes
        for k in range(5):
            shuffled, _ = infer_prefix(dg.graph, rng=random.Random(k))
            assert shuffled == baseline


def test_access_paths_avoid_variables_and_exit_delimiters_by_zero():
    for dg in _random_delimited(201, 15):
        g = dg.graph
        if g.vertex_count > 10:
            continue
        for w in g.vertices():
            for path in simple_root_paths(g, w):
                for v, k in zip(path.vertices, path.indices):
                    assert g.labels[v] is not Label.VAR
                    if g.labels[v] is Label.DEL:
                        assert k == 0


def test_prefix_length_changes_by_at_most_one():
    for dg in _random_delimited(202, 30):
        for v, k, w in dg.graph.edges():
            assert abs(len(dg.prefixes[v]) - len(dg.prefixes[w])) <= 1


def test_eager_implies_fully_back_linked():
    # With delimiter back-links the exempt reading suffices; without them
    # a delimiter closing an occurrence-free binder has no way back, so
    # the implication is only guaranteed under the literal reading.
    for dg in _random_delimited(203, 40, variants=((1, 2),)):
        if is_eager_scope(dg):
            assert is_fully_back_linked(dg)
    for dg in _random_delimited(205, 40, variants=((1, 1),)):
        if is_eager_scope(dg, strict=True):
            assert is_fully_back_linked(dg)


def test_inference_matches_exhaustive_enumeration():
    # Oracle: enumerate every candidate prefix assignment (words are
    # repeat-free sequences of abstraction vertices) and compare with
    # membership, uniqueness, and the inferred function.
    from itertools import permutations, product

    from generators import random_graph
    from lamgraph import Label

    rng = random.Random(206)
    checked = 0
    while checked < 60:
        g = random_graph(rng, max_vertices=6)
        abs_vs = g.vertices_labeled(Label.ABS)
        if g.variant.del_arity is None or len(abs_vs) > 2:
            continue
        words = [()] + [w for r in (1, 2) for w in permutations(abs_vs, r)]
        passing = [
            p
            for combo in product(words, repeat=g.vertex_count)
            if validate_prefix_fo(g, (p := dict(zip(g.vertices(), combo)))).passed
        ]
        assert len(passing) <= 1
        inferred, _ = infer_prefix(g)
        assert inferred == (passing[0] if passing else None)
        assert is_lambda_term_graph(g) == bool(passing)
        checked += 1


def test_erasing_backlinks_preserves_validity():
    rng = random.Random(204)
    for _ in range(25):
        dg = term_to_graph(random_term(rng, depth=3), rng=rng if rng.random() < 0.5 else None)
        for i, j in ((1, 1), (0, 2), (0, 1)):
            erased = erase_backlinks(dg.graph, i, j)
            assert is_lambda_term_graph(erased)
